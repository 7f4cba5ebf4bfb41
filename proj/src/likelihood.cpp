#include "mbuw/likelihood.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "mbuw/errors.hpp"

namespace mbuw {

double DerivativeBundle::first(int i) const { return i == 0 ? d_alpha : d_beta; }

double DerivativeBundle::second(int i, int j) const {
  const int betas = i + j;
  if (betas == 0) return d2_aa;
  if (betas == 1) return d2_ab;
  return d2_bb;
}

double DerivativeBundle::third(int i, int j, int l) const {
  switch (i + j + l) {
    case 0: return d3_aaa;
    case 1: return d3_aab;
    case 2: return d3_abb;
    default: return d3_bbb;
  }
}

DerivativeBundle& DerivativeBundle::operator+=(const DerivativeBundle& o) {
  d_alpha += o.d_alpha;
  d_beta += o.d_beta;
  d2_aa += o.d2_aa;
  d2_ab += o.d2_ab;
  d2_bb += o.d2_bb;
  d3_aaa += o.d3_aaa;
  d3_aab += o.d3_aab;
  d3_abb += o.d3_abb;
  d3_bbb += o.d3_bbb;
  return *this;
}

PowerChain::PowerChain(const Params& p) {
  const double a = p.alpha();
  const double b = p.beta();
  const double la = p.log_alpha();
  c = p.c();
  c_a = -b * c / a;
  c_b = -la * c;
  c_aa = b * (b + 1.0) * c / (a * a);
  c_ab = c * (b * la - 1.0) / a;
  c_bb = la * la * c;
  c_aaa = -b * (b + 1.0) * (b + 2.0) * c / (a * a * a);
  c_aab = c * ((2.0 * b + 1.0) - b * (b + 1.0) * la) / (a * a);
  c_abb = c * la * (2.0 - b * la) / a;
  c_bbb = -la * la * la * c;
}

DerivativeBundle derivatives_from_log(double log_y, double q, const PowerChain& k) {
  // ln f = ln 6 + ln c + ln(1 - y^c) + (2c - 1) ln y, viewed as g(c).
  const double L = log_y;
  const double c = k.c;
  const double q1 = q * (1.0 + q);
  const double q2 = q1 * (1.0 + 2.0 * q);
  const double g1 = 1.0 / c - L * q + 2.0 * L;
  const double g2 = -1.0 / (c * c) - L * L * q1;
  const double g3 = 2.0 / (c * c * c) - L * L * L * q2;

  const std::array<double, 2> d1{k.c_a, k.c_b};
  const std::array<std::array<double, 2>, 2> d2{{{k.c_aa, k.c_ab}, {k.c_ab, k.c_bb}}};
  auto d3 = [&](int i, int j, int l) {
    switch (i + j + l) {
      case 0: return k.c_aaa;
      case 1: return k.c_aab;
      case 2: return k.c_abb;
      default: return k.c_bbb;
    }
  };
  auto second = [&](int i, int j) { return g2 * d1[i] * d1[j] + g1 * d2[i][j]; };
  auto third = [&](int i, int j, int l) {
    return g3 * d1[i] * d1[j] * d1[l] +
           g2 * (d2[i][j] * d1[l] + d2[i][l] * d1[j] + d2[j][l] * d1[i]) + g1 * d3(i, j, l);
  };

  DerivativeBundle out;
  out.d_alpha = g1 * d1[0];
  out.d_beta = g1 * d1[1];
  out.d2_aa = second(0, 0);
  out.d2_ab = second(0, 1);
  out.d2_bb = second(1, 1);
  out.d3_aaa = third(0, 0, 0);
  out.d3_aab = third(0, 0, 1);
  out.d3_abb = third(0, 1, 1);
  out.d3_bbb = third(1, 1, 1);
  return out;
}

namespace {

DerivativeBundle derivatives_checked_log(double log_y, const PowerChain& chain) {
  // q = w / (1 - w) with w = exp(s), s = c ln y <= 0.
  const double s = chain.c * log_y;
  const double q = 1.0 / std::expm1(-s);
  return derivatives_from_log(log_y, q, chain);
}

}  // namespace

DerivativeBundle derivatives(double y, const Params& p) {
  if (!(y > 0.0 && y < 1.0)) {
    std::ostringstream msg;
    msg << "derivative argument must lie in (0, 1), got " << y;
    throw DomainError(msg.str());
  }
  return derivatives_checked_log(std::log(y), PowerChain(p));
}

DerivativeBundle sum_derivatives(const SampleData& data, const Params& p) {
  const PowerChain chain(p);
  DerivativeBundle total;
  for (double ly : data.log_values()) {
    total += derivatives_checked_log(ly, chain);
  }
  return total;
}

double nll(const SampleData& data, const Params& p) {
  const double c = p.c();
  double sum_log1m = 0.0;
  for (double ly : data.log_values()) {
    sum_log1m += log1mexp(c * ly);
  }
  const double n = static_cast<double>(data.size());
  const double ll = n * std::log(6.0) + n * std::log(c) + sum_log1m + (2.0 * c - 1.0) * data.sum_log();
  return -ll;
}

}  // namespace mbuw
