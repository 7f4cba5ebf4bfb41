#include "mbuw/gof_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "mbuw/errors.hpp"

namespace mbuw {

namespace {
constexpr double kPitFloor = 1e-15;
}

GofReport gof_from_pit(std::span<const double> pit) {
  if (pit.empty()) throw InputError("goodness of fit needs at least one observation");
  GofReport out;
  std::vector<double> u(pit.begin(), pit.end());
  for (double& v : u) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("PIT values must lie in [0, 1]");
    if (v < kPitFloor || v > 1.0 - kPitFloor) {
      ++out.clamped;
      v = std::clamp(v, kPitFloor, 1.0 - kPitFloor);
    }
  }
  std::sort(u.begin(), u.end());

  const std::size_t n = u.size();
  const double nn = static_cast<double>(n);
  double ks = 0.0;
  double ad_sum = 0.0;
  double cvm = 1.0 / (12.0 * nn);
  for (std::size_t i = 0; i < n; ++i) {
    const double rank = static_cast<double>(i + 1);
    ks = std::max({ks, rank / nn - u[i], u[i] - (rank - 1.0) / nn});
    ad_sum += (2.0 * rank - 1.0) * (std::log(u[i]) + std::log1p(-u[n - 1 - i]));
    const double d = u[i] - (2.0 * rank - 1.0) / (2.0 * nn);
    cvm += d * d;
  }
  out.ks = ks;
  out.ad = -nn - ad_sum / nn;
  out.cvm = cvm;
  out.ks_pvalue = ks_pvalue(ks, n);
  out.reject_at_05 = out.ks_pvalue < 0.05;
  return out;
}

GofReport gof(const SampleData& data, const Params& p) {
  std::vector<double> u(data.size());
  std::transform(data.values().begin(), data.values().end(), u.begin(), [&](double y) { return cdf(y, p); });
  return gof_from_pit(u);
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // Jacobi theta form of the CDF converges fast for small lambda.
    const double factor = std::sqrt(2.0 * std::numbers::pi) / lambda;
    const double w = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * w);
      cdf += term;
      if (term < 1e-16 * cdf) break;
    }
    return std::clamp(1.0 - factor * cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-12) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_pvalue(double ks, std::size_t n) {
  if (n == 0) throw InputError("KS p-value needs n >= 1");
  const double rn = std::sqrt(static_cast<double>(n));
  return kolmogorov_survival((rn + 0.12 + 0.11 / rn) * ks);
}

CriteriaReport criteria(double nll, int k, std::size_t n) {
  if (k < 1) throw InputError("parameter count must be positive");
  if (n <= static_cast<std::size_t>(k) + 1) {
    std::ostringstream msg;
    msg << "information criteria need n > k + 1 (n=" << n << ", k=" << k << ")";
    throw DomainError(msg.str());
  }
  const double kk = k;
  const double nn = static_cast<double>(n);
  CriteriaReport out;
  out.nll = nll;
  out.k = k;
  out.n = n;
  out.aic = 2.0 * kk + 2.0 * nll;
  out.caic = out.aic + 2.0 * kk * (kk + 1.0) / (nn - kk - 1.0);
  out.bic = kk * std::log(nn) + 2.0 * nll;
  out.hqic = (2.0 * kk * std::log(std::log(nn)) + 2.0 * nll) / nn;
  return out;
}

}  // namespace mbuw
