#include "mbuw/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "mbuw/errors.hpp"

namespace mbuw {

namespace {

const double kLog6 = std::log(6.0);

// Lower branch of the inverse smoothstep, valid for u in [0, 1/2].
// With phi = (2/3) asin(sqrt(u)) the root is t = 2 sin(phi/2) cos(pi/6 - phi/2),
// which is 1/2 - sin(asin(1 - 2u)/3) rewritten so that small u keeps full
// relative precision.
double lower_root(double u) {
  const double phi = (2.0 / 3.0) * std::asin(std::sqrt(u));
  return 2.0 * std::sin(0.5 * phi) * std::cos(std::numbers::pi / 6.0 - 0.5 * phi);
}

// ln t for t = inverse_smoothstep(u), accurate at both ends.
double log_inverse_smoothstep(double u) {
  if (u <= 0.5) {
    return std::log(lower_root(u));
  }
  return std::log1p(-lower_root(1.0 - u));
}

void check_unit_closed(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << what << " must lie in [0, 1], got " << v;
    throw DomainError(msg.str());
  }
}

}  // namespace

Params::Params(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !(beta > 0.0) || !std::isfinite(beta)) {
    std::ostringstream msg;
    msg << "parameters must be finite and positive, got alpha=" << alpha << " beta=" << beta;
    throw DomainError(msg.str());
  }
  log_alpha_ = std::log(alpha);
  c_ = std::exp(-beta * log_alpha_);
  scale_ = std::exp(beta * log_alpha_);
  if (!(c_ > 0.0) || !std::isfinite(c_) || !(scale_ > 0.0) || !std::isfinite(scale_)) {
    std::ostringstream msg;
    msg << "alpha^(-beta) is not representable for alpha=" << alpha << " beta=" << beta;
    throw DomainError(msg.str());
  }
}

SampleData::SampleData(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw InputError("sample is empty");
  }
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double y = values_[i];
    if (!(y > 0.0 && y < 1.0)) {
      bad.push_back(i);
    }
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << bad.size() << " value(s) outside (0, 1) at index";
    for (std::size_t k = 0; k < bad.size() && k < 20; ++k) {
      msg << (k == 0 ? " " : ", ") << bad[k];
    }
    if (bad.size() > 20) msg << ", ...";
    throw DomainError(msg.str());
  }
  logs_.resize(values_.size());
  std::transform(values_.begin(), values_.end(), logs_.begin(), [](double y) { return std::log(y); });
  for (double l : logs_) sum_log_ += l;
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  min_ = *lo;
  max_ = *hi;
}

double log1mexp(double x) {
  if (x > -std::numbers::ln2) {
    return std::log(-std::expm1(x));
  }
  return std::log1p(-std::exp(x));
}

double log_pdf(double y, const Params& p) {
  if (!(y > 0.0 && y < 1.0)) {
    std::ostringstream msg;
    msg << "density argument must lie in (0, 1), got " << y;
    throw DomainError(msg.str());
  }
  const double c = p.c();
  const double ly = std::log(y);
  return kLog6 + std::log(c) + log1mexp(c * ly) + (2.0 * c - 1.0) * ly;
}

double pdf(double y, const Params& p) { return std::exp(log_pdf(y, p)); }

double cdf(double y, const Params& p) {
  check_unit_closed(y, "cdf argument");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;
  const double t = std::exp(p.c() * std::log(y));
  return t * t * (3.0 - 2.0 * t);
}

double inverse_smoothstep(double u) {
  check_unit_closed(u, "smoothstep level");
  if (u <= 0.5) return lower_root(u);
  return 1.0 - lower_root(1.0 - u);
}

double quantile(double u, const Params& p) {
  check_unit_closed(u, "quantile level");
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  return std::exp(p.scale() * log_inverse_smoothstep(u));
}

double median(const Params& p) { return std::exp(-std::numbers::ln2 * p.scale()); }

SampleData sample(std::size_t n, const Params& p, std::uint64_t seed) {
  if (n == 0) {
    throw InputError("sample size must be at least 1");
  }
  std::mt19937_64 engine(seed);
  std::vector<double> out(n);
  const double smallest = std::numeric_limits<double>::min();
  const double largest = std::nextafter(1.0, 0.0);
  for (auto& y : out) {
    // 53 random bits mapped onto the midpoints of (0, 1), never 0 or 1.
    const double u = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
    y = std::clamp(quantile(u, p), smallest, largest);
  }
  return SampleData(std::move(out));
}

}  // namespace mbuw
