#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mbuw {

/// Shape parameters of the Median Based Unit Weibull distribution.
///
/// The density only ever uses alpha and beta through the power
/// c = alpha^(-beta), which is cached on construction as exp(-beta * ln alpha).
class Params {
 public:
  /// Throws DomainError unless alpha > 0, beta > 0 and c is a finite positive number.
  Params(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double c() const noexcept { return c_; }
  /// alpha^beta = 1/c, the exponent of the quantile map.
  double scale() const noexcept { return scale_; }
  double log_alpha() const noexcept { return log_alpha_; }

 private:
  double alpha_;
  double beta_;
  double log_alpha_;
  double c_;
  double scale_;
};

/// Validated observations, each strictly inside (0, 1). ln y is cached per
/// observation since every likelihood evaluation needs it.
class SampleData {
 public:
  /// Throws InputError when empty, DomainError (listing offending indices) when
  /// any value is outside the open unit interval or not finite.
  explicit SampleData(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> log_values() const noexcept { return logs_; }
  double sum_log() const noexcept { return sum_log_; }
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }

 private:
  std::vector<double> values_;
  std::vector<double> logs_;
  double sum_log_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// ln(1 - exp(x)) for x < 0 without cancellation.
double log1mexp(double x);

double log_pdf(double y, const Params& p);
double pdf(double y, const Params& p);
double cdf(double y, const Params& p);
double quantile(double u, const Params& p);
double median(const Params& p);

/// Inverse of the smoothstep 3t^2 - 2t^3 on [0, 1].
double inverse_smoothstep(double u);

/// n independent draws by inverse-CDF sampling from a 64-bit Mersenne twister
/// seeded with `seed`.
SampleData sample(std::size_t n, const Params& p, std::uint64_t seed);

}  // namespace mbuw
