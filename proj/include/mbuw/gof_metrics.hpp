#pragma once

#include <cstddef>
#include <span>

#include "mbuw/distribution.hpp"

namespace mbuw {

struct GofReport {
  double ks = 0.0;
  double ad = 0.0;
  double cvm = 0.0;
  double ks_pvalue = 1.0;
  bool reject_at_05 = false;
  /// PIT values that were exactly 0 or 1 and got clamped to [1e-15, 1 - 1e-15].
  std::size_t clamped = 0;
};

struct CriteriaReport {
  double nll = 0.0;
  double aic = 0.0;
  double caic = 0.0;
  double bic = 0.0;
  double hqic = 0.0;
  int k = 2;
  std::size_t n = 0;
};

/// KS, AD and CVM of the fitted CDF against the empirical CDF.
GofReport gof(const SampleData& data, const Params& p);

/// Same statistics from probability-integral-transform values (any order).
GofReport gof_from_pit(std::span<const double> pit);

/// Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_survival(double lambda);

/// Asymptotic KS p-value with the finite-n scaling
/// lambda = (sqrt(n) + 0.12 + 0.11 / sqrt(n)) * ks.
double ks_pvalue(double ks, std::size_t n);

/// AIC, small-sample corrected AIC (CAIC), BIC and the per-observation HQIC
/// (2k ln ln n + 2 nll) / n. Requires n > k + 1.
CriteriaReport criteria(double nll, int k, std::size_t n);

}  // namespace mbuw
