#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mbuw/distribution.hpp"
#include "mbuw/gof_metrics.hpp"
#include "mbuw/optimizer.hpp"
#include "mbuw/relation_models.hpp"

namespace mbuw {

/// Two-sided 95% normal quantile used for every Wald interval.
inline constexpr double kZ975 = 1.959964;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// estimate -/+ kZ975 * se.
Interval wald_interval(double estimate, double se);

/// Fit of the profile likelihood nll(alpha, g(alpha)).
///
/// Variances use the unit-information convention: the
/// "unit" variance is n var(theta_hat), so se = sqrt(var_unit / n).
struct VarCorrectedFit {
  RelationModel model;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double var_alpha_unit = 0.0;
  double var_beta_unit = 0.0;
  double se_alpha = 0.0;
  double se_beta = 0.0;
  Interval ci_alpha;
  Interval ci_beta;
  double nll_at_fit = 0.0;
  /// d^2 nll / d alpha^2 along the profile at alpha_hat.
  double curvature = 0.0;
  std::size_t n = 0;
  bool converged = false;
  bool extrapolated = false;
  GofReport gof;
  /// Empty when n <= 3.
  std::optional<CriteriaReport> criteria;
};

/// nll(data, (alpha, g(alpha))); DomainError when g(alpha) <= 0.
double profile_nll(double alpha, const RelationModel& model, const SampleData& data);

/// Minimises the profile over ln alpha with Nelder-Mead. cfg.init, when set,
/// holds the starting alpha (not its log); otherwise the geometric midpoint of
/// the model's fitted alpha span is used.
///
/// var(alpha_hat) is the inverse of a Richardson-refined central second
/// difference of the profile (step 1e-4 max(1, alpha_hat)); var(beta_hat) comes
/// from the delta method. Throws NonPositiveCurvature on a flat or concave
/// profile.
VarCorrectedFit fit_var_corrected(const SampleData& data, const RelationModel& model, SimplexConfig cfg = {});

/// Starting point of the profile fit using the model's fitted span.
double default_profile_start(const RelationModel& model);

}  // namespace mbuw
