#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mbuw/cumulants.hpp"
#include "mbuw/distribution.hpp"
#include "mbuw/gof_metrics.hpp"

namespace mbuw {

using AMatrix = Eigen::Matrix<double, 2, 4>;

/// Column-stacking vectorisation of a 2x2 matrix.
Eigen::Vector4d vec(const Eigen::Matrix2d& m);

/// A = n [A1 | A2] with A_l(i, j) = k_ij^(l) - k_ijl / 2.
AMatrix a_matrix(const CumulantSet& k, std::size_t n);
AMatrix a_matrix(const Params& p, std::size_t n, const QuadratureConfig& quad = {});

/// O(1/n) bias K^-1 A vec(K^-1). Evaluated from the per-observation matrices
/// and scaled by 1/n, so n * bias is independent of n.
///
/// Throws SingularInformation when K is numerically singular and
/// NonPositiveDefinite when a leading minor of K is not positive.
Eigen::Vector2d bias_vector(const CumulantSet& k, std::size_t n);
Eigen::Vector2d bias_vector(const Params& p, std::size_t n, const QuadratureConfig& quad = {});

/// mle - bias; DomainError if a component leaves the parameter space.
Params apply_bias(const Params& mle, const Eigen::Vector2d& bias);

struct BiasReport {
  Params mle;
  /// Equal to mle when the correction was withheld.
  Params corrected;
  std::optional<Eigen::Vector2d> bias;
  /// Inverse expected information at the MLE.
  std::optional<Eigen::Matrix2d> varcov;
  InformationMatrix information;
  bool pd_flag = false;
  bool applied = false;
  bool quadrature_converged = true;
  std::vector<std::string> diagnostics;
  /// Fit quality at `corrected`.
  double nll = 0.0;
  GofReport gof;
  std::optional<CriteriaReport> criteria;
};

/// Bias-adjusted estimator at an interior MLE. When the information matrix is
/// singular or indefinite the uncorrected MLE is reported with a diagnostic.
BiasReport correct(const SampleData& data, const Params& mle, const QuadratureConfig& quad = {});

}  // namespace mbuw
