#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "mbuw/distribution.hpp"

namespace mbuw {

/// Composite trapezoid settings for expectations under the MBUW density.
///
/// Integration runs in the probability scale t = y^c, where the density becomes
/// 6 t (1 - t) for every parameter value; `nodes` trapezoid nodes cover
/// [inset, 1 - inset] and a second pass at half the spacing drives both the
/// doubling check and one Richardson step.
struct QuadratureConfig {
  std::size_t nodes = 20001;
  double inset = 1e-10;
  double tolerance = 1e-7;
  bool richardson = true;

  void validate() const;
};

struct QuadratureStatus {
  bool converged = true;
  /// Largest |T(h/2) - T(h)| over the integrated components.
  double max_change = 0.0;
};

/// The seven expectation integrals E[q L^3], E[q L^2], E[q L], E[q^2 L^3],
/// E[q^2 L^2], E[q^3 L^3], E[L] with L = ln y and q = y^c / (1 - y^c).
struct ExpectationSet {
  double f1 = 0.0, f2 = 0.0, f3 = 0.0, f4 = 0.0, f5 = 0.0, f6 = 0.0, f7 = 0.0;
  QuadratureStatus quadrature;
};

/// Expected per-observation cumulants of the log-likelihood derivatives.
/// Index 0 is alpha, 1 is beta. dkIJ_dX is the derivative of kIJ with respect
/// to parameter X.
struct CumulantSet {
  double k11 = 0.0, k12 = 0.0, k22 = 0.0;
  double k111 = 0.0, k112 = 0.0, k122 = 0.0, k222 = 0.0;
  double dk11_da = 0.0, dk11_db = 0.0;
  double dk12_da = 0.0, dk12_db = 0.0;
  double dk22_da = 0.0, dk22_db = 0.0;
  QuadratureStatus quadrature;

  double k(int i, int j) const;
  double k3(int i, int j, int l) const;
  /// d k_ij / d theta_l.
  double dk(int i, int j, int l) const;
  double determinant() const { return k11 * k22 - k12 * k12; }
  /// |k11 k22 - k12^2| below 1e-12, or below 1e-8 |k11 k22| (numerically
  /// rank one: the correlation implied by the matrix is within ~5e-9 of +-1).
  bool singular() const;
};

ExpectationSet expectations(const Params& p, const QuadratureConfig& quad = {});

/// k_ij and k_ijl by quadrature of the analytic derivatives; k_ij^(l) by
/// central differences with step 1e-4 * max(1, |theta_l|).
CumulantSet expected_cumulants(const Params& p, const QuadratureConfig& quad = {});

/// Only the second-order terms (k11, k12, k22); cheaper than the full set.
CumulantSet second_order_cumulants(const Params& p, const QuadratureConfig& quad = {});

/// Per-observation Fisher information about the power c = alpha^(-beta),
/// 1/c^2 + E[q L^2] + E[q^2 L^2]. Unlike the (alpha, beta) matrix this is
/// always positive.
double power_information(const Params& p, const QuadratureConfig& quad = {});

struct InformationMatrix {
  Eigen::Matrix2d K = Eigen::Matrix2d::Zero();
  double det = 0.0;
  bool singular = false;
  /// Both leading principal minors strictly positive and not singular.
  bool positive_definite = false;
};

/// K = -n [[k11, k12], [k12, k22]].
InformationMatrix information_matrix(const CumulantSet& k, std::size_t n);
InformationMatrix information_matrix(const Params& p, std::size_t n, const QuadratureConfig& quad = {});

}  // namespace mbuw
