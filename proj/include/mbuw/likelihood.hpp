#pragma once

#include "mbuw/distribution.hpp"

namespace mbuw {

/// Partial derivatives of ln f(y; alpha, beta) up to third order.
/// Index 0 is alpha, index 1 is beta.
struct DerivativeBundle {
  double d_alpha = 0.0;
  double d_beta = 0.0;
  double d2_aa = 0.0;
  double d2_ab = 0.0;
  double d2_bb = 0.0;
  double d3_aaa = 0.0;
  double d3_aab = 0.0;
  double d3_abb = 0.0;
  double d3_bbb = 0.0;

  double first(int i) const;
  double second(int i, int j) const;
  /// Any ordering of (i, j, l) maps to the same stored value.
  double third(int i, int j, int l) const;

  DerivativeBundle& operator+=(const DerivativeBundle& other);
};

/// Derivatives of c = alpha^(-beta) with respect to (alpha, beta), up to third
/// order. Every parameter derivative of ln f factors through these.
struct PowerChain {
  double c, c_a, c_b;
  double c_aa, c_ab, c_bb;
  double c_aaa, c_aab, c_abb, c_bbb;

  explicit PowerChain(const Params& p);
};

/// Derivative bundle from ln y and q = y^c / (1 - y^c). Callers that already
/// know q in closed form (e.g. quadrature in the probability scale) use this
/// directly; `derivatives` below is the y-based entry point.
DerivativeBundle derivatives_from_log(double log_y, double q, const PowerChain& chain);

DerivativeBundle derivatives(double y, const Params& p);
DerivativeBundle sum_derivatives(const SampleData& data, const Params& p);

/// Negative log-likelihood -sum ln f(y_i).
double nll(const SampleData& data, const Params& p);

}  // namespace mbuw
