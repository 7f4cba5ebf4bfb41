#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mbuw/distribution.hpp"

namespace mbuw {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// nll over an equally spaced (alpha, beta) lattice. values is row-major with
/// rows indexed by alpha and columns by beta.
struct SurfaceGrid {
  std::vector<double> alpha_axis;
  std::vector<double> beta_axis;
  std::vector<double> values;
  double min_value = 0.0;
  std::pair<std::size_t, std::size_t> min_index{0, 0};
  /// Entries whose nll was not finite; stored as +infinity.
  std::size_t nonfinite = 0;

  std::size_t points() const { return alpha_axis.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * beta_axis.size() + j]; }
};

struct RidgePoint {
  double alpha = 0.0;
  double beta = 0.0;
  double nll = 0.0;
};

struct RidgePairs {
  std::vector<RidgePoint> pairs;
  double tolerance_used = 0.0;

  /// Wraps externally supplied (alpha, beta) pairs; nll is left at 0.
  static RidgePairs from_pairs(const std::vector<std::pair<double, double>>& ab);
};

/// Evaluates the grid; rows run in parallel and are assembled by row index.
SurfaceGrid scan(const SampleData& data, Range alpha_range, Range beta_range, std::size_t points = 500);

/// max(0.01 |min_value|, 1e-3).
double default_ridge_tolerance(double min_value);

/// Nodes within `tol` of the grid minimum, thinned to the best beta of every
/// alpha row that has at least one qualifying node. Sorted by alpha.
RidgePairs extract_ridge(const SurfaceGrid& grid, double tol);

}  // namespace mbuw
