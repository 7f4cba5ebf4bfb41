#include "mbuw/surface_scan.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mbuw/errors.hpp"
#include "mbuw/likelihood.hpp"
#include "mbuw/parallel.hpp"

namespace mbuw {

namespace {

std::vector<double> linspace(Range r, std::size_t points) {
  std::vector<double> axis(points);
  const double step = (r.hi - r.lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) axis[i] = r.lo + static_cast<double>(i) * step;
  axis.back() = r.hi;
  return axis;
}

void check_range(Range r, const char* name) {
  if (!(r.lo > 0.0) || !std::isfinite(r.hi) || !(r.hi > r.lo)) {
    std::ostringstream msg;
    msg << name << " range must satisfy 0 < lo < hi < inf, got [" << r.lo << ", " << r.hi << "]";
    throw InputError(msg.str());
  }
}

}  // namespace

RidgePairs RidgePairs::from_pairs(const std::vector<std::pair<double, double>>& ab) {
  RidgePairs out;
  out.pairs.reserve(ab.size());
  for (const auto& [a, b] : ab) out.pairs.push_back({a, b, 0.0});
  return out;
}

SurfaceGrid scan(const SampleData& data, Range alpha_range, Range beta_range, std::size_t points) {
  check_range(alpha_range, "alpha");
  check_range(beta_range, "beta");
  if (points < 2) throw InputError("surface scan needs at least 2 points per axis");

  SurfaceGrid grid;
  grid.alpha_axis = linspace(alpha_range, points);
  grid.beta_axis = linspace(beta_range, points);
  grid.values.assign(points * points, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> bad_per_row(points, 0);

  parallel_for(points, [&](std::size_t i) {
    for (std::size_t j = 0; j < points; ++j) {
      double v = std::numeric_limits<double>::infinity();
      try {
        v = nll(data, Params(grid.alpha_axis[i], grid.beta_axis[j]));
      } catch (const DomainError&) {
      }
      if (!std::isfinite(v)) {
        v = std::numeric_limits<double>::infinity();
        ++bad_per_row[i];
      }
      grid.values[i * points + j] = v;
    }
  });

  grid.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    grid.nonfinite += bad_per_row[i];
    for (std::size_t j = 0; j < points; ++j) {
      const double v = grid.values[i * points + j];
      if (v < grid.min_value) {
        grid.min_value = v;
        grid.min_index = {i, j};
      }
    }
  }
  if (!std::isfinite(grid.min_value)) {
    throw NumericalError("negative log-likelihood is not finite anywhere on the grid");
  }
  return grid;
}

double default_ridge_tolerance(double min_value) { return std::max(0.01 * std::abs(min_value), 1e-3); }

RidgePairs extract_ridge(const SurfaceGrid& grid, double tol) {
  if (!(tol > 0.0)) throw InputError("ridge tolerance must be positive");
  RidgePairs out;
  out.tolerance_used = tol;
  const double threshold = grid.min_value + tol;
  const std::size_t cols = grid.beta_axis.size();
  for (std::size_t i = 0; i < grid.alpha_axis.size(); ++i) {
    std::size_t best = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = grid.at(i, j);
      if (v <= threshold && (best == cols || v < grid.at(i, best))) best = j;
    }
    if (best != cols) {
      out.pairs.push_back({grid.alpha_axis[i], grid.beta_axis[best], grid.at(i, best)});
    }
  }
  if (out.pairs.empty()) throw NumericalError("no grid node lies within the ridge tolerance");
  return out;
}

}  // namespace mbuw
