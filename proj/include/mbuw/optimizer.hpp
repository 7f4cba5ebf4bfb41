#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mbuw {

struct SimplexConfig {
  std::vector<double> init;
  /// Per-coordinate edge of the starting simplex; empty means 0.1 everywhere.
  std::vector<double> init_step;
  double reflect = 1.0;
  double expand = 2.0;
  double contract = 0.5;
  double shrink = 0.5;
  double tol_f = 1e-10;
  double tol_x = 1e-8;
  int max_iter = 5000;
  int restarts = 2;

  void validate() const;
};

struct MinimizeResult {
  std::vector<double> argmin;
  double value = 0.0;
  int iterations = 0;
  int restarts_run = 0;
  /// Both tolerances met by the final run.
  bool converged = false;
  /// Best vertex value after each iteration, over all runs.
  std::vector<double> best_history;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead downhill simplex. Non-finite objective values are treated as
/// +infinity once the search is under way; the starting simplex must be finite
/// (NonFiniteObjective otherwise).
MinimizeResult minimize(const Objective& f, const SimplexConfig& cfg);

}  // namespace mbuw
