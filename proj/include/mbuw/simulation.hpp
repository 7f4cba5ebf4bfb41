#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbuw/cumulants.hpp"
#include "mbuw/distribution.hpp"

namespace mbuw {

struct StudyConfig {
  Params true_params{2.0, 1.5};
  std::vector<std::size_t> n_list{10, 20, 50, 100};
  std::size_t replicates = 1000;
  std::uint64_t seed = 20240601;
  QuadratureConfig quad;
  /// 0 means worker_count().
  std::size_t workers = 0;
  void validate() const;
};

/// Mean bias and RMSE of one estimator over the replicates that produced it.
struct EstimatorSummary {
  std::size_t used = 0;
  double bias_alpha = 0.0;
  double bias_beta = 0.0;
  double rmse_alpha = 0.0;
  double rmse_beta = 0.0;
  /// Mean absolute error, componentwise.
  double mae_alpha = 0.0;
  double mae_beta = 0.0;
};

struct SizeResult {
  std::size_t n = 0;
  EstimatorSummary raw;
  /// Empty when no replicate had a usable correction.
  std::optional<EstimatorSummary> corrected;
  std::size_t mle_failures = 0;
  /// Replicates whose information matrix was singular or indefinite, or whose
  /// corrected estimate left the parameter space.
  std::size_t correction_failures = 0;
};

struct StudyResult {
  StudyConfig config;
  std::vector<SizeResult> sizes;
};

/// Seed of replicate `index` at sample size `n`: a splitmix64 hash of the
/// master seed, n and index, so results do not depend on scheduling.
std::uint64_t replicate_seed(std::uint64_t master, std::size_t n, std::size_t index);

/// One replicate outcome; exposed so a single run can be reproduced by hand.
struct ReplicateOutcome {
  bool mle_ok = false;
  double mle_alpha = 0.0;
  double mle_beta = 0.0;
  bool corrected_ok = false;
  double corrected_alpha = 0.0;
  double corrected_beta = 0.0;
};
ReplicateOutcome run_replicate(const Params& truth, std::size_t n, std::uint64_t seed, const QuadratureConfig& quad);

/// Throws NoConvergence when more than half the MLE fits fail at some n.
StudyResult run(const StudyConfig& cfg);

/// Rows n,estimator,bias_a,bias_b,rmse_a,rmse_b,failures.
std::string study_csv(const StudyResult& r);

}  // namespace mbuw
