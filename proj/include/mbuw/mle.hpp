#pragma once

#include "mbuw/distribution.hpp"
#include "mbuw/optimizer.hpp"

namespace mbuw {

struct MleFit {
  Params estimate;
  double nll = 0.0;
  MinimizeResult optimizer;
};

/// Median-matched start: the sample median m fixes alpha^beta = ln m / ln(1/2);
/// alpha is then placed at e (or 1/e when alpha^beta < 1).
Params initial_guess(const SampleData& data);

/// Maximum likelihood by Nelder-Mead over (ln alpha, ln beta), started at
/// `start`. Any `init` already in `cfg` is replaced by the log of `start`.
MleFit fit_mle(const SampleData& data, const Params& start, SimplexConfig cfg = {});
MleFit fit_mle(const SampleData& data, SimplexConfig cfg = {});

}  // namespace mbuw
