#include "mbuw/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "mbuw/errors.hpp"
#include "mbuw/likelihood.hpp"

namespace mbuw {

Params initial_guess(const SampleData& data) {
  std::vector<double> v(data.values().begin(), data.values().end());
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  double m = *mid;
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), mid));
  }
  const double scale = std::log(m) / -std::numbers::ln2;
  if (std::abs(std::log(scale)) < 1e-8) return Params(1.0, 1.0);
  if (scale > 1.0) return Params(std::numbers::e, std::log(scale));
  return Params(1.0 / std::numbers::e, -std::log(scale));
}

MleFit fit_mle(const SampleData& data, const Params& start, SimplexConfig cfg) {
  cfg.init = {start.log_alpha(), std::log(start.beta())};
  const Objective objective = [&data](std::span<const double> x) {
    try {
      return nll(data, Params(std::exp(x[0]), std::exp(x[1])));
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  MinimizeResult opt = minimize(objective, cfg);
  Params estimate(std::exp(opt.argmin[0]), std::exp(opt.argmin[1]));
  const double value = opt.value;
  return MleFit{estimate, value, std::move(opt)};
}

MleFit fit_mle(const SampleData& data, SimplexConfig cfg) {
  return fit_mle(data, initial_guess(data), std::move(cfg));
}

}  // namespace mbuw
