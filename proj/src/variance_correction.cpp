#include "mbuw/variance_correction.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mbuw/errors.hpp"
#include "mbuw/likelihood.hpp"

namespace mbuw {

Interval wald_interval(double estimate, double se) { return {estimate - kZ975 * se, estimate + kZ975 * se}; }

double profile_nll(double alpha, const RelationModel& model, const SampleData& data) {
  if (!(alpha > 0.0)) {
    std::ostringstream msg;
    msg << "profile likelihood needs alpha > 0, got " << alpha;
    throw DomainError(msg.str());
  }
  const double beta = model.predict(alpha);
  if (!(beta > 0.0)) {
    std::ostringstream msg;
    msg << family_name(model.family) << " model gives beta=" << beta << " at alpha=" << alpha;
    throw DomainError(msg.str());
  }
  return nll(data, Params(alpha, beta));
}

double default_profile_start(const RelationModel& model) {
  if (std::isfinite(model.alpha_min) && std::isfinite(model.alpha_max) && model.alpha_min > 0.0) {
    return std::sqrt(model.alpha_min * model.alpha_max);
  }
  return 1.0;
}

namespace {

double second_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

VarCorrectedFit fit_var_corrected(const SampleData& data, const RelationModel& model, SimplexConfig cfg) {
  const double start = cfg.init.empty() ? default_profile_start(model) : cfg.init.front();
  if (!(start > 0.0)) throw InputError("profile start alpha must be positive");
  cfg.init = {std::log(start)};
  if (cfg.init_step.size() > 1) cfg.init_step.resize(1);

  const Objective objective = [&](std::span<const double> x) {
    try {
      return profile_nll(std::exp(x[0]), model, data);
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const MinimizeResult opt = minimize(objective, cfg);

  VarCorrectedFit fit;
  fit.model = model;
  fit.n = data.size();
  fit.converged = opt.converged;
  fit.alpha_hat = std::exp(opt.argmin[0]);
  fit.beta_hat = model.predict(fit.alpha_hat);
  fit.nll_at_fit = opt.value;
  fit.extrapolated = !model.in_domain(fit.alpha_hat);

  const auto profile = [&](double a) { return profile_nll(a, model, data); };
  double h = 1e-4 * std::max(1.0, fit.alpha_hat);
  if (h >= 0.5 * fit.alpha_hat) h = 0.25 * fit.alpha_hat;
  double curvature = 0.0;
  try {
    const double coarse = second_difference(profile, fit.alpha_hat, h);
    const double fine = second_difference(profile, fit.alpha_hat, 0.5 * h);
    curvature = (4.0 * fine - coarse) / 3.0;
  } catch (const DomainError& e) {
    throw NonPositiveCurvature(std::string("profile curvature undefined near the optimum: ") + e.what());
  }
  fit.curvature = curvature;
  if (!(curvature > 0.0) || !std::isfinite(curvature)) {
    std::ostringstream msg;
    msg << family_name(model.family) << " profile has non-positive curvature " << curvature << " at alpha="
        << fit.alpha_hat;
    throw NonPositiveCurvature(msg.str());
  }

  const double nn = static_cast<double>(fit.n);
  const double var_alpha = 1.0 / curvature;
  const double slope = model.derivative(fit.alpha_hat);
  fit.var_alpha_unit = nn * var_alpha;
  fit.var_beta_unit = slope * slope * fit.var_alpha_unit;
  fit.se_alpha = std::sqrt(fit.var_alpha_unit / nn);
  fit.se_beta = std::sqrt(fit.var_beta_unit / nn);
  fit.ci_alpha = wald_interval(fit.alpha_hat, fit.se_alpha);
  fit.ci_beta = wald_interval(fit.beta_hat, fit.se_beta);

  const Params at(fit.alpha_hat, fit.beta_hat);
  fit.gof = gof(data, at);
  if (fit.n > 3) fit.criteria = criteria(fit.nll_at_fit, 2, fit.n);
  return fit;
}

}  // namespace mbuw
