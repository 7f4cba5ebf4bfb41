#include "mbuw/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "mbuw/cumulants.hpp"
#include "mbuw/errors.hpp"
#include "mbuw/gof_metrics.hpp"
#include "mbuw/likelihood.hpp"

namespace mbuw::cli {

json NullLog::number(double v, const std::string& field) {
  if (std::isfinite(v)) return v;
  messages_.push_back(field + " is not finite (" + std::to_string(v) + "); written as null");
  return nullptr;
}

json input_digest(const std::string& file, const SampleData& data) {
  return {{"file", file}, {"n", data.size()}, {"min", data.min()}, {"max", data.max()}};
}

namespace {

json interval(NullLog& log, const std::string& field, double lo, double hi) {
  return json::array({log.number(lo, field + ".lo"), log.number(hi, field + ".hi")});
}

json gof_json(NullLog& log, const GofReport& g) {
  return {{"ks", log.number(g.ks, "gof.ks")},
          {"ad", log.number(g.ad, "gof.ad")},
          {"cvm", log.number(g.cvm, "gof.cvm")},
          {"ks_pvalue", log.number(g.ks_pvalue, "gof.ks_pvalue")},
          {"reject_at_05", g.reject_at_05},
          {"clamped", g.clamped}};
}

json criteria_json(NullLog& log, const std::optional<CriteriaReport>& c) {
  if (!c) {
    log.note("information criteria need n > k + 1; written as null");
    return nullptr;
  }
  return {{"nll", log.number(c->nll, "criteria.nll")},
          {"aic", log.number(c->aic, "criteria.aic")},
          {"caic", log.number(c->caic, "criteria.caic")},
          {"bic", log.number(c->bic, "criteria.bic")},
          {"hqic", log.number(c->hqic, "criteria.hqic")},
          {"k", c->k}};
}

std::optional<CriteriaReport> try_criteria(double value, std::size_t n) {
  if (n <= 3) return std::nullopt;
  return criteria(value, 2, n);
}

json params_json(NullLog& log, const Params& p) {
  return {{"alpha", log.number(p.alpha(), "params.alpha")}, {"beta", log.number(p.beta(), "params.beta")}};
}

// The density depends on (alpha, beta) only through c, so c carries its own
// standard error even when the (alpha, beta) information is singular.
json power_json(NullLog& log, const Params& p, std::size_t n, const QuadratureConfig& quad) {
  const double info = power_information(p, quad);
  const double se = std::sqrt(1.0 / (static_cast<double>(n) * info));
  const Interval ci = wald_interval(p.c(), se);
  return {{"value", log.number(p.c(), "c.value")},
          {"se", log.number(se, "c.se")},
          {"ci", interval(log, "c.ci", ci.lo, ci.hi)}};
}

json null_variance() {
  return {{"alpha_unit", nullptr}, {"beta_unit", nullptr}, {"covariance_unit", nullptr}, {"se_alpha", nullptr},
          {"se_beta", nullptr},    {"ci_alpha", nullptr},  {"ci_beta", nullptr}};
}

json matrix_variance(NullLog& log, const Params& p, const Eigen::Matrix2d& varcov, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double se_a = std::sqrt(varcov(0, 0)), se_b = std::sqrt(varcov(1, 1));
  const Interval ca = wald_interval(p.alpha(), se_a), cb = wald_interval(p.beta(), se_b);
  return {{"alpha_unit", log.number(nn * varcov(0, 0), "variance.alpha_unit")},
          {"beta_unit", log.number(nn * varcov(1, 1), "variance.beta_unit")},
          {"covariance_unit", log.number(nn * varcov(0, 1), "variance.covariance_unit")},
          {"se_alpha", log.number(se_a, "variance.se_alpha")},
          {"se_beta", log.number(se_b, "variance.se_beta")},
          {"ci_alpha", interval(log, "variance.ci_alpha", ca.lo, ca.hi)},
          {"ci_beta", interval(log, "variance.ci_beta", cb.lo, cb.hi)}};
}

json diagnostics_json(const NullLog& log, const MinimizeResult& opt, std::optional<bool> pd,
                      std::optional<bool> singular, std::optional<bool> quad_ok, std::optional<bool> extrapolated) {
  auto opt_bool = [](std::optional<bool> b) { return b ? json(*b) : json(nullptr); };
  return {{"converged", opt.converged},
          {"iterations", opt.iterations},
          {"restarts", opt.restarts_run},
          {"pd_flag", opt_bool(pd)},
          {"information_singular", opt_bool(singular)},
          {"quadrature_converged", opt_bool(quad_ok)},
          {"extrapolated", opt_bool(extrapolated)},
          {"messages", log.messages()}};
}

json information_json(NullLog& log, const InformationMatrix& info) {
  return {{"k11", log.number(info.K(0, 0), "information.k11")},
          {"k12", log.number(info.K(0, 1), "information.k12")},
          {"k22", log.number(info.K(1, 1), "information.k22")},
          {"det", log.number(info.det, "information.det")}};
}

}  // namespace

json mle_report(const SampleData& data, const MleFit& fit, const QuadratureConfig& quad) {
  NullLog log;
  const std::size_t n = data.size();
  const Params& p = fit.estimate;
  const CumulantSet k = second_order_cumulants(p, quad);
  const InformationMatrix info = information_matrix(k, n);

  json variance;
  if (info.positive_definite) {
    variance = matrix_variance(log, p, info.K.inverse(), n);
  } else {
    variance = null_variance();
    log.note(std::string("expected information is ") + (info.singular ? "singular" : "not positive definite") +
             "; alpha/beta variances written as null");
  }
  if (!k.quadrature.converged) log.note("information quadrature did not converge under node doubling");
  if (!fit.optimizer.converged) log.note("Nelder-Mead stopped at max_iter before meeting tolerances");

  json r;
  r["method"] = "mle";
  r["params"] = params_json(log, p);
  r["c"] = power_json(log, p, n, quad);
  r["variance"] = variance;
  r["information"] = information_json(log, info);
  r["gof"] = gof_json(log, gof(data, p));
  r["criteria"] = criteria_json(log, try_criteria(fit.nll, n));
  r["mle"] = nullptr;
  r["bias"] = nullptr;
  r["model"] = nullptr;
  r["diagnostics"] =
      diagnostics_json(log, fit.optimizer, info.positive_definite, info.singular, k.quadrature.converged, std::nullopt);
  return r;
}

json bias_report(const SampleData& data, const MleFit& fit, const BiasReport& b, const QuadratureConfig& quad) {
  NullLog log;
  const std::size_t n = data.size();
  for (const std::string& d : b.diagnostics) log.note(d);
  if (!fit.optimizer.converged) log.note("Nelder-Mead stopped at max_iter before meeting tolerances");

  json r;
  r["method"] = b.applied ? "bias-corrected" : "mle";
  r["params"] = params_json(log, b.corrected);
  r["c"] = power_json(log, b.corrected, n, quad);
  if (b.varcov && b.information.positive_definite) {
    r["variance"] = matrix_variance(log, b.corrected, *b.varcov, n);
  } else {
    r["variance"] = null_variance();
    log.note("no positive definite information at the MLE; alpha/beta variances written as null");
  }
  r["information"] = information_json(log, b.information);
  r["gof"] = gof_json(log, b.gof);
  r["criteria"] = criteria_json(log, b.criteria);
  r["mle"] = params_json(log, b.mle);
  if (b.bias) {
    r["bias"] = {{"alpha", log.number((*b.bias)(0), "bias.alpha")}, {"beta", log.number((*b.bias)(1), "bias.beta")}};
  } else {
    r["bias"] = nullptr;
    log.note("bias vector undefined; written as null");
  }
  r["model"] = nullptr;
  r["diagnostics"] = diagnostics_json(log, fit.optimizer, b.pd_flag, b.information.singular, b.quadrature_converged,
                                      std::nullopt);
  return r;
}

json varfit_report(const SampleData& data, const VarCorrectedFit& f, const QuadratureConfig& quad) {
  NullLog log;
  const std::size_t n = data.size();
  const Params p(f.alpha_hat, f.beta_hat);
  if (!f.converged) log.note("profile Nelder-Mead stopped at max_iter before meeting tolerances");
  if (f.extrapolated) log.note("alpha estimate lies outside the alpha span of the ridge pairs");

  json r;
  r["method"] = "var-corrected:" + std::string(family_name(f.model.family));
  r["params"] = params_json(log, p);
  r["c"] = power_json(log, p, n, quad);
  r["variance"] = {{"alpha_unit", log.number(f.var_alpha_unit, "variance.alpha_unit")},
                   {"beta_unit", log.number(f.var_beta_unit, "variance.beta_unit")},
                   {"covariance_unit", log.number(f.var_alpha_unit * f.model.derivative(f.alpha_hat),
                                                  "variance.covariance_unit")},
                   {"se_alpha", log.number(f.se_alpha, "variance.se_alpha")},
                   {"se_beta", log.number(f.se_beta, "variance.se_beta")},
                   {"ci_alpha", interval(log, "variance.ci_alpha", f.ci_alpha.lo, f.ci_alpha.hi)},
                   {"ci_beta", interval(log, "variance.ci_beta", f.ci_beta.lo, f.ci_beta.hi)}};
  r["information"] = nullptr;
  r["gof"] = gof_json(log, f.gof);
  r["criteria"] = criteria_json(log, f.criteria);
  r["mle"] = nullptr;
  r["bias"] = nullptr;
  json coefs = json::array();
  for (std::size_t i = 0; i < f.model.coefficients.size(); ++i) {
    coefs.push_back(log.number(f.model.coefficients[i], "model.coefficients[" + std::to_string(i) + "]"));
  }
  r["model"] = {{"family", family_name(f.model.family)},
                {"coefficients", coefs},
                {"rss", log.number(f.model.rss, "model.rss")},
                {"r2", log.number(f.model.r2, "model.r2")},
                {"rmse", log.number(f.model.rmse, "model.rmse")},
                {"points", f.model.points},
                {"curvature", log.number(f.curvature, "model.curvature")}};
  MinimizeResult opt;
  opt.converged = f.converged;
  r["diagnostics"] = diagnostics_json(log, opt, std::nullopt, std::nullopt, std::nullopt, f.extrapolated);
  r["diagnostics"].erase("iterations");
  r["diagnostics"].erase("restarts");
  return r;
}

json document(const std::string& command, json input, json reports) {
  return {{"schema_version", kSchemaVersion},
          {"toolkit_version", kToolkitVersion},
          {"command", command},
          {"input", std::move(input)},
          {"reports", std::move(reports)}};
}

json study_json(const StudyResult& r) {
  NullLog log;
  auto summary = [&](const EstimatorSummary& s, const std::string& prefix) {
    return json{{"used", s.used},
                {"bias_alpha", log.number(s.bias_alpha, prefix + ".bias_alpha")},
                {"bias_beta", log.number(s.bias_beta, prefix + ".bias_beta")},
                {"rmse_alpha", log.number(s.rmse_alpha, prefix + ".rmse_alpha")},
                {"rmse_beta", log.number(s.rmse_beta, prefix + ".rmse_beta")},
                {"mae_alpha", log.number(s.mae_alpha, prefix + ".mae_alpha")},
                {"mae_beta", log.number(s.mae_beta, prefix + ".mae_beta")}};
  };
  json sizes = json::array();
  for (const SizeResult& s : r.sizes) {
    const std::string tag = "n=" + std::to_string(s.n);
    json row{{"n", s.n},
             {"mle", summary(s.raw, tag + ".mle")},
             {"mle_failures", s.mle_failures},
             {"correction_failures", s.correction_failures}};
    if (s.corrected) {
      row["corrected"] = summary(*s.corrected, tag + ".corrected");
    } else {
      row["corrected"] = nullptr;
      log.note(tag + ": no replicate produced a usable bias correction");
    }
    sizes.push_back(row);
  }
  json ns = json::array();
  for (std::size_t n : r.config.n_list) ns.push_back(n);
  return {{"schema_version", kSchemaVersion},
          {"toolkit_version", kToolkitVersion},
          {"command", "simulate"},
          {"config",
           {{"alpha", r.config.true_params.alpha()},
            {"beta", r.config.true_params.beta()},
            {"n_list", ns},
            {"replicates", r.config.replicates},
            {"seed", r.config.seed}}},
          {"sizes", sizes},
          {"messages", log.messages()}};
}

std::string comparison_table(const std::vector<VarCorrectedFit>& fits) {
  std::ostringstream out;
  char buf[64];
  auto cell = [&](double v) {
    std::snprintf(buf, sizeof buf, " %14.4f", v);
    out << buf;
  };
  std::snprintf(buf, sizeof buf, "%-10s", "metric");
  out << buf;
  for (const VarCorrectedFit& f : fits) {
    std::snprintf(buf, sizeof buf, " %14s", std::string(family_name(f.model.family)).c_str());
    out << buf;
  }
  out << '\n';
  auto row = [&](const char* name, auto get) {
    std::snprintf(buf, sizeof buf, "%-10s", name);
    out << buf;
    for (const VarCorrectedFit& f : fits) cell(get(f));
    out << '\n';
  };
  row("alpha", [](const VarCorrectedFit& f) { return f.alpha_hat; });
  row("beta", [](const VarCorrectedFit& f) { return f.beta_hat; });
  row("var_alpha", [](const VarCorrectedFit& f) { return f.var_alpha_unit; });
  row("var_beta", [](const VarCorrectedFit& f) { return f.var_beta_unit; });
  row("nll", [](const VarCorrectedFit& f) { return f.nll_at_fit; });
  row("ks", [](const VarCorrectedFit& f) { return f.gof.ks; });
  row("ad", [](const VarCorrectedFit& f) { return f.gof.ad; });
  row("cvm", [](const VarCorrectedFit& f) { return f.gof.cvm; });
  row("aic", [](const VarCorrectedFit& f) { return f.criteria ? f.criteria->aic : NAN; });
  row("caic", [](const VarCorrectedFit& f) { return f.criteria ? f.criteria->caic : NAN; });
  row("bic", [](const VarCorrectedFit& f) { return f.criteria ? f.criteria->bic : NAN; });
  row("hqic", [](const VarCorrectedFit& f) { return f.criteria ? f.criteria->hqic : NAN; });
  row("ks_p", [](const VarCorrectedFit& f) { return f.gof.ks_pvalue; });
  row("rss", [](const VarCorrectedFit& f) { return f.model.rss; });
  row("r2", [](const VarCorrectedFit& f) { return f.model.r2; });
  row("rmse", [](const VarCorrectedFit& f) { return f.model.rmse; });
  return out.str();
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

}  // namespace mbuw::cli
