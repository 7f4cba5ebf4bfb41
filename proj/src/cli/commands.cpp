#include "mbuw/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "mbuw/cli/csv.hpp"
#include "mbuw/cli/report.hpp"
#include "mbuw/cli/svg.hpp"
#include "mbuw/errors.hpp"
#include "mbuw/surface_scan.hpp"

namespace mbuw::cli {

namespace fs = std::filesystem;

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + path);
    f << content;
    f.flush();
    if (!f) throw InputError("cannot write " + path);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot write " + path);
  }
}

namespace {

struct QuadOptions {
  QuadratureConfig quad;
  void attach(CLI::App* app) {
    app->add_option("--quad-nodes", quad.nodes, "trapezoid nodes in probability space")->capture_default_str();
    app->add_option("--quad-inset", quad.inset, "distance of the end nodes from 0 and 1")->capture_default_str();
    app->add_option("--quad-tol", quad.tolerance, "node-doubling tolerance")->capture_default_str();
  }
};

struct OptimizerOptions {
  SimplexConfig simplex;
  std::vector<double> start;
  void attach(CLI::App* app, const std::string& start_help) {
    app->add_option("--max-iter", simplex.max_iter, "Nelder-Mead iteration cap per run")->capture_default_str();
    app->add_option("--tol-f", simplex.tol_f, "spread of simplex values at convergence")->capture_default_str();
    app->add_option("--tol-x", simplex.tol_x, "simplex diameter at convergence")->capture_default_str();
    app->add_option("--restarts", simplex.restarts, "restarts from the best vertex")->capture_default_str();
    app->add_option("--start", start, start_help)->delimiter(',');
  }
};

struct SurfaceOptions {
  std::string alpha_range, beta_range;
  std::size_t points = 500;
  double tol = 0.0;
  void attach(CLI::App* app) {
    app->add_option("--alpha-range", alpha_range, "lo,hi (default: 0.5 to 1.5 times the MLE)");
    app->add_option("--beta-range", beta_range, "lo,hi (default: 0.5 to 1.5 times the MLE)");
    app->add_option("--points", points, "grid points per axis")->capture_default_str();
    app->add_option("--tol", tol, "ridge tolerance above the grid minimum (default: max(1% |min|, 1e-3))");
  }
};

Range parse_range(const std::string& text, const char* name) {
  double lo = 0, hi = 0;
  char sep = 0;
  std::istringstream in(text);
  if (!(in >> lo >> sep >> hi) || (sep != ',' && sep != ':') || !(in >> std::ws).eof()) {
    throw InputError(std::string(name) + " must look like lo,hi; got '" + text + "'");
  }
  return {lo, hi};
}

Params start_params(const std::vector<double>& start) {
  if (start.size() != 2) throw InputError("--start needs two values: alpha,beta");
  return Params(start[0], start[1]);
}

MleFit run_mle(const SampleData& data, const OptimizerOptions& opt) {
  return opt.start.empty() ? fit_mle(data, opt.simplex) : fit_mle(data, start_params(opt.start), opt.simplex);
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_atomic(path, content);
  }
}

std::string join(const fs::path& dir, const char* name) { return (dir / name).string(); }

struct Scanned {
  SurfaceGrid grid;
  RidgePairs ridge;
  Range alpha, beta;
};

Scanned run_surface(const SampleData& data, const Params& centre, const SurfaceOptions& opt) {
  Scanned s;
  s.alpha = opt.alpha_range.empty() ? Range{0.5 * centre.alpha(), 1.5 * centre.alpha()}
                                    : parse_range(opt.alpha_range, "--alpha-range");
  s.beta = opt.beta_range.empty() ? Range{0.5 * centre.beta(), 1.5 * centre.beta()}
                                  : parse_range(opt.beta_range, "--beta-range");
  s.grid = scan(data, s.alpha, s.beta, opt.points);
  const double tol = opt.tol > 0.0 ? opt.tol : default_ridge_tolerance(s.grid.min_value);
  s.ridge = extract_ridge(s.grid, tol);
  return s;
}

std::string grid_csv(const SurfaceGrid& g) {
  std::string out = "alpha,beta,nll\n";
  out.reserve(out.size() + g.values.size() * 64);
  char buf[96];
  for (std::size_t i = 0; i < g.alpha_axis.size(); ++i) {
    for (std::size_t j = 0; j < g.beta_axis.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.alpha_axis[i], g.beta_axis[j], g.at(i, j));
      out += buf;
    }
  }
  return out;
}

std::string ridge_csv(const RidgePairs& r) {
  std::string out = "alpha,beta\n";
  char buf[64];
  for (const RidgePoint& p : r.pairs) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.alpha, p.beta);
    out += buf;
  }
  return out;
}

json range_json(Range r) { return json::array({r.lo, r.hi}); }

int cmd_fit(const std::string& csv, const std::string& method, const std::string& out_path,
            const std::string& plot_dir, const QuadOptions& q, const OptimizerOptions& o, std::ostream& out,
            std::ostream& err) {
  q.quad.validate();
  const SampleData data = load_sample(csv);
  const MleFit fit = run_mle(data, o);
  int code = 0;
  json report;
  Params shown = fit.estimate;
  if (method == "bias-corrected") {
    const BiasReport b = correct(data, fit.estimate, q.quad);
    report = bias_report(data, fit, b, q.quad);
    shown = b.corrected;
    if (!b.applied) {
      for (const std::string& d : b.diagnostics) err << "mbuw: " << d << '\n';
      err << "mbuw: bias correction withheld\n";
      code = static_cast<int>(ExitCode::numerical);
    }
  } else {
    report = mle_report(data, fit, q.quad);
  }
  if (!fit.optimizer.converged) {
    err << "mbuw: Nelder-Mead did not converge within " << o.simplex.max_iter << " iterations\n";
    code = static_cast<int>(ExitCode::numerical);
  }
  emit(out_path, render(document("fit", input_digest(csv, data), json::array({report}))), out);
  if (!plot_dir.empty()) {
    write_atomic(join(plot_dir, "cdf.svg"), cdf_svg(data, shown));
    write_atomic(join(plot_dir, "qq.svg"), qq_svg(data, shown));
  }
  return code;
}

int cmd_surface(const std::string& csv, const std::string& out_dir, const std::string& out_path,
                const SurfaceOptions& s, const OptimizerOptions& o, std::ostream& out) {
  const SampleData data = load_sample(csv);
  const MleFit fit = run_mle(data, o);
  const Scanned sc = run_surface(data, fit.estimate, s);
  const fs::path dir(out_dir);
  write_atomic(join(dir, "grid.csv"), grid_csv(sc.grid));
  write_atomic(join(dir, "ridge.csv"), ridge_csv(sc.ridge));
  write_atomic(join(dir, "heatmap.svg"), heatmap_svg(sc.grid));

  const auto [mi, mj] = sc.grid.min_index;
  const json summary{
      {"schema_version", kSchemaVersion},
      {"toolkit_version", kToolkitVersion},
      {"command", "surface"},
      {"input", input_digest(csv, data)},
      {"mle", {{"alpha", fit.estimate.alpha()}, {"beta", fit.estimate.beta()}, {"nll", fit.nll}}},
      {"alpha_range", range_json(sc.alpha)},
      {"beta_range", range_json(sc.beta)},
      {"points", s.points},
      {"grid_min", {{"alpha", sc.grid.alpha_axis[mi]}, {"beta", sc.grid.beta_axis[mj]}, {"nll", sc.grid.min_value}}},
      {"nonfinite", sc.grid.nonfinite},
      {"tolerance", sc.ridge.tolerance_used},
      {"ridge_points", sc.ridge.pairs.size()},
      {"files",
       {{"grid", join(dir, "grid.csv")}, {"ridge", join(dir, "ridge.csv")}, {"heatmap", join(dir, "heatmap.svg")}}}};
  emit(out_path, render(summary), out);
  return 0;
}

int cmd_varfit(const std::string& csv, const std::string& model_name, const std::string& ridge_src,
               const std::string& out_path, const std::string& plot_dir, const SurfaceOptions& s,
               const QuadOptions& q, const OptimizerOptions& o, const std::vector<double>& profile_start,
               std::ostream& out, std::ostream& err) {
  std::vector<Family> families;
  if (model_name == "all") {
    families.assign(kAllFamilies.begin(), kAllFamilies.end());
  } else if (const auto f = parse_family(model_name)) {
    families.push_back(*f);
  } else {
    std::string names;
    for (Family f : kAllFamilies) names += std::string(family_name(f)) + ", ";
    throw InputError("unknown model '" + model_name + "'; valid names: " + names + "all");
  }
  q.quad.validate();
  const SampleData data = load_sample(csv);
  const MleFit mle = run_mle(data, o);

  RidgePairs ridge;
  json ridge_info;
  if (ridge_src == "auto") {
    const Scanned sc = run_surface(data, mle.estimate, s);
    ridge = sc.ridge;
    ridge_info = {{"source", "auto"},
                  {"points", ridge.pairs.size()},
                  {"tolerance", ridge.tolerance_used},
                  {"alpha_range", range_json(sc.alpha)},
                  {"beta_range", range_json(sc.beta)}};
  } else {
    ridge = RidgePairs::from_pairs(read_pairs(ridge_src));
    ridge_info = {{"source", ridge_src}, {"points", ridge.pairs.size()}, {"tolerance", nullptr}};
  }

  SimplexConfig profile_cfg = o.simplex;
  profile_cfg.init.clear();
  if (!profile_start.empty()) profile_cfg.init = {profile_start.front()};

  std::vector<VarCorrectedFit> fits;
  json reports = json::array(), skipped = json::array(), comparison = json::array();
  int first_failure = 0;
  for (Family f : families) {
    try {
      const RelationModel model = fit_relation(ridge, f);
      VarCorrectedFit v = fit_var_corrected(data, model, profile_cfg);
      reports.push_back(varfit_report(data, v, q.quad));
      comparison.push_back({{"family", family_name(f)},
                            {"alpha", v.alpha_hat},
                            {"beta", v.beta_hat},
                            {"nll", v.nll_at_fit},
                            {"delta_nll", v.nll_at_fit - mle.nll},
                            {"ks", v.gof.ks},
                            {"ad", v.gof.ad},
                            {"cvm", v.gof.cvm},
                            {"r2", v.model.r2}});
      fits.push_back(std::move(v));
    } catch (const Error& e) {
      if (e.code() == ExitCode::input) throw;
      err << "mbuw: " << family_name(f) << " skipped: " << e.what() << '\n';
      skipped.push_back({{"family", family_name(f)}, {"reason", e.what()}, {"exit_code", static_cast<int>(e.code())}});
      if (!first_failure) first_failure = static_cast<int>(e.code());
    }
  }

  json doc = document("varfit", input_digest(csv, data), reports);
  doc["ridge"] = ridge_info;
  doc["unconstrained"] = {{"alpha", mle.estimate.alpha()}, {"beta", mle.estimate.beta()}, {"nll", mle.nll}};
  doc["comparison"] = comparison;
  doc["skipped"] = skipped;
  emit(out_path, render(doc), out);
  if (!out_path.empty() && out_path != "-" && !fits.empty()) out << comparison_table(fits);

  if (!plot_dir.empty()) {
    std::vector<RelationModel> models;
    for (const VarCorrectedFit& v : fits) models.push_back(v.model);
    write_atomic(join(plot_dir, "ridge_fit.svg"), ridge_fit_svg(ridge, models));
    if (!fits.empty()) {
      const auto best = std::min_element(fits.begin(), fits.end(), [](const auto& a, const auto& b) {
        return a.nll_at_fit < b.nll_at_fit;
      });
      const Params p(best->alpha_hat, best->beta_hat);
      write_atomic(join(plot_dir, "cdf.svg"), cdf_svg(data, p));
      write_atomic(join(plot_dir, "qq.svg"), qq_svg(data, p));
    }
  }
  return fits.empty() ? first_failure : 0;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size() || v < 0) throw InputError("--n-list entries must be integers, got '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

int cmd_simulate(StudyConfig cfg, double alpha, double beta, const std::string& n_list, const std::string& out_dir,
                 std::ostream& out) {
  cfg.true_params = Params(alpha, beta);
  cfg.n_list = parse_sizes(n_list);
  const StudyResult r = run(cfg);
  const std::string csv = study_csv(r);
  write_atomic(join(out_dir, "study.csv"), csv);
  write_atomic(join(out_dir, "study.json"), render(study_json(r)));
  out << csv;
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fitting toolkit for the median based unit Weibull distribution", "mbuw"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);

  QuadOptions quad;
  OptimizerOptions optim;
  SurfaceOptions surf;
  std::string csv, out_path, plot_dir, method = "mle", out_dir = ".", model = "all", ridge = "auto";
  std::vector<double> profile_start;

  CLI::App* fit = app.add_subcommand("fit", "maximum likelihood fit, optionally bias corrected");
  fit->add_option("csv", csv, "one column of values in (0, 1)")->required();
  fit->add_option("--method", method, "mle or bias-corrected")
      ->check(CLI::IsMember({"mle", "bias-corrected"}))
      ->capture_default_str();
  fit->add_option("--out", out_path, "JSON report path (default: stdout)");
  fit->add_option("--plot", plot_dir, "directory for cdf.svg and qq.svg");
  quad.attach(fit);
  optim.attach(fit, "alpha,beta starting point (default: median matched)");

  CLI::App* surface = app.add_subcommand("surface", "nll grid, likelihood ridge and heatmap");
  surface->add_option("csv", csv, "one column of values in (0, 1)")->required();
  surface->add_option("--out-dir", out_dir, "directory for grid.csv, ridge.csv, heatmap.svg")->capture_default_str();
  surface->add_option("--out", out_path, "JSON summary path (default: stdout)");
  surf.attach(surface);
  optim.attach(surface, "alpha,beta starting point of the MLE used to centre the grid");

  CLI::App* varfit = app.add_subcommand("varfit", "profile fits along beta = g(alpha)");
  varfit->add_option("csv", csv, "one column of values in (0, 1)")->required();
  varfit->add_option("--model", model, "linear, quadratic, reciprocal, expdecay, powerlaw or all")->capture_default_str();
  varfit->add_option("--ridge", ridge, "alpha,beta CSV or 'auto' to scan the surface")->capture_default_str();
  varfit->add_option("--out", out_path, "JSON report path (default: stdout)");
  varfit->add_option("--plot", plot_dir, "directory for ridge_fit.svg, cdf.svg, qq.svg");
  varfit->add_option("--profile-start", profile_start, "starting alpha of the profile fit")->expected(1);
  surf.attach(varfit);
  quad.attach(varfit);
  optim.attach(varfit, "alpha,beta starting point of the unconstrained MLE");

  StudyConfig study;
  double true_alpha = 2.0, true_beta = 1.5;
  std::string n_list = "10,20,50,100";
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo bias study of the raw and corrected MLE");
  simulate->add_option("--alpha", true_alpha, "true alpha")->capture_default_str();
  simulate->add_option("--beta", true_beta, "true beta")->capture_default_str();
  simulate->add_option("--n-list", n_list, "comma separated sample sizes")->capture_default_str();
  simulate->add_option("--replicates", study.replicates, "replicates per sample size")->capture_default_str();
  simulate->add_option("--seed", study.seed, "master seed")->capture_default_str();
  simulate->add_option("--workers", study.workers, "worker threads (0: MBUW_THREADS or all cores)")
      ->capture_default_str();
  simulate->add_option("--out-dir", out_dir, "directory for study.csv and study.json")->capture_default_str();
  quad.attach(simulate);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::input);
  }

  try {
    if (fit->parsed()) return cmd_fit(csv, method, out_path, plot_dir, quad, optim, out, err);
    if (surface->parsed()) return cmd_surface(csv, out_dir, out_path, surf, optim, out);
    if (varfit->parsed()) {
      return cmd_varfit(csv, model, ridge, out_path, plot_dir, surf, quad, optim, profile_start, out, err);
    }
    study.quad = quad.quad;
    return cmd_simulate(study, true_alpha, true_beta, n_list, out_dir, out);
  } catch (const Error& e) {
    err << "mbuw: error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "mbuw: error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::numerical);
  }
}

}  // namespace mbuw::cli
