#include "mbuw/relation_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "mbuw/errors.hpp"

namespace mbuw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LinearSolve {
  Eigen::VectorXd coef;
  double rss = kInf;
  bool ok = false;
};

LinearSolve least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  LinearSolve out;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < X.cols()) return out;
  out.coef = qr.solve(y);
  out.rss = (y - X * out.coef).squaredNorm();
  out.ok = std::isfinite(out.rss);
  return out;
}

void require_positive_alpha(double alpha, Family f) {
  if (!(alpha > 0.0)) {
    std::ostringstream msg;
    msg << family_name(f) << " model needs alpha > 0, got " << alpha;
    throw DomainError(msg.str());
  }
}

// One trial of the profiled exponent: basis {exp(b (x - x0)), 1}.
struct ExponentTrial {
  double rss = kInf;
  double scale = 0.0;   // coefficient on exp(b (x - x0))
  double offset = 0.0;  // intercept
};

ExponentTrial exponent_trial(const std::vector<double>& x, const Eigen::VectorXd& y, double x0, double b) {
  const auto m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd X(m, 2);
  for (Eigen::Index i = 0; i < m; ++i) {
    X(i, 0) = std::exp(b * (x[static_cast<std::size_t>(i)] - x0));
    X(i, 1) = 1.0;
  }
  const LinearSolve s = least_squares(X, y);
  if (!s.ok) return {};
  return {s.rss, s.coef(0), s.coef(1)};
}

// Minimises rss over b in [lo, hi] (same sign) by golden-section search.
double golden_section(const std::function<double(double)>& rss, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = rss(x1), f2 = rss(x2);
  for (int it = 0; it < 200 && std::abs(b - a) > 1e-13 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = rss(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = rss(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

// Profiles the exponent over the candidate grid, then refines between the
// neighbours of the best candidate.
double profile_exponent(const std::vector<double>& candidates, const std::function<double(double)>& rss) {
  std::size_t best = candidates.size();
  double best_rss = kInf;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const double r = rss(candidates[k]);
    if (r < best_rss) {
      best_rss = r;
      best = k;
    }
  }
  if (best == candidates.size()) throw NoConvergence("exponent profiling found no finite residual sum of squares");
  const double b = candidates[best];
  auto same_sign = [&](std::size_t k) { return (candidates[k] > 0.0) == (b > 0.0); };
  const double lo = (best > 0 && same_sign(best - 1)) ? candidates[best - 1] : b;
  const double hi = (best + 1 < candidates.size() && same_sign(best + 1)) ? candidates[best + 1] : b;
  if (lo == hi) return b;
  const double refined = golden_section(rss, lo, hi);
  return rss(refined) <= best_rss ? refined : b;
}

std::vector<double> log_spaced(double from, double to, std::size_t count) {
  std::vector<double> v(count);
  const double l0 = std::log(from), l1 = std::log(to);
  for (std::size_t k = 0; k < count; ++k) {
    v[k] = std::exp(l0 + (l1 - l0) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  return v;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::exponential_decay: return "expdecay";
    case Family::quadratic: return "quadratic";
    case Family::reciprocal: return "reciprocal";
    case Family::power_law: return "powerlaw";
    case Family::linear: return "linear";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::size_t coefficient_count(Family f) {
  switch (f) {
    case Family::reciprocal:
    case Family::linear: return 2;
    default: return 3;
  }
}

RelationModel RelationModel::make(Family family, std::vector<double> coefficients) {
  if (coefficients.size() != coefficient_count(family)) {
    std::ostringstream msg;
    msg << family_name(family) << " model takes " << coefficient_count(family) << " coefficients, got "
        << coefficients.size();
    throw InputError(msg.str());
  }
  RelationModel m;
  m.family = family;
  m.coefficients = std::move(coefficients);
  m.alpha_min = -kInf;
  m.alpha_max = kInf;
  return m;
}

double RelationModel::predict(double alpha) const {
  const auto& k = coefficients;
  switch (family) {
    case Family::exponential_decay: return k[0] * std::exp(k[1] * alpha) + k[2];
    case Family::quadratic: return (k[0] * alpha + k[1]) * alpha + k[2];
    case Family::reciprocal: require_positive_alpha(alpha, family); return k[0] / alpha + k[1];
    case Family::power_law: require_positive_alpha(alpha, family); return k[0] * std::pow(alpha, k[1]) + k[2];
    case Family::linear: return k[0] * alpha + k[1];
  }
  return 0.0;
}

double RelationModel::derivative(double alpha) const {
  const auto& k = coefficients;
  switch (family) {
    case Family::exponential_decay: return k[0] * k[1] * std::exp(k[1] * alpha);
    case Family::quadratic: return 2.0 * k[0] * alpha + k[1];
    case Family::reciprocal: require_positive_alpha(alpha, family); return -k[0] / (alpha * alpha);
    case Family::power_law:
      require_positive_alpha(alpha, family);
      return k[0] * k[1] * std::pow(alpha, k[1] - 1.0);
    case Family::linear: return k[0];
  }
  return 0.0;
}

bool RelationModel::in_domain(double alpha) const { return alpha >= alpha_min && alpha <= alpha_max; }

double residual_sum_of_squares(const RelationModel& model, const RidgePairs& pairs) {
  double rss = 0.0;
  for (const auto& p : pairs.pairs) {
    const double r = p.beta - model.predict(p.alpha);
    rss += r * r;
  }
  return rss;
}

RelationModel fit_relation(const RidgePairs& pairs, Family family) {
  const std::size_t ncoef = coefficient_count(family);
  const std::size_t m = pairs.pairs.size();
  if (m < std::max<std::size_t>(3, ncoef)) {
    std::ostringstream msg;
    msg << family_name(family) << " fit needs at least " << std::max<std::size_t>(3, ncoef) << " pairs, got " << m;
    throw InputError(msg.str());
  }

  // Sorting makes the fit independent of the input order.
  std::vector<RidgePoint> pts = pairs.pairs;
  std::sort(pts.begin(), pts.end(), [](const RidgePoint& a, const RidgePoint& b) {
    return a.alpha < b.alpha || (a.alpha == b.alpha && a.beta < b.beta);
  });
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(pts[i].alpha) || !std::isfinite(pts[i].beta)) throw InputError("ridge pairs must be finite");
    if (i > 0 && pts[i].alpha == pts[i - 1].alpha) {
      std::ostringstream msg;
      msg << "ridge pairs repeat alpha=" << pts[i].alpha;
      throw InputError(msg.str());
    }
  }
  if ((family == Family::reciprocal || family == Family::power_law) && !(pts.front().alpha > 0.0)) {
    require_positive_alpha(pts.front().alpha, family);
  }

  std::vector<double> x(m);
  Eigen::VectorXd y(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = pts[i].alpha;
    y(static_cast<Eigen::Index>(i)) = pts[i].beta;
  }

  RelationModel model;
  model.family = family;
  model.points = m;
  model.alpha_min = pts.front().alpha;
  model.alpha_max = pts.back().alpha;

  auto solve_basis = [&](std::initializer_list<std::function<double(double)>> basis) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(basis.size()));
    Eigen::Index col = 0;
    for (const auto& phi : basis) {
      for (std::size_t i = 0; i < m; ++i) X(static_cast<Eigen::Index>(i), col) = phi(x[i]);
      ++col;
    }
    const LinearSolve s = least_squares(X, y);
    if (!s.ok) {
      std::ostringstream msg;
      msg << family_name(family) << " design matrix is rank deficient";
      throw RankDeficient(msg.str());
    }
    return std::vector<double>(s.coef.data(), s.coef.data() + s.coef.size());
  };

  switch (family) {
    case Family::linear:
      model.coefficients = solve_basis({[](double a) { return a; }, [](double) { return 1.0; }});
      break;
    case Family::quadratic:
      model.coefficients =
          solve_basis({[](double a) { return a * a; }, [](double a) { return a; }, [](double) { return 1.0; }});
      break;
    case Family::reciprocal:
      model.coefficients = solve_basis({[](double a) { return 1.0 / a; }, [](double) { return 1.0; }});
      break;
    case Family::exponential_decay: {
      const double x0 = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(m);
      std::vector<double> candidates = log_spaced(20.0, 1e-6, 400);
      for (double& b : candidates) b = -b;
      auto rss = [&](double b) { return exponent_trial(x, y, x0, b).rss; };
      const double b = profile_exponent(candidates, rss);
      const ExponentTrial t = exponent_trial(x, y, x0, b);
      if (!std::isfinite(t.rss)) throw RankDeficient("expdecay design matrix is rank deficient");
      model.coefficients = {t.scale * std::exp(-b * x0), b, t.offset};
      break;
    }
    case Family::power_law: {
      std::vector<double> lx(m);
      std::transform(x.begin(), x.end(), lx.begin(), [](double a) { return std::log(a); });
      const double l0 = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(m);
      std::vector<double> candidates = log_spaced(10.0, 1e-4, 200);
      for (double& b : candidates) b = -b;
      const std::vector<double> positive = log_spaced(1e-4, 10.0, 200);
      candidates.insert(candidates.end(), positive.begin(), positive.end());
      auto rss = [&](double b) { return exponent_trial(lx, y, l0, b).rss; };
      const double b = profile_exponent(candidates, rss);
      const ExponentTrial t = exponent_trial(lx, y, l0, b);
      if (!std::isfinite(t.rss)) throw RankDeficient("powerlaw design matrix is rank deficient");
      model.coefficients = {t.scale * std::exp(-b * l0), b, t.offset};
      break;
    }
  }

  RidgePairs sorted{pts, pairs.tolerance_used};
  model.rss = residual_sum_of_squares(model, sorted);
  const double mean = y.mean();
  const double tss = (y.array() - mean).square().sum();
  model.r2 = tss > 0.0 ? 1.0 - model.rss / tss : (model.rss == 0.0 ? 1.0 : 0.0);
  model.rmse = std::sqrt(model.rss / static_cast<double>(m));
  return model;
}

}  // namespace mbuw
