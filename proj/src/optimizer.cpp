#include "mbuw/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mbuw/errors.hpp"

namespace mbuw {

void SimplexConfig::validate() const {
  if (init.empty()) throw InputError("simplex start point is empty");
  if (!init_step.empty() && init_step.size() != init.size()) {
    throw InputError("simplex step size count does not match the dimension");
  }
  for (double s : init_step) {
    if (!(s != 0.0) || !std::isfinite(s)) throw InputError("simplex steps must be finite and nonzero");
  }
  if (!(reflect > 0.0 && expand > reflect && contract > 0.0 && contract < 1.0 && shrink > 0.0 && shrink < 1.0)) {
    throw InputError("simplex coefficients need reflect > 0, expand > reflect, 0 < contract, shrink < 1");
  }
  if (!(tol_f >= 0.0) || !(tol_x >= 0.0)) throw InputError("simplex tolerances must be nonnegative");
  if (max_iter < 1) throw InputError("max_iter must be at least 1");
  if (restarts < 0) throw InputError("restarts must be nonnegative");
}

namespace {

using Point = std::vector<double>;

struct Vertex {
  Point x;
  double f;
};

double safe_eval(const Objective& f, const Point& x) {
  const double v = f(x);
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

struct RunOutcome {
  int iterations = 0;
  bool converged = false;
};

class Simplex {
 public:
  Simplex(const Objective& f, const SimplexConfig& cfg, const Point& start, bool require_finite)
      : f_(f), cfg_(cfg), dim_(start.size()) {
    vertices_.reserve(dim_ + 1);
    vertices_.push_back({start, f_(start)});
    for (std::size_t i = 0; i < dim_; ++i) {
      Point x = start;
      x[i] += cfg_.init_step.empty() ? 0.1 : cfg_.init_step[i];
      vertices_.push_back({x, f_(x)});
    }
    for (auto& v : vertices_) {
      if (!std::isfinite(v.f)) {
        if (require_finite) {
          std::ostringstream msg;
          msg << "objective is not finite at a starting simplex vertex (value " << v.f << ")";
          throw NonFiniteObjective(msg.str());
        }
        v.f = std::numeric_limits<double>::infinity();
      }
    }
    order();
  }

  RunOutcome run(std::vector<double>& history) {
    RunOutcome out;
    const std::size_t n = dim_;
    Point centroid(n), trial(n);
    for (int it = 0; it < cfg_.max_iter; ++it) {
      if (converged()) {
        out.converged = true;
        return out;
      }
      ++out.iterations;
      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < n; ++i) centroid[i] += vertices_[v].x[i];
      }
      for (double& ci : centroid) ci /= static_cast<double>(n);

      Vertex& worst = vertices_[n];
      const double f_best = vertices_[0].f;
      const double f_second_worst = vertices_[n - 1].f;

      auto along = [&](double coef, const Point& from) {
        Point p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + coef * (from[i] - centroid[i]);
        return p;
      };

      Point xr = along(-cfg_.reflect, worst.x);
      const double fr = safe_eval(f_, xr);
      if (fr < f_best) {
        Point xe = along(-cfg_.reflect * cfg_.expand, worst.x);
        const double fe = safe_eval(f_, xe);
        if (fe < fr) {
          worst = {std::move(xe), fe};
        } else {
          worst = {std::move(xr), fr};
        }
      } else if (fr < f_second_worst) {
        worst = {std::move(xr), fr};
      } else {
        bool shrink_needed = false;
        if (fr < worst.f) {
          Point xc = along(-cfg_.reflect * cfg_.contract, worst.x);
          const double fc = safe_eval(f_, xc);
          if (fc <= fr) {
            worst = {std::move(xc), fc};
          } else {
            shrink_needed = true;
          }
        } else {
          Point xcc = along(cfg_.contract, worst.x);
          const double fcc = safe_eval(f_, xcc);
          if (fcc < worst.f) {
            worst = {std::move(xcc), fcc};
          } else {
            shrink_needed = true;
          }
        }
        if (shrink_needed) {
          const Point& best = vertices_[0].x;
          for (std::size_t v = 1; v <= n; ++v) {
            for (std::size_t i = 0; i < n; ++i) {
              vertices_[v].x[i] = best[i] + cfg_.shrink * (vertices_[v].x[i] - best[i]);
            }
            vertices_[v].f = safe_eval(f_, vertices_[v].x);
          }
        }
      }
      order();
      history.push_back(vertices_[0].f);
    }
    out.converged = converged();
    return out;
  }

  const Vertex& best() const { return vertices_[0]; }

 private:
  void order() {
    // Stable: ties keep their current (index) order.
    std::stable_sort(vertices_.begin(), vertices_.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  }

  bool converged() const {
    const Vertex& best = vertices_[0];
    const double spread = vertices_.back().f - best.f;
    if (!(spread <= cfg_.tol_f)) return false;
    double diameter = 0.0;
    for (std::size_t v = 1; v < vertices_.size(); ++v) {
      for (std::size_t i = 0; i < dim_; ++i) {
        diameter = std::max(diameter, std::abs(vertices_[v].x[i] - best.x[i]));
      }
    }
    return diameter <= cfg_.tol_x;
  }

  const Objective& f_;
  const SimplexConfig& cfg_;
  std::size_t dim_;
  std::vector<Vertex> vertices_;
};

}  // namespace

MinimizeResult minimize(const Objective& f, const SimplexConfig& cfg) {
  cfg.validate();
  MinimizeResult result;
  Simplex first(f, cfg, cfg.init, true);
  RunOutcome outcome = first.run(result.best_history);
  result.iterations = outcome.iterations;
  result.converged = outcome.converged;
  result.argmin = first.best().x;
  result.value = first.best().f;

  for (int r = 0; r < cfg.restarts; ++r) {
    Simplex again(f, cfg, result.argmin, false);
    outcome = again.run(result.best_history);
    ++result.restarts_run;
    result.iterations += outcome.iterations;
    result.converged = outcome.converged;
    const double improvement = result.value - again.best().f;
    if (again.best().f <= result.value) {
      result.argmin = again.best().x;
      result.value = again.best().f;
    }
    if (outcome.converged && !(improvement > cfg.tol_f)) break;
  }
  return result;
}

}  // namespace mbuw
