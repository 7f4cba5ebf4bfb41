#include "mbuw/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace mbuw::cli {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Tick positions at 1, 2 or 5 times a power of ten.
std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  std::vector<double> ticks;
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

class Plot {
 public:
  static constexpr double kWidth = 640, kHeight = 480;
  static constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

  Plot(double x0, double x1, double y0, double y1) : x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
    if (!(x1_ > x0_)) x1_ = x0_ + 1.0;
    if (!(y1_ > y0_)) y1_ = y0_ + 1.0;
    body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
          << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
          << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  double px(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0_) / (y1_ - y0_) * (kHeight - kTop - kBottom); }

  void axes(const std::string& title, const std::string& xlabel, const std::string& ylabel) {
    const double left = kLeft, right = kWidth - kRight, top = kTop, bottom = kHeight - kBottom;
    body_ << "<g stroke=\"black\" fill=\"none\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\""
          << right - left << "\" height=\"" << bottom - top << "\"/></g>\n";
    body_ << "<g font-size=\"11\">\n";
    for (double t : nice_ticks(x0_, x1_)) {
      body_ << "<line x1=\"" << num(px(t)) << "\" y1=\"" << bottom << "\" x2=\"" << num(px(t)) << "\" y2=\""
            << bottom + 5 << "\" stroke=\"black\"/><text x=\"" << num(px(t)) << "\" y=\"" << bottom + 18
            << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
    }
    for (double t : nice_ticks(y0_, y1_)) {
      body_ << "<line x1=\"" << left - 5 << "\" y1=\"" << num(py(t)) << "\" x2=\"" << left << "\" y2=\""
            << num(py(t)) << "\" stroke=\"black\"/><text x=\"" << left - 8 << "\" y=\"" << num(py(t) + 4)
            << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
    }
    body_ << "</g>\n";
    body_ << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
          << "</text>\n";
    body_ << "<text x=\"" << (left + right) / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
          << xlabel << "</text>\n";
    body_ << "<text x=\"18\" y=\"" << (top + bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
          << (top + bottom) / 2 << ")\">" << ylabel << "</text>\n";
  }

  void polyline(const std::vector<std::array<double, 2>>& pts, const std::string& stroke, const std::string& extra = "") {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"" << extra << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      body_ << (i ? " " : "") << num(px(pts[i][0])) << "," << num(py(pts[i][1]));
    }
    body_ << "\"/>\n";
  }

  void points(const std::vector<std::array<double, 2>>& pts, const std::string& fill) {
    body_ << "<g fill=\"" << fill << "\">\n";
    for (const auto& p : pts) body_ << "<circle cx=\"" << num(px(p[0])) << "\" cy=\"" << num(py(p[1])) << "\" r=\"2.5\"/>\n";
    body_ << "</g>\n";
  }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = kTop + 16;
    for (const auto& [label, color] : entries) {
      body_ << "<line x1=\"" << kLeft + 12 << "\" y1=\"" << y - 4 << "\" x2=\"" << kLeft + 36 << "\" y2=\"" << y - 4
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\"" << kLeft + 42 << "\" y=\"" << y
            << "\">" << label << "</text>\n";
      y += 16;
    }
  }

  std::ostringstream& raw() { return body_; }

  std::string finish() {
    body_ << "</svg>\n";
    return body_.str();
  }

 private:
  double x0_, x1_, y0_, y1_;
  std::ostringstream body_;
};

std::vector<double> sorted_values(const SampleData& data) {
  std::vector<double> v(data.values().begin(), data.values().end());
  std::sort(v.begin(), v.end());
  return v;
}

const std::array<const char*, 5> kPalette{"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"};

// Piecewise-linear blue-to-yellow ramp, s in [0, 1].
std::string ramp(double s) {
  static constexpr std::array<std::array<double, 3>, 5> stops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140},
                                                                {94, 201, 98}, {253, 231, 37}}};
  s = std::clamp(s, 0.0, 1.0) * (stops.size() - 1);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(s), stops.size() - 2);
  const double f = s - static_cast<double>(k);
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(stops[k][0] + f * (stops[k + 1][0] - stops[k][0]))),
                static_cast<int>(std::lround(stops[k][1] + f * (stops[k + 1][1] - stops[k][1]))),
                static_cast<int>(std::lround(stops[k][2] + f * (stops[k + 1][2] - stops[k][2]))));
  return buf;
}

}  // namespace

std::string cdf_svg(const SampleData& data, const Params& p) {
  const std::vector<double> y = sorted_values(data);
  const double n = static_cast<double>(y.size());
  Plot plot(0.0, 1.0, 0.0, 1.0);
  plot.axes("Empirical and fitted CDF", "y", "F(y)");

  std::vector<std::array<double, 2>> step{{0.0, 0.0}};
  for (std::size_t i = 0; i < y.size(); ++i) {
    step.push_back({y[i], i / n});
    step.push_back({y[i], (i + 1) / n});
  }
  step.push_back({1.0, 1.0});
  plot.polyline(step, "black");

  std::vector<std::array<double, 2>> curve;
  for (int k = 0; k <= 400; ++k) {
    const double x = k / 400.0;
    curve.push_back({x, cdf(x, p)});
  }
  plot.polyline(curve, kPalette[0]);
  plot.legend({{"empirical", "black"}, {"fitted alpha=" + num(p.alpha()) + " beta=" + num(p.beta()), kPalette[0]}});
  return plot.finish();
}

std::string qq_svg(const SampleData& data, const Params& p) {
  const std::vector<double> y = sorted_values(data);
  const double n = static_cast<double>(y.size());
  std::vector<std::array<double, 2>> pts;
  double lo = y.front(), hi = y.back();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double q = quantile((i + 0.5) / n, p);
    pts.push_back({q, y[i]});
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  const double pad = 0.03 * (hi - lo);
  Plot plot(lo - pad, hi + pad, lo - pad, hi + pad);
  plot.axes("QQ plot", "theoretical quantile", "sample quantile");
  plot.polyline({{lo - pad, lo - pad}, {hi + pad, hi + pad}}, "#888888", " stroke-dasharray=\"4 3\"");
  plot.points(pts, kPalette[1]);
  return plot.finish();
}

std::string heatmap_svg(const SurfaceGrid& grid, std::size_t max_cells) {
  const std::size_t na = grid.alpha_axis.size(), nb = grid.beta_axis.size();
  const std::size_t block_a = std::max<std::size_t>(1, (na + max_cells - 1) / std::max<std::size_t>(1, max_cells));
  const std::size_t block_b = std::max<std::size_t>(1, (nb + max_cells - 1) / std::max<std::size_t>(1, max_cells));
  const std::size_t ca = (na + block_a - 1) / block_a, cb = (nb + block_b - 1) / block_b;

  std::vector<double> cells(ca * cb, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      double& c = cells[(i / block_a) * cb + j / block_b];
      c = std::min(c, grid.at(i, j));
    }
  }
  double top = grid.min_value;
  for (double v : cells) {
    if (std::isfinite(v)) top = std::max(top, v);
  }
  const double span = std::log1p(top - grid.min_value);

  const double a0 = grid.alpha_axis.front(), a1 = grid.alpha_axis.back();
  const double b0 = grid.beta_axis.front(), b1 = grid.beta_axis.back();
  Plot plot(a0, a1, b0, b1);
  std::ostringstream& out = plot.raw();
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t ci = 0; ci < ca; ++ci) {
    const double xa = grid.alpha_axis[ci * block_a];
    const double xb = grid.alpha_axis[std::min(na - 1, (ci + 1) * block_a)];
    for (std::size_t cj = 0; cj < cb; ++cj) {
      const double ya = grid.beta_axis[cj * block_b];
      const double yb = grid.beta_axis[std::min(nb - 1, (cj + 1) * block_b)];
      const double v = cells[ci * cb + cj];
      const std::string fill = std::isfinite(v) ? ramp(span > 0 ? std::log1p(v - grid.min_value) / span : 0.0) : "#cccccc";
      const double x = plot.px(xa), w = std::max(plot.px(xb) - x, 0.5);
      const double y = plot.py(yb), h = std::max(plot.py(ya) - y, 0.5);
      out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
          << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  out << "</g>\n";
  const double ma = grid.alpha_axis[grid.min_index.first], mb = grid.beta_axis[grid.min_index.second];
  out << "<circle id=\"grid-min\" data-alpha=\"" << num(ma) << "\" data-beta=\"" << num(mb) << "\" data-nll=\""
      << num(grid.min_value) << "\" cx=\"" << num(plot.px(ma)) << "\" cy=\"" << num(plot.py(mb))
      << "\" r=\"5\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
  plot.axes("Negative log-likelihood surface", "alpha", "beta");
  return plot.finish();
}

std::string ridge_fit_svg(const RidgePairs& pairs, const std::vector<RelationModel>& models) {
  double a0 = std::numeric_limits<double>::infinity(), a1 = -a0, b0 = a0, b1 = -a0;
  std::vector<std::array<double, 2>> pts;
  for (const RidgePoint& r : pairs.pairs) {
    pts.push_back({r.alpha, r.beta});
    a0 = std::min(a0, r.alpha);
    a1 = std::max(a1, r.alpha);
    b0 = std::min(b0, r.beta);
    b1 = std::max(b1, r.beta);
  }
  if (pts.empty()) a0 = b0 = 0.0, a1 = b1 = 1.0;
  const double pb = 0.05 * (b1 - b0 > 0 ? b1 - b0 : 1.0);
  Plot plot(a0, a1, b0 - pb, b1 + pb);
  plot.axes("Ridge pairs and fitted relations", "alpha", "beta");
  plot.points(pts, "black");
  std::vector<std::pair<std::string, std::string>> legend{{"ridge pairs", "black"}};
  for (std::size_t m = 0; m < models.size(); ++m) {
    std::vector<std::array<double, 2>> curve;
    for (int k = 0; k <= 200; ++k) {
      const double a = a0 + (a1 - a0) * k / 200.0;
      const double b = models[m].predict(a);
      if (std::isfinite(b)) curve.push_back({a, std::clamp(b, b0 - 2 * pb, b1 + 2 * pb)});
    }
    const char* color = kPalette[m % kPalette.size()];
    plot.polyline(curve, color);
    legend.emplace_back(std::string(family_name(models[m].family)), color);
  }
  plot.legend(legend);
  return plot.finish();
}

}  // namespace mbuw::cli
