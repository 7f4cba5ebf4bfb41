#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mbuw/errors.hpp"
#include "mbuw/likelihood.hpp"
#include "mbuw/mle.hpp"
#include "support/finite_diff.hpp"

using namespace mbuw;

namespace {

std::array<double, 9> analytic(double y, const Params& p) {
  const DerivativeBundle d = derivatives(y, p);
  return {d.d_alpha, d.d_beta, d.d2_aa, d.d2_ab, d.d2_bb, d.d3_aaa, d.d3_aab, d.d3_abb, d.d3_bbb};
}

// Relative error, measured against at least 1e-2 so that partials which
// vanish as alpha -> 1 are not judged on rounding noise alone.
bool close(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::max(std::abs(want), 1e-2);
}

}  // namespace

TEST_CASE("nll of a single observation") {
  CHECK(nll(SampleData({0.5}), Params(1, 1)) == doctest::Approx(-std::log(1.5)).epsilon(1e-14));
}

TEST_CASE("nll is minus the summed log density and ignores order") {
  const Params p(1.7, 0.8);
  SampleData d = sample(200, p, 3);
  double direct = 0.0;
  for (double y : d.values()) direct -= std::log(pdf(y, p));
  CHECK(std::abs(nll(d, p) - direct) < 1e-12 * std::abs(direct) + 1e-12);

  std::vector<double> shuffled(d.values().begin(), d.values().end());
  std::mt19937 rng(5);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CHECK(std::abs(nll(SampleData(shuffled), p) - nll(d, p)) < 1e-12);
}

TEST_CASE("analytic derivatives match finite differences of ln pdf") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> ys(20);
  for (double& y : ys) y = 0.02 + 0.96 * unif(rng);
  int compared = 0;
  for (double a : {0.5, 1.125, 1.75, 2.375, 3.0}) {
    for (double b : {0.5, 1.125, 1.75, 2.375, 3.0}) {
      const Params p(a, b);
      for (double y : ys) {
        const auto want = fd::log_pdf_partials(y, a, b);
        const auto got = analytic(y, p);
        for (int k = 0; k < 9; ++k) {
          INFO("a=" << a << " b=" << b << " y=" << y << " component " << k);
          CHECK(close(got[k], want[k], 1e-5));
          ++compared;
        }
      }
    }
  }
  CHECK(compared == 25 * 20 * 9);
}

TEST_CASE("first derivative at (y=0.5, alpha=1, beta=1) against a plain difference") {
  const Params p(1, 1);
  const double h = 1e-5;
  const double fd1 = (log_pdf(0.5, Params(1 + h, 1)) - log_pdf(0.5, Params(1 - h, 1))) / (2 * h);
  CHECK(close(derivatives(0.5, p).d_alpha, fd1, 1e-6));
}

TEST_CASE("mixed third derivative from a nested difference of the beta score") {
  const double y = 0.3, a = 2.0, b = 1.5, h = 1e-3;
  auto score_b = [&](double aa) { return derivatives(y, Params(aa, b)).d_beta; };
  const double nested = (score_b(a + h) - 2 * score_b(a) + score_b(a - h)) / (h * h);
  CHECK(close(derivatives(y, Params(a, b)).d3_aab, nested, 1e-5));
}

TEST_CASE("expanded closed forms of the score and Hessian diagonal") {
  // Written out term by term in alpha, beta and y^c; the alpha score carries
  // -beta/alpha (the density's ln c term differentiates to -beta/alpha).
  for (double y : {0.07, 0.4, 0.81}) {
    for (const Params& p : {Params(2.105, 1.5624), Params(0.483, 1.0563), Params(1.3, 2.2)}) {
      const double a = p.alpha(), b = p.beta(), c = std::pow(a, -b), L = std::log(y), la = std::log(a);
      const double t = std::pow(y, c), t2 = std::pow(y, 2 * c);
      const double score_a = -b / a + t * b * L * std::pow(a, -b - 1) / (1 - t) - 2 * b * std::pow(a, -b - 1) * L;
      const double score_b = -la + t * c * L * la / (1 - t) - 2 * c * la * L;
      const double h_aa = b / (a * a) - t * b * b * L * L * std::pow(a, -2 * b - 2) / (1 - t) -
                          t * b * (b + 1) * L * std::pow(a, -b - 2) / (1 - t) -
                          t2 * b * b * L * L * std::pow(a, -2 * b - 2) / ((1 - t) * (1 - t)) +
                          2 * b * (b + 1) * std::pow(a, -b - 2) * L;
      const double h_bb = -t * la * la * L * L * c * c / (1 - t) - t * la * la * L * c / (1 - t) -
                          t2 * la * la * L * L * c * c / ((1 - t) * (1 - t)) + 2 * c * L * la * la;
      const DerivativeBundle d = derivatives(y, p);
      CHECK(close(d.d_alpha, score_a, 1e-12));
      CHECK(close(d.d_beta, score_b, 1e-12));
      CHECK(close(d.d2_aa, h_aa, 1e-12));
      CHECK(close(d.d2_bb, h_bb, 1e-12));
    }
  }
}

TEST_CASE("derivative bundle accessors are symmetric") {
  const DerivativeBundle d = derivatives(0.42, Params(1.4, 0.9));
  CHECK(d.second(0, 1) == d.second(1, 0));
  CHECK(d.third(0, 0, 1) == d.third(0, 1, 0));
  CHECK(d.third(0, 0, 1) == d.third(1, 0, 0));
  CHECK(d.third(1, 1, 0) == d.third(0, 1, 1));
  CHECK(d.third(1, 0, 1) == d.d3_abb);
  CHECK(d.first(0) == d.d_alpha);
  CHECK(d.third(1, 1, 1) == d.d3_bbb);
}

TEST_CASE("derivatives stay finite up to the ends of the support") {
  for (double y : {1e-12, 1e-9, 1e-3, 0.5, 1 - 1e-9, 1 - 1e-12}) {
    for (const Params& p : {Params(0.5, 3.0), Params(3.0, 3.0), Params(1.0, 0.5), Params(2.0, 1.5)}) {
      const DerivativeBundle d = derivatives(y, p);
      for (double v : {d.d_alpha, d.d_beta, d.d2_aa, d.d2_ab, d.d2_bb, d.d3_aaa, d.d3_aab, d.d3_abb, d.d3_bbb}) {
        CHECK(std::isfinite(v));
      }
    }
  }
}

TEST_CASE("sum_derivatives is additive") {
  const Params p(1.9, 1.2);
  const DerivativeBundle one = sum_derivatives(SampleData({0.37}), p);
  const DerivativeBundle ref = derivatives(0.37, p);
  CHECK(one.d_alpha == ref.d_alpha);
  CHECK(one.d3_bbb == ref.d3_bbb);

  const DerivativeBundle base = sum_derivatives(SampleData({0.2, 0.6}), p);
  const DerivativeBundle twice = sum_derivatives(SampleData({0.2, 0.6, 0.2, 0.6}), p);
  CHECK(twice.d_alpha == doctest::Approx(2 * base.d_alpha).epsilon(1e-14));
  CHECK(twice.d2_ab == doctest::Approx(2 * base.d2_ab).epsilon(1e-14));
  CHECK(twice.d3_aab == doctest::Approx(2 * base.d3_aab).epsilon(1e-14));
}

TEST_CASE("score vanishes at the fitted optimum") {
  const SampleData d = sample(500, Params(2, 1.5), 2024);
  const MleFit fit = fit_mle(d);
  const DerivativeBundle g = sum_derivatives(d, fit.estimate);
  CHECK(std::abs(g.d_alpha) < 1e-2);
  CHECK(std::abs(g.d_beta) < 1e-2);
}
