#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mbuw/errors.hpp"
#include "mbuw/gof_metrics.hpp"
#include "mbuw/mle.hpp"

using namespace mbuw;

namespace {

// Textbook statistics from sorted PIT values, used as a second implementation.
struct Plain {
  double ks, ad, cvm;
};

Plain plain(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  Plain out{0, 0, 1 / (12 * n)};
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    out.ks = std::max({out.ks, k / n - u[i], u[i] - (k - 1) / n});
    s += (2 * k - 1) * (std::log(u[i]) + std::log(1 - u[u.size() - 1 - i]));
    out.cvm += std::pow(u[i] - (2 * k - 1) / (2 * n), 2);
  }
  out.ad = -n - s / n;
  return out;
}

}  // namespace

TEST_CASE("perfectly calibrated sample") {
  const Params p(1.4, 2.1);
  std::vector<double> y;
  for (int i = 1; i <= 100; ++i) y.push_back(quantile((i - 0.5) / 100, p));
  const GofReport g = gof(SampleData(y), p);
  CHECK(g.ks == doctest::Approx(0.005).epsilon(1e-9));
  CHECK(g.cvm == doctest::Approx(1.0 / 1200).epsilon(1e-9));
  CHECK_FALSE(g.reject_at_05);
  CHECK(g.ks_pvalue == doctest::Approx(1.0));
}

TEST_CASE("statistics agree with a direct computation") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> pit(37);
    for (double& v : pit) v = std::pow(u(rng), 1.3);
    const GofReport g = gof_from_pit(pit);
    const Plain want = plain(pit);
    CHECK(g.ks == doctest::Approx(want.ks).epsilon(1e-14));
    CHECK(g.ad == doctest::Approx(want.ad).epsilon(1e-12));
    CHECK(g.cvm == doctest::Approx(want.cvm).epsilon(1e-12));
  }
}

TEST_CASE("statistics depend only on the sorted values") {
  std::vector<double> pit{0.9, 0.1, 0.35, 0.62, 0.2, 0.77};
  const GofReport a = gof_from_pit(pit);
  std::reverse(pit.begin(), pit.end());
  const GofReport b = gof_from_pit(pit);
  CHECK(a.ks == b.ks);
  CHECK(a.ad == b.ad);
  CHECK(a.cvm == b.cvm);
}

TEST_CASE("boundary PIT values are clamped and counted") {
  const GofReport g = gof_from_pit(std::vector<double>{0.0, 0.4, 1.0});
  CHECK(g.clamped == 2);
  CHECK(std::isfinite(g.ad));
  CHECK_THROWS_AS(gof_from_pit(std::vector<double>{0.5, 1.5}), DomainError);
  CHECK_THROWS_AS(gof_from_pit(std::vector<double>{}), InputError);
}

TEST_CASE("KS p-values of the reference fits") {
  CHECK(std::abs(ks_pvalue(0.1395, 38) - 0.412) <= 0.03);
  CHECK(std::abs(ks_pvalue(0.1364, 38) - 0.4401) <= 0.03);
}

TEST_CASE("Kolmogorov distribution") {
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(1.0) == doctest::Approx(0.26999967).epsilon(1e-6));
  CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(kolmogorov_survival(0.5) == doctest::Approx(0.96394524).epsilon(1e-6));
  CHECK(kolmogorov_survival(10.0) < 1e-80);
  // Both series agree where they meet.
  CHECK(kolmogorov_survival(1.18 - 1e-12) == doctest::Approx(kolmogorov_survival(1.18)).epsilon(1e-10));
  double prev = 1.0;
  for (int i = 1; i <= 300; ++i) {
    const double p = ks_pvalue(i / 300.0, 38);
    CHECK(p <= prev);
    prev = p;
  }
}

TEST_CASE("information criteria at the reference values") {
  const CriteriaReport c = criteria(-22.0671, 2, 38);
  CHECK(std::abs(c.aic - (-40.1342)) < 1e-3);
  CHECK(std::abs(c.caic - (-39.7913)) < 1e-3);
  CHECK(std::abs(c.bic - (-36.8593)) < 1e-3);
  CHECK(std::abs(c.hqic - (-1.0255)) < 1e-4);
  CHECK(std::abs(c.hqic - (-1.0229)) < 0.005);
  CHECK(c.aic == 2 * 2 + 2 * c.nll);
  CHECK(c.caic == c.aic + 2.0 * 2 * 3 / (38 - 2 - 1));
  CHECK_THROWS_AS(criteria(-1.0, 2, 3), DomainError);
}

TEST_CASE("KS level on samples from the fitted model") {
  const Params truth(2.0, 1.5);
  int rejected = 0;
  const int reps = 500;
  for (int r = 0; r < reps; ++r) {
    const SampleData d = sample(200, truth, 1000 + r);
    const MleFit fit = fit_mle(d, truth);
    if (gof(d, fit.estimate).reject_at_05) ++rejected;
  }
  CHECK(rejected <= 0.07 * reps);
}
