#include <doctest.h>

#include <cmath>
#include <random>

#include "mbuw/bias_correction.hpp"
#include "support/normal_model.hpp"
#include "mbuw/errors.hpp"
#include "mbuw/likelihood.hpp"
#include "mbuw/mle.hpp"

using namespace mbuw;

namespace {

// Arbitrary cumulants around a negative definite second-order block.
CumulantSet random_cumulants(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CumulantSet k;
  k.k11 = -(1.0 + std::abs(u(rng)));
  k.k22 = -(1.0 + std::abs(u(rng)));
  k.k12 = 0.5 * u(rng);
  k.k111 = u(rng), k.k112 = u(rng), k.k122 = u(rng), k.k222 = u(rng);
  k.dk11_da = u(rng), k.dk11_db = u(rng), k.dk12_da = u(rng), k.dk12_db = u(rng), k.dk22_da = u(rng),
  k.dk22_db = u(rng);
  return k;
}

// sum_{i,j,l} kappa^{si} kappa^{jl} (k_ij^(l) - k_ijl / 2) / n, written as
// explicit loops over a separately inverted matrix.
Eigen::Vector2d triple_sum(const CumulantSet& k, std::size_t n) {
  const double m[2][2] = {{-k.k11, -k.k12}, {-k.k12, -k.k22}};
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double inv[2][2] = {{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}};
  Eigen::Vector2d out = Eigen::Vector2d::Zero();
  for (int s = 0; s < 2; ++s) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int l = 0; l < 2; ++l) {
          out(s) += inv[s][i] * inv[j][l] * (k.dk(i, j, l) - 0.5 * k.k3(i, j, l));
        }
      }
    }
  }
  return out / static_cast<double>(n);
}

}  // namespace

TEST_CASE("normal model bias is recovered") {
  for (double v : {0.5, 1.0, 4.0}) {
    const Eigen::Vector2d b = bias_vector(normal_cumulants(v), 25);
    CHECK(std::abs(b(0)) < 1e-15);
    CHECK(b(1) == doctest::Approx(-v / 25).epsilon(1e-14));
  }
}

TEST_CASE("matrix form equals the triple sum") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const CumulantSet k = random_cumulants(rng);
    const Eigen::Vector2d a = bias_vector(k, 40), b = triple_sum(k, 40);
    CHECK(std::abs(a(0) - b(0)) < 1e-13 * (1 + std::abs(b(0))));
    CHECK(std::abs(a(1) - b(1)) < 1e-13 * (1 + std::abs(b(1))));
  }
}

TEST_CASE("n times bias does not depend on n") {
  std::mt19937_64 rng(3);
  for (const CumulantSet& k : {normal_cumulants(2.0), random_cumulants(rng), random_cumulants(rng)}) {
    const Eigen::Vector2d ref = 10.0 * bias_vector(k, 10);
    for (std::size_t n : {100u, 1000u}) {
      const Eigen::Vector2d scaled = static_cast<double>(n) * bias_vector(k, n);
      CHECK(std::abs(scaled(0) - ref(0)) <= 1e-10 * std::abs(ref(0)) + 1e-300);
      CHECK(std::abs(scaled(1) - ref(1)) <= 1e-10 * std::abs(ref(1)) + 1e-300);
    }
  }
}

TEST_CASE("A matrix layout and scaling") {
  std::mt19937_64 rng(8);
  const CumulantSet k = random_cumulants(rng);
  const AMatrix one = a_matrix(k, 1), two = a_matrix(k, 2);
  CHECK((two - 2.0 * one).cwiseAbs().maxCoeff() == 0.0);
  // a_12^(l) = a_21^(l): each 2x2 block is symmetric.
  CHECK(one(0, 1) == one(1, 0));
  CHECK(one(0, 3) == one(1, 2));
  CHECK(one(0, 0) == doctest::Approx(k.dk11_da - 0.5 * k.k111));
  CHECK(one(1, 3) == doctest::Approx(k.dk22_db - 0.5 * k.k222));
}

TEST_CASE("vec stacks columns") {
  Eigen::Matrix2d m;
  m << 1, 2, 3, 4;
  const Eigen::Vector4d v = vec(m);
  CHECK(v(0) == 1);
  CHECK(v(1) == 3);
  CHECK(v(2) == 2);
  CHECK(v(3) == 4);
  const Eigen::Matrix2d back = Eigen::Map<const Eigen::Matrix2d>(v.data());
  CHECK(back == m);
}

TEST_CASE("inverse information times information is the identity for a well-conditioned K") {
  const InformationMatrix info = information_matrix(normal_cumulants(1.7), 12);
  CHECK(info.positive_definite);
  const Eigen::Matrix2d prod = info.K.inverse() * info.K;
  CHECK((prod - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("A entries at (1, 1) against Monte Carlo third cumulants") {
  const Params p(1, 1);
  const CumulantSet k = expected_cumulants(p);
  const AMatrix a = a_matrix(k, 1);
  const std::size_t draws = 1'000'000;
  const SampleData d = sample(draws, p, 123);
  std::array<double, 4> sum{}, sq{};
  for (double y : d.values()) {
    const DerivativeBundle b = derivatives(y, p);
    const double v[4] = {b.d3_aaa, b.d3_aab, b.d3_abb, b.d3_bbb};
    for (int m = 0; m < 4; ++m) {
      sum[m] += v[m];
      sq[m] += v[m] * v[m];
    }
  }
  auto mc = [&](int m, double& se) {
    const double mean = sum[m] / draws;
    se = std::sqrt((sq[m] / draws - mean * mean) / draws);
    return mean;
  };
  // a_ij^(l) recomputed with k_ijl from the Monte Carlo means; the allowed
  // slack is three standard errors of the k_ijl / 2 term.
  const int index[2][2][2] = {{{0, 1}, {1, 2}}, {{1, 2}, {2, 3}}};
  for (int l = 0; l < 2; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double se = 0.0;
        const double kijl = mc(index[i][j][l], se);
        const double want = k.dk(i, j, l) - 0.5 * kijl;
        INFO("i=" << i << " j=" << j << " l=" << l);
        CHECK(std::abs(a(i, 2 * l + j) - want) <= 3 * 0.5 * se + 1e-12);
      }
    }
  }
}

TEST_CASE("bias is undefined for the distribution's own information") {
  for (const Params& p : {Params(2.105, 1.5624), Params(1.8767, 1.5412), Params(1.0, 1.0)}) {
    CHECK_THROWS_AS(bias_vector(p, 50), NumericalError);
  }
}

TEST_CASE("corrected estimates reproduce the reference before/after arithmetic") {
  auto round4 = [](double x) { return std::round(x * 1e4) / 1e4; };
  const Params tbf = apply_bias(Params(2.105, 1.5624), Eigen::Vector2d(-0.000656, 0.0171));
  CHECK(round4(tbf.alpha()) == doctest::Approx(2.1057).epsilon(1e-12));
  CHECK(round4(tbf.beta()) == doctest::Approx(1.5453).epsilon(1e-12));
  const Params unit = apply_bias(Params(1.8767, 1.5412), Eigen::Vector2d(0.000459, 0.0046));
  CHECK(round4(unit.alpha()) == doctest::Approx(1.8762).epsilon(1e-12));
  CHECK(round4(unit.beta()) == doctest::Approx(1.5366).epsilon(1e-12));
  // In the first row the beta entry is consistent but the alpha entry (2.7268
  // with bias -0.707, given as 2.7975) is not mle - bias, so it is left out.
  const Params dwell = apply_bias(Params(2.7268, 1.6461), Eigen::Vector2d(-0.707, 0.1273));
  CHECK(round4(dwell.beta()) == doctest::Approx(1.5188).epsilon(1e-12));
  CHECK(round4(dwell.alpha()) != doctest::Approx(2.7975).epsilon(1e-12));
}

TEST_CASE("zero bias leaves the estimate unchanged; leaving the space is an error") {
  const Params p(1.3, 0.7);
  const Params same = apply_bias(p, Eigen::Vector2d::Zero());
  CHECK(same.alpha() == p.alpha());
  CHECK(same.beta() == p.beta());
  CHECK_THROWS_AS(apply_bias(p, Eigen::Vector2d(2.0, 0.0)), DomainError);
}

TEST_CASE("correct withholds the adjustment and says why") {
  const SampleData d = sample(60, Params(2.0, 1.5), 31);
  const MleFit fit = fit_mle(d);
  const BiasReport r = correct(d, fit.estimate);
  CHECK_FALSE(r.applied);
  CHECK_FALSE(r.pd_flag);
  CHECK(r.information.singular);
  CHECK(r.corrected.alpha() == fit.estimate.alpha());
  CHECK(r.corrected.beta() == fit.estimate.beta());
  CHECK_FALSE(r.bias.has_value());
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(r.nll == doctest::Approx(fit.nll).epsilon(1e-12));
  REQUIRE(r.criteria.has_value());
  CHECK(r.criteria->aic == doctest::Approx(4 + 2 * fit.nll));
}
