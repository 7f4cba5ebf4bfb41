#include "mbuw/cumulants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>
#include <vector>

#include "mbuw/errors.hpp"
#include "mbuw/likelihood.hpp"

namespace mbuw {

void QuadratureConfig::validate() const {
  if (nodes < 3) throw InputError("quadrature needs at least 3 nodes");
  if (!(inset >= 0.0 && inset < 0.25)) throw InputError("quadrature inset must lie in [0, 0.25)");
  if (!(tolerance > 0.0)) throw InputError("quadrature tolerance must be positive");
}

double CumulantSet::k(int i, int j) const {
  const int betas = i + j;
  return betas == 0 ? k11 : (betas == 1 ? k12 : k22);
}

double CumulantSet::k3(int i, int j, int l) const {
  switch (i + j + l) {
    case 0: return k111;
    case 1: return k112;
    case 2: return k122;
    default: return k222;
  }
}

double CumulantSet::dk(int i, int j, int l) const {
  const int betas = i + j;
  if (betas == 0) return l == 0 ? dk11_da : dk11_db;
  if (betas == 1) return l == 0 ? dk12_da : dk12_db;
  return l == 0 ? dk22_da : dk22_db;
}

bool CumulantSet::singular() const {
  const double det = std::abs(determinant());
  return det < 1e-12 || det < 1e-8 * std::abs(k11 * k22);
}

namespace {

// Node of the fine trapezoid grid in the probability scale t = y^c.
struct Node {
  double log_t;    // ln t = c ln y
  double q;        // t / (1 - t)
  double density;  // 6 t (1 - t)
  double weight;   // fine-grid trapezoid weight
  bool coarse;     // also a node of the coarse grid
  double coarse_weight;
};

using NodeTable = std::vector<Node>;

std::shared_ptr<const NodeTable> build_nodes(std::size_t nodes, double inset) {
  const std::size_t fine = 2 * nodes - 1;
  const std::size_t last = fine - 1;
  const double span = 1.0 - 2.0 * inset;
  const double h = span / static_cast<double>(last);
  auto table = std::make_shared<NodeTable>(fine);
  for (std::size_t k = 0; k < fine; ++k) {
    const double t = inset + static_cast<double>(k) * h;
    const double one_minus_t = inset + static_cast<double>(last - k) * h;
    Node& node = (*table)[k];
    node.log_t = t <= 0.5 ? std::log(t) : std::log1p(-one_minus_t);
    node.q = t / one_minus_t;
    node.density = 6.0 * t * one_minus_t;
    const bool end = (k == 0 || k == last);
    node.weight = end ? 0.5 * h : h;
    node.coarse = (k % 2 == 0);
    node.coarse_weight = node.coarse ? (end ? h : 2.0 * h) : 0.0;
  }
  return table;
}

std::shared_ptr<const NodeTable> node_table(const QuadratureConfig& quad) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, double>, std::shared_ptr<const NodeTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(quad.nodes, quad.inset);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (cache.size() > 8) cache.clear();
  auto table = build_nodes(quad.nodes, quad.inset);
  cache.emplace(key, table);
  return table;
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Integrates M components of integrand(log_t, q) against 6 t (1 - t) dt.
template <std::size_t M, typename Integrand>
std::array<double, M> integrate(const QuadratureConfig& quad, Integrand&& integrand, QuadratureStatus& status) {
  quad.validate();
  const auto table = node_table(quad);
  std::array<CompensatedSum, M> fine{};
  std::array<CompensatedSum, M> coarse{};
  for (const Node& node : *table) {
    const std::array<double, M> v = integrand(node.log_t, node.q);
    for (std::size_t m = 0; m < M; ++m) {
      const double weighted = v[m] * node.density;
      fine[m].add(node.weight * weighted);
      if (node.coarse) coarse[m].add(node.coarse_weight * weighted);
    }
  }
  std::array<double, M> out{};
  status = QuadratureStatus{};
  for (std::size_t m = 0; m < M; ++m) {
    const double tf = fine[m].value();
    const double tc = coarse[m].value();
    const double change = std::abs(tf - tc);
    status.max_change = std::max(status.max_change, change);
    if (!(change <= quad.tolerance * std::max(1.0, std::abs(tf)))) {
      status.converged = false;
    }
    out[m] = quad.richardson ? (4.0 * tf - tc) / 3.0 : tf;
  }
  return out;
}

std::array<double, 7> cumulant_terms(const Params& p, const QuadratureConfig& quad, QuadratureStatus& status) {
  const PowerChain chain(p);
  const double inv_c = 1.0 / chain.c;
  return integrate<7>(
      quad,
      [&](double log_t, double q) {
        const DerivativeBundle d = derivatives_from_log(log_t * inv_c, q, chain);
        return std::array<double, 7>{d.d2_aa, d.d2_ab, d.d2_bb, d.d3_aaa, d.d3_aab, d.d3_abb, d.d3_bbb};
      },
      status);
}

std::array<double, 3> second_terms(const Params& p, const QuadratureConfig& quad, QuadratureStatus& status) {
  const PowerChain chain(p);
  const double inv_c = 1.0 / chain.c;
  return integrate<3>(
      quad,
      [&](double log_t, double q) {
        const DerivativeBundle d = derivatives_from_log(log_t * inv_c, q, chain);
        return std::array<double, 3>{d.d2_aa, d.d2_ab, d.d2_bb};
      },
      status);
}

void merge(QuadratureStatus& into, const QuadratureStatus& other) {
  into.converged = into.converged && other.converged;
  into.max_change = std::max(into.max_change, other.max_change);
}

double fd_step(double theta) {
  const double h = 1e-4 * std::max(1.0, std::abs(theta));
  return std::min(h, 0.5 * theta);
}

}  // namespace

ExpectationSet expectations(const Params& p, const QuadratureConfig& quad) {
  const double inv_c = 1.0 / p.c();
  ExpectationSet out;
  const auto f = integrate<7>(
      quad,
      [&](double log_t, double q) {
        const double L = log_t * inv_c;
        const double L2 = L * L;
        const double L3 = L2 * L;
        const double q2 = q * q;
        return std::array<double, 7>{q * L3, q * L2, q * L, q2 * L3, q2 * L2, q2 * q * L3, L};
      },
      out.quadrature);
  out.f1 = f[0];
  out.f2 = f[1];
  out.f3 = f[2];
  out.f4 = f[3];
  out.f5 = f[4];
  out.f6 = f[5];
  out.f7 = f[6];
  return out;
}

CumulantSet second_order_cumulants(const Params& p, const QuadratureConfig& quad) {
  CumulantSet out;
  const auto k = second_terms(p, quad, out.quadrature);
  out.k11 = k[0];
  out.k12 = k[1];
  out.k22 = k[2];
  return out;
}

CumulantSet expected_cumulants(const Params& p, const QuadratureConfig& quad) {
  CumulantSet out;
  const auto k = cumulant_terms(p, quad, out.quadrature);
  out.k11 = k[0];
  out.k12 = k[1];
  out.k22 = k[2];
  out.k111 = k[3];
  out.k112 = k[4];
  out.k122 = k[5];
  out.k222 = k[6];

  auto shifted = [&](double da, double db) {
    QuadratureStatus st;
    const auto v = second_terms(Params(p.alpha() + da, p.beta() + db), quad, st);
    merge(out.quadrature, st);
    return v;
  };
  const double ha = fd_step(p.alpha());
  const double hb = fd_step(p.beta());
  const auto ap = shifted(ha, 0.0);
  const auto am = shifted(-ha, 0.0);
  const auto bp = shifted(0.0, hb);
  const auto bm = shifted(0.0, -hb);
  out.dk11_da = (ap[0] - am[0]) / (2.0 * ha);
  out.dk12_da = (ap[1] - am[1]) / (2.0 * ha);
  out.dk22_da = (ap[2] - am[2]) / (2.0 * ha);
  out.dk11_db = (bp[0] - bm[0]) / (2.0 * hb);
  out.dk12_db = (bp[1] - bm[1]) / (2.0 * hb);
  out.dk22_db = (bp[2] - bm[2]) / (2.0 * hb);
  return out;
}

double power_information(const Params& p, const QuadratureConfig& quad) {
  const ExpectationSet e = expectations(p, quad);
  return 1.0 / (p.c() * p.c()) + e.f2 + e.f5;
}

InformationMatrix information_matrix(const CumulantSet& k, std::size_t n) {
  if (n == 0) throw InputError("information matrix needs n >= 1");
  const double nn = static_cast<double>(n);
  InformationMatrix out;
  out.K(0, 0) = -nn * k.k11;
  out.K(0, 1) = -nn * k.k12;
  out.K(1, 0) = -nn * k.k12;
  out.K(1, 1) = -nn * k.k22;
  out.det = out.K(0, 0) * out.K(1, 1) - out.K(0, 1) * out.K(1, 0);
  out.singular = k.singular();
  out.positive_definite = !out.singular && out.K(0, 0) > 0.0 && out.det > 0.0;
  return out;
}

InformationMatrix information_matrix(const Params& p, std::size_t n, const QuadratureConfig& quad) {
  return information_matrix(second_order_cumulants(p, quad), n);
}

}  // namespace mbuw
