#include "mbuw/bias_correction.hpp"

#include <cmath>
#include <sstream>

#include "mbuw/errors.hpp"
#include "mbuw/likelihood.hpp"

namespace mbuw {

namespace {

Eigen::Matrix2d symmetric_inverse(const Eigen::Matrix2d& m) {
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
  Eigen::Matrix2d inv;
  inv(0, 0) = m(1, 1) / det;
  inv(1, 1) = m(0, 0) / det;
  inv(0, 1) = -m(0, 1) / det;
  inv(1, 0) = inv(0, 1);
  return inv;
}

void require_invertible(const CumulantSet& k) {
  if (k.singular()) {
    std::ostringstream msg;
    msg << "expected information is numerically singular (k11 k22 - k12^2 = " << k.determinant() << ")";
    throw SingularInformation(msg.str());
  }
  const InformationMatrix info = information_matrix(k, 1);
  if (!info.positive_definite) {
    std::ostringstream msg;
    msg << "expected information is not positive definite (leading minors " << info.K(0, 0) << ", " << info.det
        << ")";
    throw NonPositiveDefinite(msg.str());
  }
}

}  // namespace

Eigen::Vector4d vec(const Eigen::Matrix2d& m) { return Eigen::Vector4d(m(0, 0), m(1, 0), m(0, 1), m(1, 1)); }

AMatrix a_matrix(const CumulantSet& k, std::size_t n) {
  AMatrix a;
  for (int l = 0; l < 2; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        a(i, 2 * l + j) = k.dk(i, j, l) - 0.5 * k.k3(i, j, l);
      }
    }
  }
  return static_cast<double>(n) * a;
}

AMatrix a_matrix(const Params& p, std::size_t n, const QuadratureConfig& quad) {
  return a_matrix(expected_cumulants(p, quad), n);
}

Eigen::Vector2d bias_vector(const CumulantSet& k, std::size_t n) {
  if (n == 0) throw InputError("bias needs n >= 1");
  require_invertible(k);
  const Eigen::Matrix2d inv = symmetric_inverse(information_matrix(k, 1).K);
  const Eigen::Vector2d unit = inv * a_matrix(k, 1) * vec(inv);
  return unit / static_cast<double>(n);
}

Eigen::Vector2d bias_vector(const Params& p, std::size_t n, const QuadratureConfig& quad) {
  const CumulantSet k = expected_cumulants(p, quad);
  if (!k.quadrature.converged) {
    throw NoConvergence("cumulant quadrature did not converge under node doubling");
  }
  return bias_vector(k, n);
}

Params apply_bias(const Params& mle, const Eigen::Vector2d& bias) {
  return Params(mle.alpha() - bias(0), mle.beta() - bias(1));
}

BiasReport correct(const SampleData& data, const Params& mle, const QuadratureConfig& quad) {
  const std::size_t n = data.size();
  const CumulantSet k = expected_cumulants(mle, quad);
  BiasReport out{.mle = mle, .corrected = mle};
  out.information = information_matrix(k, n);
  out.quadrature_converged = k.quadrature.converged;
  out.pd_flag = out.information.positive_definite;
  if (!k.quadrature.converged) {
    std::ostringstream msg;
    msg << "cumulant quadrature changed by " << k.quadrature.max_change << " under node doubling";
    out.diagnostics.push_back(msg.str());
  }

  try {
    const Eigen::Vector2d bias = bias_vector(k, n);
    out.bias = bias;
    out.varcov = symmetric_inverse(out.information.K);
    if (k.quadrature.converged) {
      try {
        out.corrected = apply_bias(mle, bias);
        out.applied = true;
      } catch (const DomainError& e) {
        out.diagnostics.push_back(std::string("corrected estimate left the parameter space: ") + e.what());
      }
    }
  } catch (const NumericalError& e) {
    out.diagnostics.push_back(std::string(e.what()) + "; reporting the uncorrected MLE");
  }

  out.nll = nll(data, out.corrected);
  out.gof = gof(data, out.corrected);
  if (n > 3) out.criteria = criteria(out.nll, 2, n);
  return out;
}

}  // namespace mbuw
