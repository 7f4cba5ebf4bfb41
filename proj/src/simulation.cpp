#include "mbuw/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "mbuw/bias_correction.hpp"
#include "mbuw/errors.hpp"
#include "mbuw/mle.hpp"
#include "mbuw/parallel.hpp"

namespace mbuw {

void StudyConfig::validate() const {
  if (replicates < 1) throw InputError("replicates must be at least 1");
  if (n_list.empty()) throw InputError("n list is empty");
  for (std::size_t n : n_list) {
    if (n < 5) throw InputError("every sample size must be at least 5, got " + std::to_string(n));
  }
  quad.validate();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Accumulator {
  std::size_t used = 0;
  double sum_a = 0.0, sum_b = 0.0;
  double sq_a = 0.0, sq_b = 0.0;
  double abs_a = 0.0, abs_b = 0.0;

  void add(double ea, double eb) {
    ++used;
    sum_a += ea;
    sum_b += eb;
    sq_a += ea * ea;
    sq_b += eb * eb;
    abs_a += std::abs(ea);
    abs_b += std::abs(eb);
  }

  EstimatorSummary summary() const {
    EstimatorSummary s;
    s.used = used;
    if (used == 0) return s;
    const double m = static_cast<double>(used);
    s.bias_alpha = sum_a / m;
    s.bias_beta = sum_b / m;
    s.rmse_alpha = std::sqrt(sq_a / m);
    s.rmse_beta = std::sqrt(sq_b / m);
    s.mae_alpha = abs_a / m;
    s.mae_beta = abs_b / m;
    return s;
  }
};

}  // namespace

std::uint64_t replicate_seed(std::uint64_t master, std::size_t n, std::size_t index) {
  return splitmix64(splitmix64(splitmix64(master) ^ static_cast<std::uint64_t>(n)) ^ static_cast<std::uint64_t>(index));
}

ReplicateOutcome run_replicate(const Params& truth, std::size_t n, std::uint64_t seed, const QuadratureConfig& quad) {
  ReplicateOutcome out;
  const SampleData data = sample(n, truth, seed);
  std::optional<MleFit> attempt;
  try {
    attempt = fit_mle(data, truth);
  } catch (const Error&) {
    return out;
  }
  const MleFit& fit = *attempt;
  if (!fit.optimizer.converged) return out;
  out.mle_ok = true;
  out.mle_alpha = fit.estimate.alpha();
  out.mle_beta = fit.estimate.beta();

  try {
    const CumulantSet k = expected_cumulants(fit.estimate, quad);
    if (!k.quadrature.converged) return out;
    const Params corrected = apply_bias(fit.estimate, bias_vector(k, n));
    out.corrected_ok = true;
    out.corrected_alpha = corrected.alpha();
    out.corrected_beta = corrected.beta();
  } catch (const Error&) {
  }
  return out;
}

StudyResult run(const StudyConfig& cfg) {
  cfg.validate();
  StudyResult result{.config = cfg};
  const double ta = cfg.true_params.alpha();
  const double tb = cfg.true_params.beta();

  for (std::size_t n : cfg.n_list) {
    std::vector<ReplicateOutcome> outcomes(cfg.replicates);
    parallel_for(
        cfg.replicates,
        [&](std::size_t r) {
          outcomes[r] = run_replicate(cfg.true_params, n, replicate_seed(cfg.seed, n, r), cfg.quad);
        },
        cfg.workers);

    // Reduction in replicate order keeps the sums bit-identical for any
    // number of workers.
    Accumulator raw, corrected;
    SizeResult row{.n = n};
    for (const ReplicateOutcome& o : outcomes) {
      if (!o.mle_ok) {
        ++row.mle_failures;
        continue;
      }
      raw.add(o.mle_alpha - ta, o.mle_beta - tb);
      if (o.corrected_ok) {
        corrected.add(o.corrected_alpha - ta, o.corrected_beta - tb);
      } else {
        ++row.correction_failures;
      }
    }
    if (2 * row.mle_failures > cfg.replicates) {
      std::ostringstream msg;
      msg << "MLE failed in " << row.mle_failures << " of " << cfg.replicates << " replicates at n=" << n;
      throw NoConvergence(msg.str());
    }
    row.raw = raw.summary();
    if (corrected.used > 0) row.corrected = corrected.summary();
    result.sizes.push_back(row);
  }
  return result;
}

std::string study_csv(const StudyResult& r) {
  std::ostringstream out;
  out << "n,estimator,bias_a,bias_b,rmse_a,rmse_b,failures\n";
  char buf[256];
  for (const SizeResult& s : r.sizes) {
    std::snprintf(buf, sizeof buf, "%zu,mle,%.17g,%.17g,%.17g,%.17g,%zu\n", s.n, s.raw.bias_alpha, s.raw.bias_beta,
                  s.raw.rmse_alpha, s.raw.rmse_beta, s.mle_failures);
    out << buf;
    const std::size_t failed = s.mle_failures + s.correction_failures;
    if (s.corrected) {
      const EstimatorSummary& c = *s.corrected;
      std::snprintf(buf, sizeof buf, "%zu,corrected,%.17g,%.17g,%.17g,%.17g,%zu\n", s.n, c.bias_alpha, c.bias_beta,
                    c.rmse_alpha, c.rmse_beta, failed);
    } else {
      std::snprintf(buf, sizeof buf, "%zu,corrected,NA,NA,NA,NA,%zu\n", s.n, failed);
    }
    out << buf;
  }
  return out.str();
}

}  // namespace mbuw
