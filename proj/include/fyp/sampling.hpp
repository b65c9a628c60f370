#ifndef FYP_SAMPLING_HPP_
#define FYP_SAMPLING_HPP_

// Exact samplers for the fractional Yule process. Two routes:
//
//  * full sample paths: each sojourn is an independently subordinated
//    exponential, T_i = V_i^(1/nu) * S_i with V_i ~ Exp(i lambda) and S_i a
//    one-sided stable variate of index nu (Kanter's representation);
//  * the marginal N(t) alone: one Wright-distributed time change Xi turns
//    the count into a classical Yule count at the deformed horizon
//    Xi * t^nu, which is geometric and drawn by inversion.
//
// At nu = 1 both degenerate to the classical Yule process; the path sampler
// then consumes the stream exactly like simulate_classical_yule, so seeds
// reproduce bit-for-bit across the two.

#include <cmath>
#include <cstdint>
#include <vector>

#include "fyp/distributions.hpp"
#include "fyp/errors.hpp"
#include "fyp/random.hpp"
#include "fyp/special_functions.hpp"

namespace fyp {

enum class PathAlgorithm { alg1_marginal, alg2_path, classical };

struct StreamDescriptor {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

struct SamplePath {
  FypParams params;
  PathAlgorithm algorithm = PathAlgorithm::classical;
  // birth_times[m] is the epoch of the (m+1)-th individual's arrival, so
  // the population at time t is 1 + #{w in birth_times : w <= t}.
  std::vector<double> birth_times;
  StreamDescriptor seed_info;
};

inline double sample_exponential(RandomStream &rng, double rate) {
  if (!(rate > 0.0)) throw DomainError("sample_exponential: rate > 0");
  return rng.exponential(rate);
}

// One-sided (totally skewed) stable variate of index nu, standardized so
// that E[e^{-z S}] = e^{-z^nu}. Kanter's representation: with U uniform and
// W standard exponential, S = (a(U) / W)^{(1-nu)/nu} where a is the Kanter
// kernel. Evaluated in log space since a(U) spans many decades near U = 1.
inline double sample_positive_stable(RandomStream &rng, double nu) {
  if (!(nu > 0.0) || !(nu < 1.0)) {
    throw DomainError("sample_positive_stable: need nu in (0,1)");
  }
  const double u = rng.uniform();
  const double w = rng.exponential(1.0);
  const double log_a = detail::kanter_log_a(nu, u);
  return std::exp(((1.0 - nu) / nu) * (log_a - std::log(w)));
}

// M-Wright variate: if S is one-sided stable of index nu then S^{-nu} has
// the M-Wright density.
inline double sample_wright(RandomStream &rng, double nu) {
  return std::pow(sample_positive_stable(rng, nu), -nu);
}

// Classical Yule path: the sojourn at population i is Exp(i lambda).
inline SamplePath simulate_classical_yule(RandomStream &rng, double lambda,
                                          int n_births) {
  if (!(lambda > 0.0)) throw DomainError("simulate_classical_yule: lambda > 0");
  if (n_births < 1) {
    throw DomainError("simulate_classical_yule: n_births >= 1");
  }
  SamplePath path;
  path.params = {1.0, lambda};
  path.algorithm = PathAlgorithm::classical;
  path.seed_info = {rng.seed(), rng.stream_id()};
  path.birth_times.reserve(static_cast<std::size_t>(n_births));
  double t = 0.0;
  for (int i = 1; i <= n_births; ++i) {
    t += rng.exponential(static_cast<double>(i) * lambda);
    path.birth_times.push_back(t);
  }
  return path;
}

// Fractional path via per-sojourn subordination: T_i = V_i^{1/nu} S_i with
// V_i ~ Exp(i lambda) and an independent stable draw per sojourn. At nu = 1
// the stable draws are skipped entirely (S is the constant 1 there), so the
// stream advances exactly as in simulate_classical_yule.
inline SamplePath simulate_path_alg2(RandomStream &rng, const FypParams &p,
                                     int n_births) {
  validate(p);
  if (n_births < 1) throw DomainError("simulate_path_alg2: n_births >= 1");
  if (p.nu == 1.0) {
    SamplePath path = simulate_classical_yule(rng, p.lambda, n_births);
    path.algorithm = PathAlgorithm::alg2_path;
    return path;
  }
  SamplePath path;
  path.params = p;
  path.algorithm = PathAlgorithm::alg2_path;
  path.seed_info = {rng.seed(), rng.stream_id()};
  path.birth_times.reserve(static_cast<std::size_t>(n_births));
  double t = 0.0;
  for (int i = 1; i <= n_births; ++i) {
    const double v = rng.exponential(static_cast<double>(i) * p.lambda);
    const double s = sample_positive_stable(rng, p.nu);
    t += std::pow(v, 1.0 / p.nu) * s;
    path.birth_times.push_back(t);
  }
  return path;
}

// Marginal population size at a fixed horizon, one draw. The classical Yule
// count at horizon h is geometric on {1, 2, ...} with success probability
// e^{-lambda h}, so after the Wright time change a single inversion draw
// realizes the exact law; no path is materialized.
inline int simulate_marginal_alg1(RandomStream &rng, const FypParams &p,
                                  double t) {
  validate(p);
  if (!(t > 0.0)) throw DomainError("simulate_marginal_alg1: t > 0");
  const double horizon =
      (p.nu == 1.0) ? t : sample_wright(rng, p.nu) * std::pow(t, p.nu);
  const double log_q = std::log(-std::expm1(-p.lambda * horizon));
  if (!(log_q < 0.0)) {
    // 1 - e^{-lambda h} rounded to 1: the count would dwarf any integer
    // type anyway, so refuse rather than return a capped value.
    throw OverflowSignal("simulate_marginal_alg1: geometric step underflow",
                         p.lambda * horizon);
  }
  const double draws = std::floor(std::log(rng.uniform()) / log_q);
  if (draws >= 2147483646.0) {
    throw OverflowSignal("simulate_marginal_alg1: population exceeds int range",
                         draws);
  }
  return 1 + static_cast<int>(draws);
}

}  // namespace fyp

#endif  // FYP_SAMPLING_HPP_
