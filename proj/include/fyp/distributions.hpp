#ifndef FYP_DISTRIBUTIONS_HPP_
#define FYP_DISTRIBUTIONS_HPP_

// Closed-form laws of the fractional Yule process: state probabilities,
// sojourn and waiting time distributions, the conditional (random initial
// mass) pmf, fractional moments of sojourn/waiting times, and log-moments.
//
// Everything funnels through E_{nu,1} / E_{nu,nu} evaluations plus signed
// binomial sums. Those sums cancel catastrophically as k grows, so the
// alternating forms carry a digit-loss estimate and a non-negative mixture
// quadrature (classical Yule at a Wright-distributed random rate) stands in
// above the cap or wherever the estimate is poor.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "fyp/detail/numeric_core.hpp"
#include "fyp/errors.hpp"
#include "fyp/special_functions.hpp"

namespace fyp {

struct FypParams {
  double nu;
  double lambda;
};

inline void validate(const FypParams &p) {
  if (!(p.nu > 0.0) || !(p.nu <= 1.0) || !std::isfinite(p.nu) ||
      !(p.lambda > 0.0) || !std::isfinite(p.lambda)) {
    throw DomainError("FypParams: need nu in (0,1] and lambda > 0");
  }
}

struct MomentSpec {
  double kappa;
  int index;  // birth index i (sojourn) or j (waiting)
};

enum class MomentKind { sojourn, waiting };

struct StatePmf {
  FypParams params;
  double t = 0.0;
  std::vector<double> probs;  // probs[k-1] = P(N(t) = k), k = 1..k_max
  double tail_mass = 0.0;
  // Worst per-entry absolute error estimate across the table; entries from
  // the alternating sum inherit the compensated-summation bound, mixture
  // entries the quadrature tolerance.
  double abs_error_bound = 0.0;
};

struct SojournWaitingValue {
  double pdf;
  double cdf;
};

namespace detail {

// Hard cap for the signed binomial sums; above it the mixture evaluator is
// used unconditionally.
inline constexpr int kAlternatingCap = 40;

// Signed binomial Mittag-Leffler sum S = sum_{l=1}^{k} C(k-1,l-1) (-1)^(l-1)
// f(l), accumulated with compensated summation in long double. Returns the
// value and the largest intermediate magnitude for the digit-loss estimate.
template <class F>
std::pair<double, double> alternating_binomial_sum(int k, const F &f) {
  const auto coef = binomial_row(k - 1);
  CompensatedSum<long double> acc;
  long double max_mag = 0.0L;
  for (int l = 1; l <= k; ++l) {
    const long double term = ((l % 2) ? 1.0L : -1.0L) *
                             static_cast<long double>(coef[l - 1]) *
                             static_cast<long double>(f(l));
    acc.add(term);
    max_mag = std::max(max_mag, std::fabs(term));
  }
  return {static_cast<double>(acc.value()),
          static_cast<double>(max_mag)};
}

// Classical Yule pmf at population k, time s: e^{-s'}(1-e^{-s'})^{k-1} with
// s' = lambda s, written through expm1 for small-argument accuracy.
inline double classical_yule_pmf(int k, double lambda_s) {
  if (lambda_s < 0.0) return 0.0;
  const double log_geom = (k - 1) * std::log(-std::expm1(-lambda_s));
  return std::exp(-lambda_s + ((k > 1) ? log_geom : 0.0));
}

// Mixture evaluator for the state pmf: integrate the classical Yule pmf at
// random rate lambda*xi, time t^nu, against the M-Wright density of xi.
// The integrand is non-negative, so no cancellation at any k.
inline double state_pmf_mixture(const FypParams &p, double t, int k) {
  if (p.nu == 1.0) return classical_yule_pmf(k, p.lambda * t);
  const double tnu = std::pow(t, p.nu);
  auto integrand = [&](double xi) -> double {
    return classical_yule_pmf(k, p.lambda * xi * tnu) *
           wright_m_density(p.nu, xi);
  };
  // The Wright factor dies past xi ~ (45/a0)^(1-nu); the Yule factor peaks
  // near the xi where the geometric mean matches k.
  const double a0 = kanter_a0(p.nu);
  const double xi_max = std::pow(45.0 / a0, 1.0 - p.nu);
  // Peak of the Yule factor in xi: e^{-u}(1-e^{-u})^{k-1} maximal at
  // u = log(k), i.e. xi* = log(k)/(lambda t^nu).
  const double xi_star = std::log(std::max(2.0, double(k))) / (p.lambda * tnu);
  std::vector<double> knots{0.0};
  for (double m : {0.5, 1.0, 2.0}) {
    const double xk = xi_star * m;
    if (xk > 0.0 && xk < xi_max) knots.push_back(xk);
  }
  for (double f : {0.25, 0.5, 0.75, 1.0}) knots.push_back(xi_max * f);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double a, double b) { return b - a <= 1e-12; }),
              knots.end());
  CompensatedSum<double> total;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (!(knots[i + 1] > knots[i])) continue;
    total.add(quad_panel(integrand, knots[i], knots[i + 1], false));
  }
  return total.value();
}

}  // namespace detail

// Mean population size E_{nu,1}(lambda t^nu).
inline double population_mean(const FypParams &p, double t) {
  validate(p);
  if (!(t >= 0.0)) throw DomainError("population_mean: need t >= 0");
  if (t == 0.0) return 1.0;
  return mittag_leffler(p.nu, 1.0, p.lambda * std::pow(t, p.nu));
}

// Population variance 2E_{nu,1}(2 lambda t^nu) - m - m^2 with
// m = E_{nu,1}(lambda t^nu).
inline double population_variance(const FypParams &p, double t) {
  validate(p);
  if (!(t >= 0.0)) throw DomainError("population_variance: need t >= 0");
  if (t == 0.0) return 0.0;
  const double x = p.lambda * std::pow(t, p.nu);
  const double m = mittag_leffler(p.nu, 1.0, x);
  return 2.0 * mittag_leffler(p.nu, 1.0, 2.0 * x) - m - m * m;
}

// State probabilities p_k(t), k = 1..k_max. The alternating binomial form
// is used while its estimated digit loss stays under 6 decimal digits; other
// entries come from the non-negative mixture representation. A cancellation
// error is raised only if an entry is unreliable on both routes.
inline StatePmf state_pmf(const FypParams &p, double t, int k_max) {
  validate(p);
  if (!(t > 0.0)) throw DomainError("state_pmf: need t > 0");
  if (k_max < 1) throw DomainError("state_pmf: need k_max >= 1");

  StatePmf out;
  out.params = p;
  out.t = t;
  out.probs.resize(static_cast<std::size_t>(k_max));

  if (p.nu == 1.0) {
    // Classical face: the geometric law in closed form, exact to rounding.
    // The signed binomial route would lose digits for no reason here.
    const double log_q = std::log(-std::expm1(-p.lambda * t));
    for (int k = 1; k <= k_max; ++k) {
      out.probs[static_cast<std::size_t>(k - 1)] =
          std::exp(-p.lambda * t + (k - 1) * log_q);
    }
    out.tail_mass = std::exp(k_max * log_q);
    out.abs_error_bound = 1e-15;
    return out;
  }

  const double tnu = std::pow(t, p.nu);
  // E_{nu,1}(-l lambda t^nu) reused across k: precompute once.
  std::vector<double> ml(static_cast<std::size_t>(
                             std::min(k_max, detail::kAlternatingCap)) +
                         1);
  for (std::size_t l = 1; l < ml.size(); ++l) {
    ml[l] = mittag_leffler(p.nu, 1.0, -static_cast<double>(l) * p.lambda * tnu);
  }

  double worst_err = 0.0;
  detail::CompensatedSum<double> mass;
  for (int k = 1; k <= k_max; ++k) {
    double pk;
    double err;
    if (k <= detail::kAlternatingCap) {
      auto [value, max_mag] =
          detail::alternating_binomial_sum(k, [&](int l) { return ml[l]; });
      err = max_mag * 1e-17;
      pk = value;
      if (err > 1e-6 * std::max(std::abs(value), 1e-300) || value < 0.0 ||
          value > 1.0) {
        // more than ~6 digits lost in the signed sum: use the mixture
        pk = detail::state_pmf_mixture(p, t, k);
        err = 1e-11 * std::max(pk, 1e-30) + 1e-14 * std::abs(value);
      }
    } else {
      pk = detail::state_pmf_mixture(p, t, k);
      err = 1e-11 * std::max(pk, 1e-30);
    }
    if (!(pk >= 0.0) || !(pk <= 1.0 + 1e-9)) {
      throw CancellationError("state_pmf: entry unreliable on both routes",
                              std::log10(std::max(err, 1e-300)) + 16.0);
    }
    out.probs[static_cast<std::size_t>(k - 1)] = pk;
    mass.add(pk);
    worst_err = std::max(worst_err, err);
  }
  out.tail_mass = std::max(0.0, 1.0 - mass.value());
  out.abs_error_bound = worst_err;
  return out;
}

// Sojourn time T_i: pdf i lambda t^(nu-1) E_{nu,nu}(-i lambda t^nu),
// cdf 1 - E_{nu,1}(-i lambda t^nu).
inline SojournWaitingValue sojourn_distribution(const FypParams &p, int i,
                                                double t) {
  validate(p);
  if (i < 1) throw DomainError("sojourn_distribution: need i >= 1");
  if (!(t > 0.0)) throw DomainError("sojourn_distribution: need t > 0");
  const double rate = static_cast<double>(i) * p.lambda;
  const double x = rate * std::pow(t, p.nu);
  SojournWaitingValue v;
  v.pdf = rate * std::pow(t, p.nu - 1.0) * mittag_leffler(p.nu, p.nu, -x);
  v.cdf = 1.0 - mittag_leffler(p.nu, 1.0, -x);
  return v;
}

// Waiting time W_j = T_1 + ... + T_j. The survival collapses to a single
// binomial sum: P(W_j > t) = sum_{l=1}^{j} C(j,l) (-1)^(l-1)
// E_{nu,1}(-l lambda t^nu), and the pdf is its negated t-derivative.
inline SojournWaitingValue waiting_distribution(const FypParams &p, int j,
                                                double t) {
  validate(p);
  if (j < 1) throw DomainError("waiting_distribution: need j >= 1");
  if (!(t > 0.0)) throw DomainError("waiting_distribution: need t > 0");
  if (p.nu == 1.0) {
    // Closed form for the classical face, valid at every j: the waiting time
    // is a sum of independent exponentials with rates lambda, ..., j lambda.
    const double log_q = std::log(-std::expm1(-p.lambda * t));
    SojournWaitingValue v;
    v.cdf = std::exp(j * log_q);
    v.pdf = j * p.lambda * std::exp(-p.lambda * t + (j - 1) * log_q);
    return v;
  }
  if (j > detail::kAlternatingCap) {
    throw CancellationError(
        "waiting_distribution: j beyond the alternating-sum cap",
        static_cast<double>(j));
  }
  const double tnu = std::pow(t, p.nu);
  const auto coef = detail::binomial_row(j);
  detail::CompensatedSum<long double> surv;
  detail::CompensatedSum<long double> dens;
  long double max_mag = 0.0L;
  for (int l = 1; l <= j; ++l) {
    const double x = static_cast<double>(l) * p.lambda * tnu;
    const long double c =
        ((l % 2) ? 1.0L : -1.0L) * static_cast<long double>(coef[l]);
    const long double s_term = c * mittag_leffler(p.nu, 1.0, -x);
    const long double d_term =
        c * (static_cast<double>(l) * p.lambda * std::pow(t, p.nu - 1.0) *
             mittag_leffler(p.nu, p.nu, -x));
    surv.add(s_term);
    dens.add(d_term);
    max_mag = std::max(max_mag, std::fabs(s_term));
  }
  if (static_cast<double>(max_mag) * 1e-17 > 1e-9) {
    throw CancellationError("waiting_distribution: digit loss beyond budget",
                            std::log10(static_cast<double>(max_mag)) + 1.0);
  }
  SojournWaitingValue v;
  v.cdf = std::min(1.0, std::max(0.0, 1.0 - static_cast<double>(surv.value())));
  v.pdf = std::max(0.0, static_cast<double>(dens.value()));
  return v;
}

// Conditional state pmf q_k(t) for the process started from an
// exponentially-thinned random initial mass with parameter omega: the count
// N(t) - 1 is mixed Poisson with random mean omega (e^{lambda Xi t^nu} - 1),
// Xi M-Wright distributed. At nu = 1 the mixture degenerates and the value
// is the plain Poisson pmf with mean omega (e^{lambda t} - 1).
inline double conditional_state_pmf(const FypParams &p, double omega, double t,
                                    int k, int series_terms = 200) {
  validate(p);
  if (!(omega > 0.0)) throw DomainError("conditional_state_pmf: omega > 0");
  if (!(t > 0.0)) throw DomainError("conditional_state_pmf: t > 0");
  if (k < 1) throw DomainError("conditional_state_pmf: k >= 1");
  if (omega > 5.0 || k > 15) {
    throw OverflowSignal(
        "conditional_state_pmf: outside the stable envelope (omega <= 5, "
        "k <= 15)",
        omega * k);
  }
  (void)series_terms;  // the direct series only converges at nu = 1

  auto poisson_pmf = [](int n, double mean) -> double {
    detail::CompensatedSum<long double> lg;
    for (int m = 2; m <= n; ++m) lg.add(std::log(static_cast<long double>(m)));
    return static_cast<double>(
        std::exp(-static_cast<long double>(mean) +
                 n * std::log(static_cast<long double>(mean)) - lg.value()));
  };

  if (p.nu == 1.0) {
    const double mean = omega * std::expm1(p.lambda * t);
    return poisson_pmf(k - 1, mean);
  }

  const double tnu = std::pow(t, p.nu);
  auto integrand = [&](double xi) -> double {
    const double mean = omega * std::expm1(p.lambda * xi * tnu);
    if (mean <= 0.0) return (k == 1) ? wright_m_density(p.nu, xi) : 0.0;
    return poisson_pmf(k - 1, mean) * wright_m_density(p.nu, xi);
  };
  const double a0 = detail::kanter_a0(p.nu);
  const double xi_max = std::pow(45.0 / a0, 1.0 - p.nu);
  // Poisson factor peaks where omega(e^{lambda xi t^nu} - 1) = k - 1.
  std::vector<double> knots{0.0};
  if (k > 1) {
    const double xk =
        std::log1p(static_cast<double>(k - 1) / omega) / (p.lambda * tnu);
    for (double m : {0.5, 1.0, 2.0}) {
      if (xk * m < xi_max) knots.push_back(xk * m);
    }
  }
  for (double f : {0.25, 0.5, 0.75, 1.0}) knots.push_back(xi_max * f);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double a, double b) { return b - a <= 1e-12; }),
              knots.end());
  detail::CompensatedSum<double> total;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (!(knots[i + 1] > knots[i])) continue;
    total.add(detail::quad_panel(integrand, knots[i], knots[i + 1], false));
  }
  return std::min(1.0, std::max(0.0, total.value()));
}

namespace detail {

// The direct double series for q_k(t) with the corrected argument index
// lambda (l + j - 1) t^nu. It converges only at nu = 1 (the terms grow like
// exp((l t^nu lambda)^(1/nu)) otherwise, which no 1/l! can beat); kept for
// the nu = 1 equivalence test against the Poisson closed form.
inline double conditional_state_pmf_series(const FypParams &p, double omega,
                                           double t, int k, int series_terms) {
  const double tnu = std::pow(t, p.nu);
  const auto coef = binomial_row(k - 1);
  CompensatedSum<long double> outer;
  long double omega_pow = 1.0L;  // (-omega)^l / l!
  for (int l = 0; l < series_terms; ++l) {
    if (l > 0) omega_pow *= -static_cast<long double>(omega) / l;
    CompensatedSum<long double> inner;
    for (int j = 1; j <= k; ++j) {
      const double arg = p.lambda * (l + j - 1) * tnu;
      const long double e = mittag_leffler(p.nu, 1.0, arg);
      inner.add(((j % 2) ? 1.0L : -1.0L) *
                static_cast<long double>(coef[j - 1]) * e);
    }
    outer.add(omega_pow * inner.value());
  }
  long double factor = std::exp(static_cast<long double>(omega));
  for (int m = 1; m <= k - 1; ++m) {
    factor *= -static_cast<long double>(omega) / m;
  }
  return static_cast<double>(factor * outer.value());
}

}  // namespace detail

// kappa-th fractional moment of a sojourn or waiting time. The moment
// exists iff 0 < kappa < nu.
inline double fractional_moment(const FypParams &p, const MomentSpec &spec,
                                MomentKind which) {
  validate(p);
  if (spec.index < 1) throw DomainError("fractional_moment: index >= 1");
  if (!(spec.kappa > 0.0) || !(spec.kappa < p.nu)) {
    throw DomainError("fractional_moment: need 0 < kappa < nu");
  }
  const double r = spec.kappa / p.nu;
  const double gamma_factor =
      std::tgamma(1.0 + r) * std::tgamma(1.0 - r) / std::tgamma(1.0 - spec.kappa);
  if (which == MomentKind::sojourn) {
    return gamma_factor *
           std::pow(static_cast<double>(spec.index) * p.lambda, -r);
  }
  // waiting: E[W_j^kappa] has the collapsed binomial form over l^{-kappa/nu}
  const auto coef = detail::binomial_row(spec.index);
  detail::CompensatedSum<long double> acc;
  for (int l = 1; l <= spec.index; ++l) {
    acc.add(((l % 2) ? 1.0L : -1.0L) * static_cast<long double>(coef[l]) *
            std::pow(static_cast<long double>(l), -static_cast<long double>(r)));
  }
  return gamma_factor * std::pow(p.lambda, -r) *
         static_cast<double>(acc.value());
}

// First two moments of ln T_i.
inline std::pair<double, double> log_moments(const FypParams &p, int i) {
  validate(p);
  if (i < 1) throw DomainError("log_moments: need i >= 1");
  const double g = std::numbers::egamma;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double a = std::log(static_cast<double>(i) * p.lambda) / p.nu;
  const double m1 = -a - g;
  const double m2 = pi2 * (1.0 / (3.0 * p.nu * p.nu) - 1.0 / 6.0) +
                    (a + g) * (a + g);
  return {m1, m2};
}

}  // namespace fyp

#endif  // FYP_DISTRIBUTIONS_HPP_
