#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "fyp/distributions.hpp"
#include "fyp/estimation.hpp"
#include "fyp/io.hpp"
#include "fyp/sampling.hpp"

namespace {

// Exact population log-moment averages over the first n sojourns.
std::pair<double, double> exact_log_moment_bars(const fyp::FypParams &p,
                                                int n) {
  double a = 0.0, b = 0.0;
  for (int i = 1; i <= n; ++i) {
    const auto [m1, m2] = fyp::log_moments(p, i);
    a += m1;
    b += m2;
  }
  return {a / n, b / n};
}

// Exact population averages of T_i^kappa over the first n sojourns.
double exact_fractional_bar(const fyp::FypParams &p, double kappa, int n) {
  double m = 0.0;
  for (int i = 1; i <= n; ++i) {
    m += fyp::fractional_moment(p, {kappa, i}, fyp::MomentKind::sojourn);
  }
  return m / n;
}

}  // namespace

TEST_CASE("log-moment solver inverts exact moments across the grid") {
  for (double nu = 0.1; nu < 1.05; nu += 0.1) {
    for (double lambda : {0.2, 1.0, 10.0}) {
      const fyp::FypParams p{nu, lambda};
      for (int n : {100, 5000}) {
        const auto [a_bar, b_bar] = exact_log_moment_bars(p, n);
        const auto fit = fyp::detail::log_moment_solve(a_bar, b_bar, n);
        INFO("nu=" << nu << " lambda=" << lambda << " n=" << n);
        REQUIRE(fit.solver.converged);
        REQUIRE(fit.nu_hat == Catch::Approx(nu).margin(1e-8));
        REQUIRE(fit.lambda_hat == Catch::Approx(lambda).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("fractional-moment solver inverts exact moments across the grid") {
  const double k1 = 0.02, k2 = 0.04;
  for (double nu = 0.1; nu < 1.05; nu += 0.1) {
    for (double lambda : {0.2, 1.0, 10.0}) {
      const fyp::FypParams p{nu, lambda};
      for (int n : {100, 5000}) {
        const double m1 = exact_fractional_bar(p, k1, n);
        const double m2 = exact_fractional_bar(p, k2, n);
        const auto fit =
            fyp::detail::fractional_moment_solve(m1, m2, k1, k2, n);
        INFO("nu=" << nu << " lambda=" << lambda << " n=" << n);
        REQUIRE(fit.solver.converged);
        REQUIRE(fit.nu_hat == Catch::Approx(nu).margin(1e-8));
        REQUIRE(fit.lambda_hat == Catch::Approx(lambda).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("raw and centered forms of the log-moment equation agree") {
  // The quadratic in 1/nu solved by bisection has the same root as the
  // centered closed form; both on exact and on sampled moments.
  const int n = 400;
  for (double nu : {0.25, 0.6, 0.95}) {
    const fyp::FypParams p{nu, 2.0};
    const auto [a_bar, b_bar] = exact_log_moment_bars(p, n);
    const auto fit = fyp::detail::log_moment_solve(a_bar, b_bar, n);
    const double closed =
        fyp::detail::log_moment_nu_closed_form(a_bar, b_bar, n);
    REQUIRE(fit.nu_hat == Catch::Approx(closed).margin(1e-9));
  }
  fyp::RandomStream rng(3, 9);
  const auto path = fyp::simulate_path_alg2(rng, {0.5, 1.0}, n);
  fyp::SojournData data;
  double prev = 0.0;
  for (double b : path.birth_times) {
    data.durations.push_back(b - prev);
    prev = b;
  }
  const auto fit = fyp::estimate_log_moments(data);
  double a_bar = 0.0, b_bar = 0.0;
  for (int i = 0; i < n; ++i) {
    const double l = std::log(data.durations[i]);
    a_bar += l;
    b_bar += l * l;
  }
  a_bar /= n;
  b_bar /= n;
  const double closed = fyp::detail::log_moment_nu_closed_form(a_bar, b_bar, n);
  REQUIRE(fit.nu_hat == Catch::Approx(closed).margin(1e-7));
}

TEST_CASE("log-moment estimates are scale equivariant") {
  // Scaling every duration by c maps lambda to lambda c^{-nu} and leaves nu
  // alone; exact moments shift by ln c.
  const int n = 300;
  const fyp::FypParams p{0.7, 1.5};
  const auto [a_bar, b_bar] = exact_log_moment_bars(p, n);
  const auto base = fyp::detail::log_moment_solve(a_bar, b_bar, n);
  for (double c : {0.1, 10.0}) {
    const double lc = std::log(c);
    const auto fit = fyp::detail::log_moment_solve(
        a_bar + lc, b_bar + 2.0 * a_bar * lc + lc * lc, n);
    REQUIRE(fit.nu_hat == Catch::Approx(base.nu_hat).margin(1e-9));
    REQUIRE(fit.lambda_hat ==
            Catch::Approx(base.lambda_hat * std::pow(c, -base.nu_hat))
                .epsilon(1e-8));
  }
}

TEST_CASE("log-moment estimator recovers simulated parameters") {
  // Full pipeline round trip: the path goes out through the CSV writer and
  // comes back through the reader, which may drop the occasional sojourn
  // that fell below the time column's spacing on a long path.
  fyp::RandomStream rng(11, 0);
  const fyp::FypParams truth{0.5, 0.2};
  const auto path = fyp::simulate_path_alg2(rng, truth, 10000);
  std::stringstream buf;
  fyp::write_path_csv(buf, path);
  const auto data = fyp::read_durations_csv(buf);
  REQUIRE(data.durations.size() >= 9990);
  REQUIRE(data.durations.size() <= 10000);
  const auto fit = fyp::estimate_log_moments(data);
  REQUIRE(fit.solver.converged);
  REQUIRE(fit.method == fyp::EstimationMethod::log_moment);
  REQUIRE(fit.n == static_cast<int>(data.durations.size()));
  REQUIRE(std::abs(fit.nu_hat - truth.nu) < 0.05);
  REQUIRE(std::abs(fit.lambda_hat - truth.lambda) / truth.lambda < 0.15);
}

TEST_CASE("fractional-moment estimator flags nu=1 data as classical") {
  // Exponential sojourns are the nu=1 face of the family; the fitted order
  // should land at 1 within sampling noise.
  fyp::RandomStream rng(13, 0);
  const fyp::FypParams truth{1.0, 1.0};
  const auto path = fyp::simulate_path_alg2(rng, truth, 20000);
  fyp::SojournData data;
  double prev = 0.0;
  for (double b : path.birth_times) {
    data.durations.push_back(b - prev);
    prev = b;
  }
  const auto fit = fyp::estimate_fractional_moments(data, 0.05, 0.10);
  REQUIRE(fit.solver.converged);
  REQUIRE(fit.method == fyp::EstimationMethod::fractional_moment);
  REQUIRE(std::abs(fit.nu_hat - 1.0) < 0.05);
  REQUIRE(std::abs(fit.lambda_hat - 1.0) < 0.15);
}

TEST_CASE("estimators reject degenerate and malformed data") {
  fyp::SojournData equal;
  equal.durations = {0.7, 0.7, 0.7};
  REQUIRE_THROWS_AS(fyp::estimate_log_moments(equal),
                    fyp::DegenerateDataError);
  REQUIRE_THROWS_AS(fyp::estimate_fractional_moments(equal, 0.05, 0.10),
                    fyp::DegenerateDataError);

  fyp::SojournData single;
  single.durations = {1.0};
  REQUIRE_THROWS_AS(fyp::estimate_log_moments(single), fyp::DomainError);

  fyp::SojournData negative;
  negative.durations = {1.0, -0.5, 2.0};
  REQUIRE_THROWS_AS(fyp::estimate_log_moments(negative), fyp::DomainError);

  fyp::SojournData data;
  data.durations = {0.5, 1.2, 0.3};
  // Three arbitrary points imply an order beyond the bracket: no root.
  REQUIRE_THROWS_AS(fyp::estimate_log_moments(data), fyp::NoRootError);

  // kappa2 at or above the bracket ceiling can never be admissible.
  fyp::RandomStream rng(17, 0);
  fyp::SojournData sim;
  double prev = 0.0;
  const auto path = fyp::simulate_path_alg2(rng, {0.8, 1.0}, 50);
  for (double b : path.birth_times) {
    sim.durations.push_back(b - prev);
    prev = b;
  }
  REQUIRE_THROWS_AS(fyp::estimate_fractional_moments(sim, 0.6, 1.25),
                    fyp::KappaTooLargeError);
  REQUIRE_THROWS_AS(fyp::estimate_fractional_moments(sim, 0.10, 0.05),
                    fyp::DomainError);
}

TEST_CASE("no-root reporting carries both bracket residuals") {
  fyp::SojournData data;
  data.durations = {0.5, 1.2, 0.3};
  try {
    fyp::estimate_log_moments(data);
    FAIL("expected NoRootError");
  } catch (const fyp::NoRootError &e) {
    REQUIRE(std::isfinite(e.residual_lo()));
    REQUIRE(std::isfinite(e.residual_hi()));
    REQUIRE(e.residual_lo() * e.residual_hi() > 0.0);
  }
}
