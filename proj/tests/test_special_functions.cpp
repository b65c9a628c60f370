#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <numbers>

#include "fyp/special_functions.hpp"
#include "reference_tables.hpp"

namespace {

// Scaled complementary error function, e^{x^2} erfc(x). Safe to assemble
// directly for the x below 20 used here: erfc stays normal and the exp
// rounding costs at most x^2 * eps relative.
double erfcx_ref(double x) { return std::exp(x * x) * std::erfc(x); }

}  // namespace

TEST_CASE("mittag_leffler reduces to exp at alpha=beta=1") {
  for (double z = -20.0; z <= 20.0; z += 0.5) {
    const double want = std::exp(z);
    REQUIRE(fyp::mittag_leffler(1.0, 1.0, z) ==
            Catch::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("mittag_leffler matches the erfc closed forms at alpha=1/2") {
  // E_{1/2,1}(-x) = e^{x^2} erfc(x) and E_{1/2,1/2}(-x) = 1/sqrt(pi) - x
  // times that, both valid on the whole negative axis.
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  for (double x = 0.0; x <= 20.0; x += 0.25) {
    const double scaled = erfcx_ref(x);
    REQUIRE(fyp::mittag_leffler(0.5, 1.0, -x) ==
            Catch::Approx(scaled).epsilon(1e-9).margin(1e-12));
    REQUIRE(fyp::mittag_leffler(0.5, 0.5, -x) ==
            Catch::Approx(inv_sqrt_pi - x * scaled).epsilon(1e-9).margin(
                1e-12));
  }
  // Positive axis: E_{1/2,1}(x) = e^{x^2} erfc(-x).
  for (double x = 0.25; x <= 5.0; x += 0.25) {
    REQUIRE(fyp::mittag_leffler(0.5, 1.0, x) ==
            Catch::Approx(std::exp(x * x) * std::erfc(-x)).epsilon(1e-10));
  }
}

TEST_CASE("mittag_leffler matches precomputed references on the negative axis") {
  const std::size_t rows = sizeof(fyp_test::kMLRefs) / sizeof(fyp_test::kMLRefs[0]);
  for (std::size_t i = 0; i < rows; ++i) {
    const double *row = fyp_test::kMLRefs[i];
    INFO("alpha=" << row[0] << " beta=" << row[1] << " x=" << row[2]);
    REQUIRE(fyp::mittag_leffler(row[0], row[1], -row[2]) ==
            Catch::Approx(row[3]).epsilon(1e-9));
  }
}

TEST_CASE("mittag_leffler recurrence ties beta to beta+alpha") {
  // E_{a,b}(z) = 1/Gamma(b) + z E_{a,a+b}(z), straight from the series.
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (double z : {-30.0, -4.0, -0.7, 0.9, 3.0}) {
      const double lhs = fyp::mittag_leffler(alpha, 1.0, z);
      const double rhs = fyp::reciprocal_gamma(1.0) +
                         z * fyp::mittag_leffler(alpha, 1.0 + alpha, z);
      REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-9).margin(1e-13));
    }
  }
}

TEST_CASE("mittag_leffler is completely monotone on the negative axis") {
  // For 0 < alpha <= 1, beta >= alpha the function decreases in x and stays
  // inside (0, 1/Gamma(beta)].
  for (double alpha : {0.1, 0.4, 0.7, 0.95}) {
    double prev = fyp::reciprocal_gamma(1.0);
    for (double x = 0.125; x <= 4000.0; x *= 2.0) {
      const double v = fyp::mittag_leffler(alpha, 1.0, -x);
      REQUIRE(v > 0.0);
      REQUIRE(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("mittag_leffler rejects bad arguments") {
  REQUIRE_THROWS_AS(fyp::mittag_leffler(0.0, 1.0, 1.0), fyp::DomainError);
  REQUIRE_THROWS_AS(fyp::mittag_leffler(-0.5, 1.0, 1.0), fyp::DomainError);
  REQUIRE_THROWS_AS(fyp::mittag_leffler(0.5, 0.0, 1.0), fyp::DomainError);
}

TEST_CASE("wright_m_density is the half gaussian at nu=1/2") {
  const double c = 1.0 / std::sqrt(std::numbers::pi);
  for (double x = 0.0; x <= 10.0; x += 0.125) {
    const double want = c * std::exp(-x * x / 4.0);
    REQUIRE(fyp::wright_m_density(0.5, x) ==
            Catch::Approx(want).epsilon(1e-8).margin(1e-30));
  }
}

TEST_CASE("wright_m_density matches precomputed references") {
  const std::size_t rows =
      sizeof(fyp_test::kWrightRefs) / sizeof(fyp_test::kWrightRefs[0]);
  for (std::size_t i = 0; i < rows; ++i) {
    const double *row = fyp_test::kWrightRefs[i];
    INFO("nu=" << row[0] << " x=" << row[1]);
    REQUIRE(fyp::wright_m_density(row[0], row[1]) ==
            Catch::Approx(row[2]).epsilon(1e-8));
  }
}

TEST_CASE("wright_m_density normalizes and carries the known mean") {
  // Simpson over the effective support; the density is smooth, positive,
  // and decays faster than exponentially.
  for (double nu : {0.25, 0.5, 0.75}) {
    const double x_hi = std::pow(45.0 / fyp::detail::kanter_a0(nu), 1.0 - nu);
    const int n = 4000;  // even
    const double h = x_hi / n;
    double mass = 0.0, mean = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = i * h;
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const double f = fyp::wright_m_density(nu, x);
      REQUIRE(f >= 0.0);
      mass += w * f;
      mean += w * x * f;
    }
    mass *= h / 3.0;
    mean *= h / 3.0;
    REQUIRE(mass == Catch::Approx(1.0).epsilon(1e-6));
    REQUIRE(mean ==
            Catch::Approx(fyp::reciprocal_gamma(1.0 + nu)).epsilon(1e-5));
  }
}

TEST_CASE("one_sided_stable_pdf integrates to one") {
  // Integrate in log coordinates. The left edge is probed downward until the
  // density is dead (it falls super-exponentially there, but evaluating it
  // deep in that region is expensive), and the quadrature stops at e^12
  // where per-point cost starts to climb; the remaining tail mass comes from
  // the survival series (1/pi) sum_k (-1)^(k+1) Gamma(k nu) sin(pi k nu)
  // T^(-k nu) / k!, whose k=1 term is the familiar T^(-nu) / Gamma(1 - nu).
  for (double nu : {0.3, 0.6, 0.9}) {
    double y_lo = 0.0;
    while (fyp::detail::one_sided_stable_pdf(nu, std::exp(y_lo)) > 1e-30) {
      y_lo -= 1.0;
    }
    y_lo -= 2.0;
    const double y_hi = 12.0;
    const int n = 1200;  // even
    const double h = (y_hi - y_lo) / n;
    double mass = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double y = y_lo + i * h;
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const double s = std::exp(y);
      mass += w * s * fyp::detail::one_sided_stable_pdf(nu, s);
    }
    mass *= h / 3.0;
    double sign = 1.0;
    double factorial = 1.0;
    for (int k = 1; k <= 4; ++k, sign = -sign) {
      factorial *= k;
      mass += sign * std::tgamma(k * nu) *
              std::sin(std::numbers::pi * k * nu) *
              std::exp(-k * nu * y_hi) / (std::numbers::pi * factorial);
    }
    REQUIRE(mass == Catch::Approx(1.0).epsilon(1e-5));
  }
}

TEST_CASE("spectral_density is positive, normalized, and symmetric in log") {
  for (double nu : {0.2, 0.5, 0.8}) {
    // The spectral mass lives against deta/eta: substituting eta = e^y turns
    // the normalization into int g(e^y) dy = 1 with exp(-nu |y|) tails.
    const double y_hi = 60.0 / nu;
    const int n = 400000;
    const double h = 2.0 * y_hi / n;
    double mass = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double y = -y_hi + i * h;
      const double g = fyp::spectral_density(nu, std::exp(y));
      REQUIRE(g >= 0.0);
      mass += ((i == 0 || i == n) ? 0.5 : 1.0) * h * g;
    }
    REQUIRE(mass == Catch::Approx(1.0).epsilon(1e-6));
    // eta^nu + eta^(-nu) is invariant under eta -> 1/eta, so g is too.
    for (double eta : {0.1, 0.7, 2.5}) {
      REQUIRE(fyp::spectral_density(nu, eta) ==
              Catch::Approx(fyp::spectral_density(nu, 1.0 / eta))
                  .epsilon(1e-12));
    }
  }
}
