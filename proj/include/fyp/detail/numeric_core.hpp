#ifndef FYP_DETAIL_NUMERIC_CORE_HPP_
#define FYP_DETAIL_NUMERIC_CORE_HPP_

// Small numeric building blocks shared across the library: compensated
// summation, long-double reciprocal gamma on the positive axis, and exact
// binomial coefficients for the alternating sums.

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <vector>

namespace fyp {
namespace detail {

// Neumaier's variant of Kahan summation. The running compensation also
// captures the case where the incoming term is larger than the partial sum,
// which happens constantly in the alternating binomial sums.
template <typename Real>
class CompensatedSum {
 public:
  void add(Real v) {
    Real t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

// 1/Gamma(x) for strictly positive x in long double, used inside series
// where the extra mantissa bits directly buy cancellation headroom.
// Gamma overflows long double near x = 1755; past that the reciprocal is a
// clean underflow-to-zero through exp(-lgamma).
inline long double rgamma_positive_l(long double x) {
  if (x > 1700.0L) return std::exp(-std::lgamma(x));
  return 1.0L / std::tgamma(x);
}

// Binomial coefficients C(n, 0..n) as exact doubles. Every value used here
// (n <= 64) is below 2^53, so the Pascal recurrence is exact.
inline std::vector<double> binomial_row(int n) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    row[static_cast<std::size_t>(k)] =
        row[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
  }
  return row;
}

}  // namespace detail
}  // namespace fyp

#endif  // FYP_DETAIL_NUMERIC_CORE_HPP_
