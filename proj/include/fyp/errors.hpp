#ifndef FYP_ERRORS_HPP_
#define FYP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fyp {

// Invalid argument outside an operation's documented domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The requested value is mathematically finite but exceeds double range.
// `log_value` carries the natural log of the magnitude so callers can keep
// working in log space if they want to.
class OverflowSignal : public std::range_error {
 public:
  OverflowSignal(const std::string &msg, double log_value)
      : std::range_error(msg), log_value_(log_value) {}
  double log_value() const { return log_value_; }

 private:
  double log_value_;
};

// An alternating sum lost so many leading digits that the result would be
// noise, and no stable fallback was available.
class CancellationError : public std::runtime_error {
 public:
  CancellationError(const std::string &msg, double digits_lost)
      : std::runtime_error(msg), digits_lost_(digits_lost) {}
  double digits_lost() const { return digits_lost_; }

 private:
  double digits_lost_;
};

// Root bracketing failed: the estimating equation has the same sign at both
// ends of the search interval. Residuals at the ends are preserved for
// diagnostics.
class NoRootError : public std::runtime_error {
 public:
  NoRootError(const std::string &msg, double residual_lo, double residual_hi)
      : std::runtime_error(msg),
        residual_lo_(residual_lo),
        residual_hi_(residual_hi) {}
  double residual_lo() const { return residual_lo_; }
  double residual_hi() const { return residual_hi_; }

 private:
  double residual_lo_;
  double residual_hi_;
};

// The fitted fractional order came out at or below the larger moment order,
// so the moments used by the estimator do not exist under the fitted model.
class KappaTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data carry no usable variation (e.g. all durations identical).
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (bad CSV header, non-numeric field, wrong column
// count). Maps to the usage exit code in the CLI.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem-level failure (unwritable path, missing file). Maps to the
// I/O exit code in the CLI.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fyp

#endif  // FYP_ERRORS_HPP_
