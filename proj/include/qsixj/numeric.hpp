#pragma once

// Scalars with a huge dynamic range. Quantum factorials at r ~ 10^4 reach
// magnitudes e^{+-10^4}, far outside double's exponent range, so every
// quantity in the summation core is carried as a (sign, log|x|) pair or a
// (log|x|, phase) pair.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace qsixj {

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

/// sign * e^{log_mag}; sign == 0 encodes an exact zero.
struct SignedLog {
  int sign = 0;
  double log_mag = 0.0;

  static SignedLog zero() { return {}; }
  static SignedLog one() { return {1, 0.0}; }
  static SignedLog from_double(double x);

  bool is_zero() const { return sign == 0; }
  /// Plain double; overflows to +-inf / underflows to 0 outside double range.
  double to_double() const;

  void negate() { sign = -sign; }
  void assign(const SignedLog& other) { *this = other; }

  SignedLog& operator*=(const SignedLog& o) {
    sign *= o.sign;
    log_mag += o.log_mag;
    return *this;
  }
  SignedLog& operator/=(const SignedLog& o);
  SignedLog inverse() const;
};

inline SignedLog operator*(SignedLog a, const SignedLog& b) { return a *= b; }
inline SignedLog operator/(SignedLog a, const SignedLog& b) { return a /= b; }

/// e^{log_mag} * e^{i phase}. Phase is kept wrapped into (-pi, pi].
struct PhaseLog {
  bool zero = true;
  double log_mag = 0.0;
  double phase = 0.0;

  static PhaseLog one() { return {false, 0.0, 0.0}; }
  static PhaseLog from_signed(const SignedLog& s);
  static PhaseLog from_complex(std::complex<double> z);

  std::complex<double> to_complex() const;

  PhaseLog& operator*=(const PhaseLog& o);
};

inline PhaseLog operator*(PhaseLog a, const PhaseLog& b) { return a *= b; }

/// Streaming signed sum of SignedLog terms. The mantissa is kept relative to
/// the largest term magnitude seen so far; a new maximum rescales the
/// mantissa before the new term is added.
class ShiftedSum {
 public:
  void add(const SignedLog& term);
  /// Adds a partial sum computed elsewhere (chunked reductions).
  void merge(const ShiftedSum& other);

  SignedLog value() const;
  /// log of the largest |term| added, -inf when nothing was added.
  double max_log() const { return shift_; }
  bool empty() const { return shift_ == -std::numeric_limits<double>::infinity(); }
  void reset() { *this = ShiftedSum{}; }

 private:
  double shift_ = -std::numeric_limits<double>::infinity();
  double mantissa_ = 0.0;
};

/// Relative discrepancy |x - y| / max(|x|, |y|) of two SignedLog values,
/// evaluated without leaving the log domain. Two exact zeros give 0.
double relative_discrepancy(const SignedLog& x, const SignedLog& y);

}  // namespace qsixj
