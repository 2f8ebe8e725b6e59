#pragma once

// Arbitrary-precision real number over MPFR, for sums whose terms cancel by
// more digits than a double carries. MPFR's exponent range (~2^62) absorbs
// the e^{O(r)} magnitudes of quantum factorials directly, so no log-domain
// bookkeeping is needed on this path.

#include <mpfr.h>

#include <algorithm>
#include <limits>

#include "qsixj/numeric.hpp"

namespace qsixj {

class MpReal {
 public:
  explicit MpReal(long precision_bits = 128);
  MpReal(long precision_bits, long value);
  MpReal(const MpReal& other);
  MpReal(MpReal&& other) noexcept;
  MpReal& operator=(const MpReal& other);
  MpReal& operator=(MpReal&& other) noexcept;
  ~MpReal();

  long precision() const { return mpfr_get_prec(v_); }

  /// Copies the value, rounding to this object's precision.
  void assign(const MpReal& other) { mpfr_set(v_, other.v_, MPFR_RNDN); }
  void set_zero() { mpfr_set_zero(v_, 1); }
  void set_long(long x) { mpfr_set_si(v_, x, MPFR_RNDN); }

  MpReal& operator*=(const MpReal& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator/=(const MpReal& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator+=(const MpReal& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MpReal& operator-=(const MpReal& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  void negate() { mpfr_neg(v_, v_, MPFR_RNDN); }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  /// Binary exponent e with 2^{e-1} <= |x| < 2^e; LONG_MIN for zero.
  long exponent2() const {
    return is_zero() ? std::numeric_limits<long>::min() : static_cast<long>(mpfr_get_exp(v_));
  }
  /// Natural log of |x|, computed in double; -inf for zero.
  double log_abs() const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  SignedLog to_signed_log() const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

/// sin(2 pi n / r) to the given precision.
MpReal mp_sin_two_pi_ratio(long n, long r, long precision_bits);

/// Plain MPFR summation that remembers the largest term exponent, which
/// measures how much cancellation happened.
class MpSum {
 public:
  explicit MpSum(long precision_bits) : sum_(precision_bits) { sum_.set_zero(); }

  void add(const MpReal& term) {
    if (term.is_zero()) return;
    max_exp_ = std::max(max_exp_, term.exponent2());
    sum_ += term;
  }
  void merge(const MpSum& other) {
    max_exp_ = std::max(max_exp_, other.max_exp_);
    sum_ += other.sum_;
  }
  void reset() {
    sum_.set_zero();
    max_exp_ = std::numeric_limits<long>::min();
  }

  const MpReal& value() const { return sum_; }
  /// Natural-log upper bound of the largest |term| added; -inf when empty.
  double max_log() const;
  bool empty() const { return max_exp_ == std::numeric_limits<long>::min(); }

 private:
  MpReal sum_;
  long max_exp_ = std::numeric_limits<long>::min();
};

}  // namespace qsixj
