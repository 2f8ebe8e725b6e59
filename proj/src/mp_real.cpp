#include "qsixj/mp_real.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace qsixj {

MpReal::MpReal(long precision_bits) { mpfr_init2(v_, precision_bits); }

MpReal::MpReal(long precision_bits, long value) {
  mpfr_init2(v_, precision_bits);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

MpReal::MpReal(const MpReal& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

MpReal::MpReal(MpReal&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

MpReal& MpReal::operator=(const MpReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

MpReal& MpReal::operator=(MpReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

MpReal::~MpReal() { mpfr_clear(v_); }

double MpReal::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double mant = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log(std::abs(mant)) + static_cast<double>(e) * std::numbers::ln2;
}

SignedLog MpReal::to_signed_log() const {
  if (is_zero()) return SignedLog::zero();
  return {sign() > 0 ? 1 : -1, log_abs()};
}

MpReal mp_sin_two_pi_ratio(long n, long r, long precision_bits) {
  const long guard = precision_bits + 32;
  MpReal angle(guard);
  mpfr_const_pi(angle.raw(), MPFR_RNDN);
  mpfr_mul_si(angle.raw(), angle.raw(), 2 * (n % r), MPFR_RNDN);
  mpfr_div_si(angle.raw(), angle.raw(), r, MPFR_RNDN);
  MpReal out(precision_bits);
  mpfr_sin(out.raw(), angle.raw(), MPFR_RNDN);
  return out;
}

double MpSum::max_log() const {
  if (empty()) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(max_exp_) * std::numbers::ln2;
}

}  // namespace qsixj
