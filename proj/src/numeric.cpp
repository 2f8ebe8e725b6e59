#include "qsixj/numeric.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsixj {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

double wrap_phase(double phase) {
  double w = std::remainder(phase, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

SignedLog SignedLog::from_double(double x) {
  if (x == 0.0) return zero();
  return {x > 0 ? 1 : -1, std::log(std::abs(x))};
}

double SignedLog::to_double() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_mag);
}

SignedLog& SignedLog::operator/=(const SignedLog& o) {
  if (o.sign == 0) throw std::domain_error("SignedLog: division by zero");
  sign *= o.sign;
  log_mag -= o.log_mag;
  return *this;
}

SignedLog SignedLog::inverse() const {
  if (sign == 0) throw std::domain_error("SignedLog: inverse of zero");
  return {sign, -log_mag};
}

PhaseLog PhaseLog::from_signed(const SignedLog& s) {
  if (s.sign == 0) return {};
  return {false, s.log_mag, s.sign > 0 ? 0.0 : kPi};
}

PhaseLog PhaseLog::from_complex(std::complex<double> z) {
  if (z == 0.0) return {};
  return {false, std::log(std::abs(z)), wrap_phase(std::arg(z))};
}

std::complex<double> PhaseLog::to_complex() const {
  if (zero) return {0.0, 0.0};
  return std::polar(std::exp(log_mag), phase);
}

PhaseLog& PhaseLog::operator*=(const PhaseLog& o) {
  if (zero || o.zero) {
    *this = PhaseLog{};
    return *this;
  }
  log_mag += o.log_mag;
  phase = wrap_phase(phase + o.phase);
  return *this;
}

void ShiftedSum::add(const SignedLog& term) {
  if (term.sign == 0) return;
  if (term.log_mag > shift_) {
    mantissa_ = (shift_ == kNegInf) ? 0.0 : mantissa_ * std::exp(shift_ - term.log_mag);
    shift_ = term.log_mag;
    mantissa_ += term.sign;
  } else {
    mantissa_ += term.sign * std::exp(term.log_mag - shift_);
  }
}

void ShiftedSum::merge(const ShiftedSum& other) {
  if (other.empty()) return;
  if (empty()) {
    *this = other;
    return;
  }
  if (other.shift_ > shift_) {
    mantissa_ = mantissa_ * std::exp(shift_ - other.shift_) + other.mantissa_;
    shift_ = other.shift_;
  } else {
    mantissa_ += other.mantissa_ * std::exp(other.shift_ - shift_);
  }
}

SignedLog ShiftedSum::value() const {
  if (empty() || mantissa_ == 0.0) return SignedLog::zero();
  return {mantissa_ > 0 ? 1 : -1, shift_ + std::log(std::abs(mantissa_))};
}

double relative_discrepancy(const SignedLog& x, const SignedLog& y) {
  if (x.sign == 0 && y.sign == 0) return 0.0;
  if (x.sign == 0 || y.sign == 0) return 1.0;
  const double hi = std::max(x.log_mag, y.log_mag);
  const double lo = std::min(x.log_mag, y.log_mag);
  // |x - y| / max = |1 -+ e^{lo - hi}|
  if (x.sign == y.sign) return -std::expm1(lo - hi);
  return 1.0 + std::exp(lo - hi);
}

}  // namespace qsixj
