#include "qsixj/qcore.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsixj/errors.hpp"

namespace qsixj {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(2 pi n / r) with the argument folded into [0, pi/2] first.
double sin_two_pi_ratio(long n, long r) {
  n %= r;
  if (n < 0) n += r;
  if (n == 0) return 0.0;
  double sign = 1.0;
  if (2 * n > r) {
    n = r - n;
    sign = -1.0;
  }
  // n/r in (0, 1/2]: use sin(pi - x) = sin x to stay below pi/2.
  if (4 * n > r) return sign * std::sin(kPi * static_cast<double>(r - 2 * n) / static_cast<double>(r));
  return sign * std::sin(2.0 * kPi * static_cast<double>(n) / static_cast<double>(r));
}

void check_range(const RootContext& ctx, int n, int hi, const char* what) {
  if (n < 0 || n > hi)
    throw std::range_error(std::string(what) + ": index " + std::to_string(n) + " outside [0, " +
                           std::to_string(hi) + "] for r = " + std::to_string(ctx.r()));
}

}  // namespace

RootContext::RootContext(int r) : r_(r) {
  if (r < 3 || r % 2 == 0) throw InputError("r must be odd and >= 3, got " + std::to_string(r));
  sin_base_ = sin_two_pi_ratio(1, r);
  qint_.resize(r + 1);
  for (int n = 0; n <= r; ++n) qint_[n] = sin_two_pi_ratio(n, r) / sin_base_;
  qint_[1] = 1.0;

  tables_.r = r;
  tables_.qint.resize(r);
  tables_.fact.resize(r);
  tables_.inv_fact.resize(r);
  for (int m = 0; m < r; ++m) tables_.qint[m] = SignedLog::from_double(qint_[m]);

  // log|[n]!| accumulated with Neumaier compensation; r terms of size O(log r).
  tables_.fact[0] = SignedLog::one();
  double sum = 0.0, comp = 0.0;
  int sign = 1;
  for (int n = 1; n < r; ++n) {
    const double term = std::log(std::abs(qint_[n]));
    const double t = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (qint_[n] < 0) sign = -sign;
    tables_.fact[n] = {sign, sum + comp};
  }
  for (int n = 0; n < r; ++n) tables_.inv_fact[n] = tables_.fact[n].inverse();
}

double RootContext::quantum_integer(int n) const {
  check_range(*this, n, r_, "quantum_integer");
  return qint_[n];
}

const SignedLog& RootContext::factorial(int n) const {
  check_range(*this, n, r_ - 1, "quantum_factorial");
  return tables_.fact[n];
}

double RootContext::log_abs_curly_factorial(int n) const {
  return factorial(n).log_mag + n * std::log(2.0 * sin_base_);
}

double quantum_integer(const RootContext& ctx, int n) { return ctx.quantum_integer(n); }
SignedLog quantum_factorial(const RootContext& ctx, int n) { return ctx.factorial(n); }
double log_abs_curly_factorial(const RootContext& ctx, int n) { return ctx.log_abs_curly_factorial(n); }

bool admissible_triple(const RootContext& ctx, int a, int b, int c) {
  const int top = ctx.r() - 2;
  if (a < 0 || b < 0 || c < 0 || a > top || b > top || c > top) return false;
  if (a + b < c || b + c < a || c + a < b) return false;
  const int s = a + b + c;
  return s <= 2 * top && s % 2 == 0;
}

bool admissible_six(const RootContext& ctx, const Coloring6& c) {
  for (const auto& t : kVertexTriples)
    if (!admissible_triple(ctx, c[t[0]], c[t[1]], c[t[2]])) return false;
  return true;
}

PhaseLog delta_triple(const RootContext& ctx, int a, int b, int c) {
  if (!admissible_triple(ctx, a, b, c))
    throw std::domain_error("delta_triple: (" + std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(c) + ") is not r-admissible");
  SignedLog radicand = SignedLog::one();
  multiply_delta_squared(ctx.tables(), a, b, c, radicand);
  return {false, 0.5 * radicand.log_mag, radicand.sign < 0 ? kPi / 2 : 0.0};
}

namespace {

SignedLog k_sum(const RootContext& ctx, const SixjShape& shape) {
  ShiftedSum sum;
  SignedLog term;
  accumulate_k_sum(ctx.tables(), shape, term, sum);
  return sum.value();
}

void require_admissible(const RootContext& ctx, const Coloring6& c, const char* what) {
  if (!admissible_six(ctx, c)) throw std::domain_error(std::string(what) + ": coloring is not r-admissible");
}

}  // namespace

PhaseLog sixj(const RootContext& ctx, const Coloring6& c) {
  require_admissible(ctx, c, "sixj");
  const SixjShape shape = sixj_shape(ctx.r(), c);
  const SignedLog s = k_sum(ctx, shape);
  if (s.is_zero()) return PhaseLog{};

  PhaseLog out = PhaseLog::from_signed(s);
  for (const auto& t : kVertexTriples) out *= delta_triple(ctx, c[t[0]], c[t[1]], c[t[2]]);
  // sqrt(-1)^{-sum a}
  out *= PhaseLog{false, 0.0, wrap_phase(-(kPi / 2) * (shape.color_sum % 4))};
  return out;
}

SignedLog sixj_squared(const RootContext& ctx, const Coloring6& c) {
  require_admissible(ctx, c, "sixj_squared");
  const SixjShape shape = sixj_shape(ctx.r(), c);
  const SignedLog s = k_sum(ctx, shape);
  if (s.is_zero()) return SignedLog::zero();
  SignedLog out;
  delta_squared_product(ctx.tables(), c, out);
  out *= s;
  out *= s;
  if (shape.color_sum & 1) out.negate();
  return out;
}

double h_kernel(const RootContext& ctx, int a, int b) {
  check_range(ctx, a, ctx.r() - 2, "h_kernel");
  check_range(ctx, b, ctx.r() - 2, "h_kernel");
  const long m = (static_cast<long>(a) + 1) * (static_cast<long>(b) + 1) % ctx.r();
  const double v = ctx.quantum_integer(static_cast<int>(m));
  return ((a + b) & 1) ? -v : v;
}

FactorialTables<MpReal> make_mp_tables(int r, long precision_bits) {
  if (r < 3 || r % 2 == 0) throw InputError("r must be odd and >= 3, got " + std::to_string(r));
  FactorialTables<MpReal> t;
  t.r = r;
  t.prototype = MpReal(precision_bits, 0);
  // Intermediate products carry extra guard bits before rounding into the tables.
  const long work = precision_bits + 32;
  const MpReal base = mp_sin_two_pi_ratio(1, r, work);
  t.qint.reserve(r);
  for (int m = 0; m < r; ++m) {
    MpReal v = mp_sin_two_pi_ratio(m, r, work);
    v /= base;
    MpReal rounded(precision_bits);
    rounded.assign(v);
    t.qint.push_back(std::move(rounded));
  }
  MpReal running(work, 1);
  t.fact.reserve(r);
  t.inv_fact.reserve(r);
  for (int n = 0; n < r; ++n) {
    if (n > 0) {
      MpReal q = mp_sin_two_pi_ratio(n, r, work);
      q /= base;
      running *= q;
    }
    MpReal f(precision_bits);
    f.assign(running);
    MpReal inv(work, 1);
    inv /= running;
    MpReal fi(precision_bits);
    fi.assign(inv);
    t.fact.push_back(std::move(f));
    t.inv_fact.push_back(std::move(fi));
  }
  return t;
}

}  // namespace qsixj
