#pragma once

// Number-type-generic pieces of the 6j evaluation shared by qcore (sixj) and
// transform (the DFT engine). Num is either SignedLog (log-domain double) or
// MpReal (MPFR); both expose assign / operator*= / negate, and NumTraits
// supplies the matching streaming sum.

#include <algorithm>
#include <array>
#include <vector>

#include "qsixj/mp_real.hpp"
#include "qsixj/numeric.hpp"

namespace qsixj {

/// Colorings a_1..a_6; edge k lives at index k-1.
using Coloring6 = std::array<int, 6>;

/// The four vertex triples (a1,a2,a3), (a1,a5,a6), (a2,a4,a6), (a3,a4,a5).
inline constexpr std::array<std::array<int, 3>, 4> kVertexTriples{
    {{0, 1, 2}, {0, 4, 5}, {1, 3, 5}, {2, 3, 4}}};

/// The three quadrilaterals (a1,a2,a4,a5), (a1,a3,a4,a6), (a2,a3,a5,a6).
inline constexpr std::array<std::array<int, 4>, 3> kQuadrilaterals{
    {{0, 1, 3, 4}, {0, 2, 3, 5}, {1, 2, 4, 5}}};

/// Tables of [n], [n]! and 1/[n]! for n = 0..r-1 in one number type.
/// qint is indexed modulo r so that H(a,b) = (-1)^{a+b} qint[(a+1)(b+1) mod r].
template <class Num>
struct FactorialTables {
  int r = 0;
  Num prototype;  // zero of the right precision, copied to make scratch values
  std::vector<Num> qint;
  std::vector<Num> fact;
  std::vector<Num> inv_fact;
};

/// Builds the MPFR tables at the given precision (O(r) multiplications).
FactorialTables<MpReal> make_mp_tables(int r, long precision_bits);

template <class Num>
struct NumTraits;

template <>
struct NumTraits<SignedLog> {
  using Sum = ShiftedSum;
  static Sum make_sum(const FactorialTables<SignedLog>&) { return {}; }
  static SignedLog to_signed_log(const SignedLog& x) { return x; }
  static constexpr bool kExtended = false;
};

template <>
struct NumTraits<MpReal> {
  using Sum = MpSum;
  static Sum make_sum(const FactorialTables<MpReal>& t) { return MpSum(t.prototype.precision()); }
  static SignedLog to_signed_log(const MpReal& x) { return x.to_signed_log(); }
  static constexpr bool kExtended = true;
};

/// Summation bounds of the 6j k-sum for one admissible coloring.
struct SixjShape {
  std::array<int, 4> T{};
  std::array<int, 3> Q{};
  int kmin = 0;
  int kmax = -1;
  int color_sum = 0;
};

inline SixjShape sixj_shape(int r, const Coloring6& a) {
  SixjShape s;
  for (int v = 0; v < 4; ++v) {
    const auto& t = kVertexTriples[v];
    s.T[v] = (a[t[0]] + a[t[1]] + a[t[2]]) / 2;
  }
  for (int j = 0; j < 3; ++j) {
    const auto& q = kQuadrilaterals[j];
    s.Q[j] = (a[q[0]] + a[q[1]] + a[q[2]] + a[q[3]]) / 2;
  }
  s.kmin = std::max(std::max(s.T[0], s.T[1]), std::max(s.T[2], s.T[3]));
  // Terms with k >= r-1 contain [r] = 0 in [k+1]!, so the cap only drops zeros.
  s.kmax = std::min(std::min(s.Q[0], s.Q[1]), std::min(s.Q[2], r - 2));
  for (int x : a) s.color_sum += x;
  return s;
}

/// Accumulates sum_k (-1)^k [k+1]! / ([k-T1]!...[k-T4]! [Q1-k]! [Q2-k]! [Q3-k]!)
/// into `out`, using `term` as scratch.
template <class Num, class Sum>
void accumulate_k_sum(const FactorialTables<Num>& t, const SixjShape& s, Num& term, Sum& out) {
  for (int k = s.kmin; k <= s.kmax; ++k) {
    term.assign(t.fact[k + 1]);
    term *= t.inv_fact[k - s.T[0]];
    term *= t.inv_fact[k - s.T[1]];
    term *= t.inv_fact[k - s.T[2]];
    term *= t.inv_fact[k - s.T[3]];
    term *= t.inv_fact[s.Q[0] - k];
    term *= t.inv_fact[s.Q[1] - k];
    term *= t.inv_fact[s.Q[2] - k];
    if (k & 1) term.negate();
    out.add(term);
  }
}

/// Radicand of Delta(a,b,c)^2 = [(a+b-c)/2]! [(b+c-a)/2]! [(c+a-b)/2]! / [(a+b+c)/2+1]!,
/// multiplied into `acc`.
template <class Num>
void multiply_delta_squared(const FactorialTables<Num>& t, int a, int b, int c, Num& acc) {
  acc *= t.fact[(a + b - c) / 2];
  acc *= t.fact[(b + c - a) / 2];
  acc *= t.fact[(c + a - b) / 2];
  acc *= t.inv_fact[(a + b + c) / 2 + 1];
}

/// Product of the four Delta^2 radicands of a coloring, written into `acc`.
template <class Num>
void delta_squared_product(const FactorialTables<Num>& t, const Coloring6& a, Num& acc) {
  acc.assign(t.fact[0]);
  for (const auto& tri : kVertexTriples) multiply_delta_squared(t, a[tri[0]], a[tri[1]], a[tri[2]], acc);
}

}  // namespace qsixj
