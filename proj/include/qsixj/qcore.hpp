#pragma once

// Quantum integers, factorials, admissibility, Delta, the quantum 6j-symbol
// and the Fourier kernel H, all at q = e^{2 pi i / r} for odd r.

#include <vector>

#include "qsixj/kernel.hpp"
#include "qsixj/numeric.hpp"

namespace qsixj {

/// Precomputed data for one odd r >= 3. Immutable after construction; safe
/// to share between threads.
class RootContext {
 public:
  explicit RootContext(int r);

  int r() const { return r_; }
  /// sin(2 pi / r)
  double sin_base() const { return sin_base_; }

  /// [n] = sin(2 pi n / r) / sin(2 pi / r) for 0 <= n <= r.
  double quantum_integer(int n) const;
  /// [n]! for 0 <= n <= r-1.
  const SignedLog& factorial(int n) const;
  /// log |{n}!| = log |[n]!| + n log(2 sin(2 pi / r)).
  double log_abs_curly_factorial(int n) const;

  const FactorialTables<SignedLog>& tables() const { return tables_; }

 private:
  int r_;
  double sin_base_;
  std::vector<double> qint_;  // n = 0..r
  FactorialTables<SignedLog> tables_;
};

double quantum_integer(const RootContext& ctx, int n);
SignedLog quantum_factorial(const RootContext& ctx, int n);
double log_abs_curly_factorial(const RootContext& ctx, int n);

/// Entries in [0, r-2], triangle inequalities, a+b+c <= 2(r-2), a+b+c even.
bool admissible_triple(const RootContext& ctx, int a, int b, int c);
/// All four vertex triples admissible.
bool admissible_six(const RootContext& ctx, const Coloring6& c);

/// Delta(a,b,c). A negative radicand x gives sqrt(|x|) * i (phase +pi/2).
/// Throws std::domain_error for a non-admissible triple.
PhaseLog delta_triple(const RootContext& ctx, int a, int b, int c);

/// The quantum 6j-symbol. Its phase is always a multiple of pi/2.
/// Throws std::domain_error for a non-admissible coloring.
PhaseLog sixj(const RootContext& ctx, const Coloring6& c);

/// Square of the 6j-symbol, which is real: (-1)^{sum a} prod Delta^2 * S^2.
SignedLog sixj_squared(const RootContext& ctx, const Coloring6& c);

/// H(a,b) = (-1)^{a+b} [(a+1)(b+1)], real. Throws std::range_error unless
/// 0 <= a, b <= r-2.
double h_kernel(const RootContext& ctx, int a, int b);

}  // namespace qsixj
