#pragma once

// Brute-force reference values written straight from the definitions in
// plain std::complex<long double>: q = e^{2 pi i / r}, [n] = (q^n - q^-n)/(q - q^-1),
// the uncapped k-sum, and a nested loop over every a_I in [0, r-2]^I.
// Shares no code with the library.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cld = std::complex<long double>;

struct Oracle {
  int r;
  cld q;

  std::vector<cld> facts;  // [n]! for n <= 2r, products of the definition

  explicit Oracle(int r_) : r(r_), q(std::polar(1.0L, 2.0L * std::numbers::pi_v<long double> / r_)) {
    facts.push_back(1.0L);
    for (int k = 1; k <= 2 * r; ++k) facts.push_back(facts.back() * qint(k));
  }

  cld qint(int n) const { return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0L / q); }

  cld fact(int n) const { return facts.at(n); }

  bool triple(int a, int b, int c) const {
    if (a < 0 || b < 0 || c < 0 || a > r - 2 || b > r - 2 || c > r - 2) return false;
    if (a + b < c || b + c < a || c + a < b) return false;
    if (a + b + c > 2 * (r - 2)) return false;
    return (a + b + c) % 2 == 0;
  }

  bool six(const std::array<int, 6>& a) const {
    return triple(a[0], a[1], a[2]) && triple(a[0], a[4], a[5]) && triple(a[1], a[3], a[5]) &&
           triple(a[2], a[3], a[4]);
  }

  cld delta(int a, int b, int c) const {
    // The radicand is real up to rounding.
    const long double x =
        (fact((a + b - c) / 2) * fact((b + c - a) / 2) * fact((c + a - b) / 2) / fact((a + b + c) / 2 + 1)).real();
    return x >= 0 ? cld(std::sqrt(x), 0) : cld(0, std::sqrt(-x));
  }

  /// The 6j-symbol and the largest |term| of its k-sum times the prefactor.
  cld sixj(const std::array<int, 6>& a, long double* scale = nullptr) const {
    const int T1 = (a[0] + a[1] + a[2]) / 2, T2 = (a[0] + a[4] + a[5]) / 2, T3 = (a[1] + a[3] + a[5]) / 2,
              T4 = (a[2] + a[3] + a[4]) / 2;
    const int Q1 = (a[0] + a[1] + a[3] + a[4]) / 2, Q2 = (a[0] + a[2] + a[3] + a[5]) / 2,
              Q3 = (a[1] + a[2] + a[4] + a[5]) / 2;
    const int kmin = std::max(std::max(T1, T2), std::max(T3, T4));
    const int kmax = std::min(Q1, std::min(Q2, Q3));
    int total = 0;
    for (int x : a) total += x;
    const cld pre = std::pow(cld(0, 1), -total) * delta(a[0], a[1], a[2]) * delta(a[0], a[4], a[5]) *
                    delta(a[1], a[3], a[5]) * delta(a[2], a[3], a[4]);
    cld sum = 0;
    long double big = 0;
    for (int k = kmin; k <= kmax; ++k) {
      const cld term = (k % 2 ? -1.0L : 1.0L) * fact(k + 1) /
                       (fact(k - T1) * fact(k - T2) * fact(k - T3) * fact(k - T4) * fact(Q1 - k) * fact(Q2 - k) *
                        fact(Q3 - k));
      sum += term;
      big = std::max(big, std::abs(term * pre));
    }
    if (scale) *scale = big;
    return pre * sum;
  }

  cld H(int a, int b) const { return ((a + b) % 2 ? -1.0L : 1.0L) * qint((a + 1) * (b + 1)); }

  /// Yhat(b_I; a_J) with `colors` holding b on deep edges and a on regular
  /// ones; `scale` receives the largest |term|.
  cld dft(const std::array<bool, 6>& deep, const std::array<int, 6>& colors, long double* scale = nullptr,
          long long* count = nullptr) const {
    std::vector<int> idx;
    for (int e = 0; e < 6; ++e)
      if (deep[e]) idx.push_back(e);
    std::array<int, 6> a = colors;
    std::vector<int> cur(idx.size(), 0);
    cld sum = 0;
    long double big = 0;
    long long n = 0;
    while (true) {
      for (std::size_t i = 0; i < idx.size(); ++i) a[idx[i]] = cur[i];
      if (six(a)) {
        cld w = 1;
        for (std::size_t i = 0; i < idx.size(); ++i) w *= H(cur[i], colors[idx[i]]);
        long double s6 = 0;
        const cld s = sixj(a, &s6);
        const cld term = w * s * s;
        sum += term;
        big = std::max({big, std::abs(term), std::abs(w) * s6 * s6});
        ++n;
      }
      std::size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++cur[i] <= r - 2) break;
        cur[i] = 0;
      }
      if (i == idx.size()) break;
    }
    if (scale) *scale = big;
    if (count) *count = n;
    return sum;
  }
};

/// |x - y| / max(|x|, |y|). Two values at or below floor * max(scale, 1),
/// scale being the largest term of the sum, are both zero to within the
/// rounding of the oracle and compare equal.
inline long double rel_err(cld x, cld y, long double scale = 0, long double floor = 1e-13L) {
  const long double m = std::max(std::abs(x), std::abs(y));
  if (m <= floor * std::max(scale, 1.0L)) return 0.0L;
  return std::abs(x - y) / m;
}

}  // namespace oracle
