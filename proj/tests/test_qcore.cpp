#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "qsixj/errors.hpp"
#include "qsixj/qcore.hpp"
#include "qsixj/special.hpp"

using namespace qsixj;

TEST_CASE("quantum integers") {
  const RootContext c5(5), c7(7);
  CHECK(quantum_integer(c5, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(quantum_integer(c5, 2) == doctest::Approx(0.6180339887).epsilon(1e-10));
  CHECK(quantum_integer(c7, 5) < 0);
  CHECK(quantum_integer(c7, 7) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(quantum_integer(c7, 8), std::range_error);
  CHECK_THROWS_AS(quantum_integer(c7, -1), std::range_error);
}

TEST_CASE("r must be odd") {
  CHECK_THROWS_AS(RootContext(6), InputError);
  CHECK_THROWS_AS(RootContext(1), InputError);
  CHECK_NOTHROW(RootContext(3));
}

TEST_CASE("factorial table") {
  for (int r : {7, 101, 1001}) {
    const RootContext c(r);
    CHECK(c.factorial(0).sign == 1);
    CHECK(c.factorial(0).log_mag == 0.0);
    for (int n = 1; n <= r - 1; ++n) {
      REQUIRE(!c.factorial(n).is_zero());
      const SignedLog ratio = c.factorial(n) / c.factorial(n - 1);
      const double q = quantum_integer(c, n);
      CHECK(ratio.to_double() == doctest::Approx(q).epsilon(1e-12));
    }
  }
  const RootContext c7(7);
  const double p = quantum_integer(c7, 1) * quantum_integer(c7, 2) * quantum_integer(c7, 3);
  CHECK(quantum_factorial(c7, 3).to_double() == doctest::Approx(p).epsilon(1e-12));
  CHECK_THROWS_AS(quantum_factorial(c7, 7), std::range_error);
}

TEST_CASE("curly factorial against the Lobachevsky function") {
  for (int r : {101, 1001}) {
    const RootContext c(r);
    double worst = 0;
    for (int n = 1; n < r; ++n) {
      const double lhs = log_abs_curly_factorial(c, n);
      const double rhs = -r / (2 * std::numbers::pi) * lobachevsky(2 * std::numbers::pi * n / r);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst <= 3 * std::log(r));
  }
  const RootContext c(101);
  const double rhs = -101 / (2 * std::numbers::pi) * lobachevsky(140 * std::numbers::pi / 101);
  CHECK(std::abs(log_abs_curly_factorial(c, 70) - rhs) <= 3 * std::log(101.0));
}

TEST_CASE("admissibility") {
  const RootContext c7(7), c5(5);
  CHECK(admissible_triple(c7, 2, 2, 2));
  CHECK_FALSE(admissible_triple(c7, 1, 1, 1));
  CHECK_FALSE(admissible_triple(c7, 4, 4, 4));
  CHECK_FALSE(admissible_triple(c7, -2, 2, 0));
  CHECK_FALSE(admissible_triple(c7, 6, 6, 0));
  CHECK(admissible_six(c5, {2, 2, 2, 2, 2, 2}));
  CHECK(admissible_six(c5, {0, 0, 0, 0, 0, 0}));
  CHECK_FALSE(admissible_six(c5, {2, 0, 0, 0, 0, 0}));
}

TEST_CASE("delta") {
  const RootContext c7(7);
  const PhaseLog d0 = delta_triple(c7, 0, 0, 0);
  CHECK(d0.log_mag == doctest::Approx(0.0));
  CHECK(d0.phase == 0.0);
  const oracle::Oracle o(7);
  const auto ref = o.delta(2, 2, 2);
  CHECK(std::abs(delta_triple(c7, 2, 2, 2).to_complex() - std::complex<double>(ref)) < 1e-12);
  CHECK(delta_triple(c7, 2, 4, 2).log_mag == doctest::Approx(delta_triple(c7, 4, 2, 2).log_mag));
  CHECK_THROWS_AS(delta_triple(c7, 1, 1, 1), std::domain_error);
  // A negative radicand gives phase +pi/2.
  bool saw_imaginary = false;
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b)
      for (int cc = 0; cc <= 5; ++cc) {
        if (!admissible_triple(c7, a, b, cc)) continue;
        const PhaseLog d = delta_triple(c7, a, b, cc);
        CHECK((d.phase == 0.0 || d.phase == doctest::Approx(std::numbers::pi / 2)));
        saw_imaginary |= d.phase != 0.0;
        CHECK(std::abs(d.to_complex() - std::complex<double>(o.delta(a, b, cc))) < 1e-12 * std::exp(d.log_mag) + 1e-15);
      }
  CHECK(saw_imaginary);
}

TEST_CASE("6j trivial values and symmetry") {
  const RootContext c7(7), c5(5);
  const PhaseLog one = sixj(c7, {0, 0, 0, 0, 0, 0});
  CHECK(one.log_mag == doctest::Approx(0.0));
  CHECK(one.phase == 0.0);
  const oracle::Oracle o(5);
  CHECK(std::abs(sixj(c5, {2, 2, 2, 2, 2, 2}).to_complex() - std::complex<double>(o.sixj({2, 2, 2, 2, 2, 2}))) <
        1e-12);
  const Coloring6 a{2, 4, 4, 2, 4, 2};
  const Coloring6 b{4, 2, 4, 4, 2, 2};  // (a2,a1,a3,a5,a4,a6)
  REQUIRE(admissible_six(c7, a));
  CHECK(std::abs(sixj(c7, a).to_complex() - sixj(c7, b).to_complex()) < 1e-12);
  CHECK_THROWS_AS(sixj(c7, {1, 0, 0, 0, 0, 0}), std::domain_error);
}

TEST_CASE("6j against the brute-force oracle, phase a multiple of pi/2") {
  for (int r : {5, 7, 9}) {
    const RootContext c(r);
    const oracle::Oracle o(r);
    int checked = 0;
    Coloring6 a{};
    for (a[0] = 0; a[0] <= r - 2; ++a[0])
      for (a[1] = 0; a[1] <= r - 2; ++a[1])
        for (a[2] = 0; a[2] <= r - 2; ++a[2])
          for (a[3] = 0; a[3] <= r - 2; ++a[3])
            for (a[4] = 0; a[4] <= r - 2; ++a[4])
              for (a[5] = 0; a[5] <= r - 2; ++a[5]) {
                if (!admissible_six(c, a)) continue;
                long double scale = 0;
                const auto ref = o.sixj(a, &scale);
                const PhaseLog v = sixj(c, a);
                CHECK(oracle::rel_err(v.to_complex(), ref, scale) <= 1e-10L);
                if (!v.zero) {
                  const double k = v.phase / (std::numbers::pi / 2);
                  CHECK(std::abs(k - std::round(k)) < 1e-12);
                  const SignedLog sq = sixj_squared(c, a);
                  CHECK(oracle::rel_err(sq.to_double(), ref * ref, scale * scale) <= 1e-10L);
                }
                ++checked;
              }
    CHECK(checked > 0);
  }
}

TEST_CASE("kernel") {
  const RootContext c7(7);
  CHECK(h_kernel(c7, 0, 0) == doctest::Approx(1.0));
  CHECK(h_kernel(c7, 5, 0) == doctest::Approx(1.0));
  const oracle::Oracle o(7);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) {
      CHECK(h_kernel(c7, a, b) == h_kernel(c7, b, a));
      CHECK(h_kernel(c7, a, b) == doctest::Approx(static_cast<double>(o.H(a, b).real())).epsilon(1e-12));
    }
  CHECK_THROWS_AS(h_kernel(c7, 6, 0), std::range_error);
}
