#include "qsixj/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsixj {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2Over6 = kPi * kPi / 6.0;
constexpr int kTerms = 30;

// zeta(2n) for n >= 1. Direct sum to K = 32 plus the Euler-Maclaurin tail
// through the K^{-s-5} term, below 1e-16 relative for s = 2n >= 4.
double zeta_even(int n) {
  if (n == 1) return kPi2Over6;
  const double s = 2.0 * n;
  constexpr int K = 32;
  double sum = 0.0;
  for (int k = K; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double Kd = K;
  const double d3 = s * (s + 1) * (s + 2), d5 = d3 * (s + 3) * (s + 4);
  sum += std::pow(Kd, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(Kd, -s) + s * std::pow(Kd, -s - 1.0) / 12.0 -
         d3 * std::pow(Kd, -s - 3.0) / 720.0 + d5 * std::pow(Kd, -s - 5.0) / 30240.0;
  return sum;
}

// Cl_2(x) = x - x log x + sum_n c_n x^{2n+1} on [0, 2pi), with
// c_n = |B_2n| / (2n (2n+1)!) = zeta(2n) / (n (2n+1) (2pi)^{2n}).
const std::array<double, kTerms>& clausen_coefficients() {
  static const std::array<double, kTerms> c = [] {
    std::array<double, kTerms> out{};
    for (int n = 1; n <= kTerms; ++n)
      out[n - 1] = zeta_even(n) / (n * (2.0 * n + 1.0) * std::pow(2.0 * kPi, 2.0 * n));
    return out;
  }();
  return c;
}

// B_2k / (2k+1)! = (-1)^{k+1} 2 zeta(2k) / ((2k+1) (2pi)^{2k}), the odd-power
// coefficients of Li_2 in u = -log(1 - z).
const std::array<double, kTerms>& bernoulli_dilog_coefficients() {
  static const std::array<double, kTerms> c = [] {
    std::array<double, kTerms> out{};
    for (int k = 1; k <= kTerms; ++k) {
      const double sign = (k % 2 == 1) ? 1.0 : -1.0;
      out[k - 1] = sign * 2.0 * zeta_even(k) / ((2.0 * k + 1.0) * std::pow(2.0 * kPi, 2.0 * k));
    }
    return out;
  }();
  return c;
}

// Cl_2 on [0, pi].
double clausen_reduced(double x) {
  if (x == 0.0) return 0.0;
  const auto& c = clausen_coefficients();
  const double x2 = x * x;
  double series = 0.0;
  for (int n = kTerms - 1; n >= 0; --n) series = series * x2 + c[n];
  return x - x * std::log(x) + series * x * x2;
}

// Li_2 for |z| <= 1, Re z <= 1/2: Bernoulli series in u = -log(1 - z), |u| < 1.1.
std::complex<double> dilog_bernoulli(std::complex<double> z) {
  const std::complex<double> u = -std::log(1.0 - z);
  const std::complex<double> u2 = u * u;
  const auto& c = bernoulli_dilog_coefficients();
  std::complex<double> series = 0.0;
  for (int k = kTerms - 1; k >= 0; --k) series = series * u2 + c[k];
  return u - 0.25 * u2 + series * u * u2;
}

std::complex<double> dilog_unit_disk(std::complex<double> z) {
  if (z.real() <= 0.5) return dilog_bernoulli(z);
  if (z == 1.0) return kPi2Over6;
  // Reflection: Li_2(z) = -Li_2(1-z) + pi^2/6 - log z log(1-z), with |1-z| <= 1.
  return -dilog_bernoulli(1.0 - z) + kPi2Over6 - std::log(z) * std::log(1.0 - z);
}

}  // namespace

double clausen2(double x) {
  double y = std::fmod(x, 2.0 * kPi);
  if (y < 0) y += 2.0 * kPi;
  if (y <= kPi) return clausen_reduced(y);
  return -clausen_reduced(2.0 * kPi - y);
}

double lobachevsky(double theta) {
  double y = std::fmod(theta, kPi);
  if (y < 0) y += kPi;
  // y in [0, pi): Lambda(y) = Cl_2(2y)/2, folded onto [0, pi/2] by oddness.
  if (y <= kPi / 2) return 0.5 * clausen_reduced(2.0 * y);
  return -0.5 * clausen_reduced(2.0 * (kPi - y));
}

std::complex<double> dilog(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() > 1.0)
    throw std::domain_error("dilog: argument " + std::to_string(z.real()) + " lies on the branch cut (1, inf)");
  if (z == 0.0) return 0.0;
  if (std::norm(z) <= 1.0) return dilog_unit_disk(z);
  // Inversion: Li_2(z) = -Li_2(1/z) - pi^2/6 - log(-z)^2 / 2.
  const std::complex<double> l = std::log(-z);
  return -dilog_unit_disk(1.0 / z) - kPi2Over6 - 0.5 * l * l;
}

}  // namespace qsixj
