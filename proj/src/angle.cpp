#include "qsixj/angle.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qsixj/errors.hpp"

namespace qsixj {

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

bool parse_int(std::string_view s, long long& out) {
  if (s.empty()) return false;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

void check_range(double v, const std::string& text) {
  if (!(v >= 0.0 && v <= std::numbers::pi * (1.0 + 1e-15)))
    throw InputError("angle '" + text + "' outside [0, pi]");
}

}  // namespace

Angle Angle::pi_fraction(long long num, long long den) {
  if (den <= 0) throw InputError("angle denominator must be positive");
  const long long g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Angle a{std::numbers::pi * static_cast<double>(num) / static_cast<double>(den), num, den};
  if (num < 0 || num > den) throw InputError("angle " + a.to_string() + " outside [0, pi]");
  return a;
}

Angle Angle::parse(const std::string& text) {
  const std::string s = strip(text);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) throw InputError("cannot parse angle '" + text + "'");
    check_range(v, text);
    if (v == 0.0) return pi_fraction(0, 1);
    return from_double(v);
  }
  std::string_view head(s.data(), pos);
  if (!head.empty() && head.back() == '*') head.remove_suffix(1);
  std::string_view tail(s.data() + pos + 2, s.size() - pos - 2);
  long long num = 1, den = 1;
  if (!head.empty() && !parse_int(head, num)) throw InputError("cannot parse angle '" + text + "'");
  if (!tail.empty()) {
    if (tail.front() != '/' || !parse_int(tail.substr(1), den)) throw InputError("cannot parse angle '" + text + "'");
  }
  return pi_fraction(num, den);
}

std::string Angle::to_string() const {
  if (!exact()) {
    char buf[32];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, p);
  }
  if (*num == 0) return "0";
  std::string s = (*num == 1 ? "" : std::to_string(*num)) + "pi";
  if (*den != 1) s += "/" + std::to_string(*den);
  return s;
}

}  // namespace qsixj
