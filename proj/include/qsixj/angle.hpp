#pragma once

#include <optional>
#include <string>

namespace qsixj {

/// An angle in [0, pi], remembering an exact rational multiple of pi when it
/// was given as one ("pi/5", "2pi/13", "3*pi/11", "0", "pi"). Coloring rules
/// floor against the exact fraction so that r(pi - theta)/(2pi) never lands a
/// rounding error away from an integer.
struct Angle {
  double value = 0.0;
  /// value = num * pi / den, den > 0.
  std::optional<long long> num, den;

  static Angle from_double(double v) { return Angle{v, std::nullopt, std::nullopt}; }
  static Angle pi_fraction(long long num, long long den);
  /// Throws InputError on malformed text or a value outside [0, pi].
  static Angle parse(const std::string& text);

  bool exact() const { return num.has_value(); }
  std::string to_string() const;
};

}  // namespace qsixj
