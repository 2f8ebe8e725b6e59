#pragma once

// Conjecture runs: colorings from angles, Yhat_r over a list of odd r, the
// scaled growth (2 pi / r) log|Yhat_r| against 2 Vol, and a finite-size fit.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsixj/angle.hpp"
#include "qsixj/geometry.hpp"
#include "qsixj/transform.hpp"

namespace qsixj {

/// half and quarter_doubled give 2 pi b / r -> pi - theta; quarter_raw
/// tends to (pi - theta) / 2 instead. quarter_doubled is the
/// default: its colors are even, so every vertex sum is even and the
/// transform never vanishes for parity reasons; half leaves odd sums on
/// regular vertices and then Yhat_r is exactly zero.
enum class ColoringRule {
  half,             // floor(r (pi - theta) / (2 pi))
  quarter_doubled,  // 2 floor(r (pi - theta) / (4 pi))
  quarter_raw,      // floor(r (pi - theta) / (4 pi))
};

inline constexpr ColoringRule kDefaultColoringRule = ColoringRule::quarter_doubled;

std::string to_string(ColoringRule rule);
/// "half", "quarter-doubled", "quarter-raw". Throws InputError otherwise.
ColoringRule parse_coloring_rule(const std::string& text);

/// The rule's color for angle theta, clamped to [0, r-2]. Exact for angles
/// given as rational multiples of pi.
int coloring_for(int r, const Angle& theta, ColoringRule rule);
int coloring_for(int r, double theta, ColoringRule rule);

struct RunRecord {
  int r = 0;
  std::vector<int> b_I;
  std::vector<int> a_J;
  double log_mag_Y = 0.0;
  double phase_Y = 0.0;
  double scaled = 0.0;  // (2 pi / r) log_mag_Y
  double target = 0.0;  // 2 Vol
  double rel_err = 0.0;
  double wall_time = 0.0;
  ColoringRule rule = kDefaultColoringRule;
  std::string precision;
  /// No admissible term; log_mag_Y = scaled = -inf, rel_err = inf.
  bool empty_sum = false;
  /// Working precision covered the measured cancellation.
  bool resolved = true;

  double half_scaled() const { return scaled / 2.0; }
};

/// scaled and rel_err from r, log_mag_Y and target.
void refresh_derived(RunRecord& rec);

struct ConjectureOptions {
  DftOptions dft{};
  /// Exact angles per edge (deep angles on I, dihedral angles on J). When
  /// absent they are taken from the spec, deep angles via the geometry.
  std::optional<std::array<Angle, 6>> angles;
};

/// Colorings used for a given r: b_I then a_J in ascending edge order.
std::pair<std::vector<int>, std::vector<int>> conjecture_colorings(const std::array<Angle, 6>& angles,
                                                                   const DeepPartition& partition, int r,
                                                                   ColoringRule rule);

/// Per-edge angles of the spec: deep angles (solved from lengths if needed)
/// and regular dihedral angles, as plain doubles.
std::array<Angle, 6> spec_angles(const TetraSpec& spec);

/// Records in r order. Geometry failures throw GeometryError / SolverError
/// with the failing stage in the message.
std::vector<RunRecord> run_conjecture(const TetraSpec& spec, ColoringRule rule, std::span<const int> r_list,
                                      const ConjectureOptions& options = {});

struct FitResult {
  double limit_estimate = 0.0;
  double coef_logr_over_r = 0.0;
  double coef_1_over_r = 0.0;
  double residual_rms = 0.0;
  int points = 0;
};

/// Least squares scaled(r) = L + p log(r)/r + q/r over the finite records.
/// Throws SolverError with fewer than three distinct r.
FitResult fit_growth(std::span<const RunRecord> records);

}  // namespace qsixj
