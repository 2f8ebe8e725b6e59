#pragma once

// Discrete Fourier transform of the tetrahedral Yokota invariant,
//
//   Yhat_r(b_I; a_J) = sum over a_I  prod_{i in I} H(a_i, b_i) * sixj(a)^2,
//
// summed over every a_I in [0, r-2]^I that makes the full 6-tuple admissible.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsixj/partition.hpp"
#include "qsixj/qcore.hpp"

namespace qsixj {

struct DftInput {
  std::shared_ptr<const RootContext> ctx;
  DeepPartition partition;
  /// b_i on deep edges, a_j on regular edges.
  Coloring6 colors{};

  /// b_I in ascending deep-edge order, a_J in ascending regular-edge order.
  static DftInput make(std::shared_ptr<const RootContext> ctx, const DeepPartition& partition,
                       std::span<const int> b_deep, std::span<const int> a_regular);

  int r() const { return ctx->r(); }
  std::vector<int> b_deep() const;
  std::vector<int> a_regular() const;
  /// The input of the dual transform Yhat_r(a_J; b_I): blocks swapped,
  /// every edge keeps its color.
  DftInput dual() const;
  /// Blocks swapped on the planar-dual tetrahedron: edges 3 and 6 trade
  /// places (with their colors and roles), which turns faces into vertices.
  DftInput planar_dual() const;
  bool all_colors_even() const;
  /// Throws InputError when colors leave [0, r-2].
  void validate() const;
};

enum class PrecisionMode {
  log_double,  // log-domain doubles only
  automatic,   // log-domain first, MPFR with increasing precision until resolved
  fixed_bits,  // MPFR at a fixed precision
};

struct Precision {
  PrecisionMode mode = PrecisionMode::automatic;
  long bits = 0;  // fixed_bits only

  /// "double", "auto", or a bit count such as "256" / "mp:256".
  static Precision parse(const std::string& text);
  std::string to_string() const;
};

/// Deep colors summed over: the full range [0, r-2], or the even sublattice
/// {0, 2, ..., r-3} on which H squares to r/(4 sin^2(2pi/r)) times the identity.
enum class ColorSet { all, even };

struct DftOptions {
  Precision precision{};
  ColorSet color_set = ColorSet::all;
  /// Worker threads; 0 resolves through SIXJ_THREADS, then hardware concurrency.
  unsigned threads = 0;
  /// Evaluate |I| > 3 through the dual transform. Exact only for even sums
  /// with even colors, so ignored otherwise.
  bool duality_shortcut = true;
  /// Correct bits demanded of the result before the auto mode stops.
  double target_bits = 40.0;
  long max_bits = 8192;
  /// Expected log|Yhat| (e.g. from the volume); seeds the first MPFR precision.
  std::optional<double> expected_log_mag;
};

struct DftResult {
  PhaseLog value;
  bool empty_sum = false;
  long long term_count = 0;
  /// log of the largest term magnitude bound met while summing.
  double max_term_log = 0.0;
  /// Bits lost to cancellation, (max_term_log - log|value|) / ln 2.
  double lost_bits = 0.0;
  /// 0 for the log-domain double path, else the MPFR precision used.
  long precision_bits = 0;
  /// Bits the working precision can resolve below the largest term.
  double available_bits = 0.0;
  /// Whether the working precision covered the measured cancellation.
  bool resolved = true;
  bool via_duality = false;

  SignedLog signed_value() const;
  /// Exact zero, or a residue below the resolution of the working precision.
  bool consistent_with_zero() const { return value.zero || lost_bits >= available_bits; }
};

DftResult dft_tetra(const DftInput& input, const DftOptions& options = {});

enum class DualityForm {
  /// Yhat(b_I; a_J) = (r / (2 sin^2(2pi/r)))^{3-|I|} Yhat(a_J; b_I), same
  /// labelling, full color range. Does not hold in general.
  stated,
  /// Yhat(b_I; a_J) = (r / (4 sin^2(2pi/r)))^{|I|-3} Yhat*(a_J; b_I) with the
  /// planar-dual labelling, even colors and even sums. Exact.
  planar_even,
};

double duality_factor(const RootContext& ctx, int deep_count, DualityForm form = DualityForm::stated);
double log_duality_factor(const RootContext& ctx, int deep_count, DualityForm form = DualityForm::stated);

struct DualityReport {
  DftResult lhs;  // Yhat(b_I; a_J)
  DftResult rhs;  // factor * Yhat(a_J; b_I)
  double factor = 1.0;
  double discrepancy = 0.0;
};

/// Both sides of the duality identity, each summed directly (no shortcut).
/// The planar_even form overrides the color set and needs even colors.
DualityReport duality_sides(const DftInput& input, const DftOptions& options = {},
                            DualityForm form = DualityForm::stated);
/// Relative discrepancy between the two sides of the duality identity.
double duality_check(const DftInput& input, const DftOptions& options = {}, DualityForm form = DualityForm::stated);

/// Worker count after applying the SIXJ_THREADS fallback.
unsigned resolve_threads(unsigned requested);

}  // namespace qsixj
