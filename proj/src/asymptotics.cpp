#include "qsixj/asymptotics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "qsixj/errors.hpp"

namespace qsixj {

namespace {

constexpr double kPi = std::numbers::pi;

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int clamp_color(long long b, int r) { return static_cast<int>(std::clamp<long long>(b, 0, r - 2)); }

}  // namespace

std::string to_string(ColoringRule rule) {
  switch (rule) {
    case ColoringRule::half: return "half";
    case ColoringRule::quarter_doubled: return "quarter-doubled";
    case ColoringRule::quarter_raw: return "quarter-raw";
  }
  return "?";
}

ColoringRule parse_coloring_rule(const std::string& text) {
  if (text == "half") return ColoringRule::half;
  if (text == "quarter-doubled") return ColoringRule::quarter_doubled;
  if (text == "quarter-raw") return ColoringRule::quarter_raw;
  throw InputError("unknown coloring rule '" + text + "' (half, quarter-doubled, quarter-raw)");
}

int coloring_for(int r, const Angle& theta, ColoringRule rule) {
  if (!theta.exact()) return coloring_for(r, theta.value, rule);
  // r (pi - p pi / q) / (2 pi) = r (q - p) / (2 q)
  const long long n = static_cast<long long>(r) * (*theta.den - *theta.num);
  const long long q = *theta.den;
  switch (rule) {
    case ColoringRule::half: return clamp_color(floor_div(n, 2 * q), r);
    case ColoringRule::quarter_doubled: return clamp_color(2 * floor_div(n, 4 * q), r);
    case ColoringRule::quarter_raw: return clamp_color(floor_div(n, 4 * q), r);
  }
  return 0;
}

int coloring_for(int r, double theta, ColoringRule rule) {
  const double x = r * (kPi - theta) / kPi;
  long long b = 0;
  switch (rule) {
    case ColoringRule::half: b = static_cast<long long>(std::floor(x / 2)); break;
    case ColoringRule::quarter_doubled: b = 2 * static_cast<long long>(std::floor(x / 4)); break;
    case ColoringRule::quarter_raw: b = static_cast<long long>(std::floor(x / 4)); break;
  }
  return clamp_color(b, r);
}

void refresh_derived(RunRecord& rec) {
  if (rec.empty_sum) {
    rec.log_mag_Y = -std::numeric_limits<double>::infinity();
    rec.scaled = rec.log_mag_Y;
    rec.rel_err = std::numeric_limits<double>::infinity();
    return;
  }
  rec.scaled = 2.0 * kPi / rec.r * rec.log_mag_Y;
  rec.rel_err = std::abs(rec.scaled - rec.target) / std::abs(rec.target);
}

std::pair<std::vector<int>, std::vector<int>> conjecture_colorings(const std::array<Angle, 6>& angles,
                                                                   const DeepPartition& partition, int r,
                                                                   ColoringRule rule) {
  std::vector<int> b, a;
  for (int e : partition.deep_edges()) b.push_back(coloring_for(r, angles[e], rule));
  for (int e : partition.regular_edges()) a.push_back(coloring_for(r, angles[e], rule));
  return {b, a};
}

std::array<Angle, 6> spec_angles(const TetraSpec& spec) {
  const EdgeVector theta = dihedral_angles(to_lengths(spec));
  std::array<Angle, 6> out;
  for (int e = 0; e < 6; ++e) out[e] = Angle::from_double(theta(e));
  return out;
}

std::vector<RunRecord> run_conjecture(const TetraSpec& spec, ColoringRule rule, std::span<const int> r_list,
                                      const ConjectureOptions& options) {
  for (int r : r_list)
    if (r < 3 || r % 2 == 0) throw InputError("r must be odd and >= 3, got " + std::to_string(r));
  spec.validate();

  double vol = 0.0;
  try {
    vol = volume(spec);
  } catch (const GeometryError& e) {
    throw GeometryError(std::string("volume: ") + e.what());
  } catch (const SolverError& e) {
    throw SolverError(std::string("volume: ") + e.what());
  }
  const std::array<Angle, 6> angles = options.angles ? *options.angles : spec_angles(spec);

  std::vector<RunRecord> out;
  out.reserve(r_list.size());
  for (int r : r_list) {
    const auto t0 = std::chrono::steady_clock::now();
    auto ctx = std::make_shared<const RootContext>(r);
    auto [b, a] = conjecture_colorings(angles, spec.partition, r, rule);
    DftOptions dopt = options.dft;
    if (!dopt.expected_log_mag) dopt.expected_log_mag = r * vol / kPi;
    const DftResult res = dft_tetra(DftInput::make(ctx, spec.partition, b, a), dopt);

    RunRecord rec;
    rec.r = r;
    rec.b_I = std::move(b);
    rec.a_J = std::move(a);
    rec.empty_sum = res.empty_sum || res.value.zero;
    rec.resolved = res.resolved;
    rec.log_mag_Y = res.value.log_mag;
    rec.phase_Y = res.value.phase;
    rec.target = 2.0 * vol;
    rec.rule = rule;
    rec.precision = dopt.precision.to_string() + ":" + (res.precision_bits ? "mp" + std::to_string(res.precision_bits) : "double");
    if (!res.resolved) rec.precision += ":unresolved";
    refresh_derived(rec);
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(rec));
  }
  return out;
}

FitResult fit_growth(std::span<const RunRecord> records) {
  std::vector<const RunRecord*> pts;
  std::set<int> distinct;
  for (const auto& rec : records)
    if (std::isfinite(rec.scaled)) {
      pts.push_back(&rec);
      distinct.insert(rec.r);
    }
  if (distinct.size() < 3)
    throw SolverError("fit_growth needs records at three distinct r, got " + std::to_string(distinct.size()));

  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = pts[i]->r;
    X(i, 0) = 1.0;
    X(i, 1) = std::log(r) / r;
    X(i, 2) = 1.0 / r;
    y(i) = pts[i]->scaled;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < 3) throw SolverError("fit_growth: rank-deficient design");
  const Eigen::Vector3d c = qr.solve(y);

  FitResult fit;
  fit.limit_estimate = c(0);
  fit.coef_logr_over_r = c(1);
  fit.coef_1_over_r = c(2);
  fit.residual_rms = std::sqrt((X * c - y).squaredNorm() / n);
  fit.points = static_cast<int>(n);
  return fit;
}

}  // namespace qsixj
