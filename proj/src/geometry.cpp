#include "qsixj/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsixj/errors.hpp"
#include "qsixj/special.hpp"

namespace qsixj {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::array<int, 2> complement_slot(int edge) {
  const auto [s, t] = kGramSlots[edge];
  std::array<int, 2> out{};
  int n = 0;
  for (int v = 0; v < 4; ++v)
    if (v != s && v != t) out[n++] = v;
  return out;
}

EdgeVector cosines(const TetraSpec& spec) {
  EdgeVector c;
  for (int k = 0; k < 6; ++k)
    c(k) = spec.partition.is_deep(k) ? std::cosh(spec.values(k)) : std::cos(spec.values(k));
  return c;
}

// Dihedral angle at a deep edge from cofactors, without checking the criterion.
// cos theta = G_uv / sqrt(G_uu G_vv); sin theta = sinh(l) sqrt(-det G) / sqrt(G_uu G_vv),
// from G_uu G_vv - G_uv^2 = det G (1 - cosh^2 l). NaN when the formula has no meaning.
double deep_angle_raw(const GramMatrix4& g, const GramMatrix4& cof, int edge, double length) {
  const auto [u, v] = complement_slot(edge);
  const double det = g.determinant();
  const double guu_gvv = cof(u, u) * cof(v, v);
  if (!(guu_gvv > 0.0) || !(det < 0.0)) return kNaN;
  const double root = std::sqrt(guu_gvv);
  const double c = cof(u, v) / root;
  const double s = std::sinh(length) * std::sqrt(-det) / root;
  return std::atan2(s, c);
}

Eigen::VectorXd deep_angles_raw(const TetraSpec& spec) {
  const GramMatrix4 g = gram(spec);
  const GramMatrix4 cof = cofactor_matrix(g);
  const auto deep = spec.partition.deep_edges();
  Eigen::VectorXd out(deep.size());
  for (std::size_t i = 0; i < deep.size(); ++i) out(i) = deep_angle_raw(g, cof, deep[i], spec.values(deep[i]));
  return out;
}

void require_lengths(const TetraSpec& spec, const char* what) {
  if (spec.deep_param != DeepParam::length && spec.partition.deep_count() > 0)
    throw InputError(std::string(what) + " needs deep-edge lengths");
}

std::string describe(const ExistenceReport& rep) {
  std::string s = "signature (" + std::to_string(rep.positive) + "," + std::to_string(rep.negative) + ")";
  if (!rep.off_diagonal_cofactors_positive) s += ", an off-diagonal cofactor is not positive";
  if (!rep.diagonal_cofactors_negative) s += ", a diagonal cofactor is not negative";
  if (rep.verdict == Existence::indeterminate) s += ", eigenvalue within tolerance of zero";
  return s;
}

void require_exists(const GramMatrix4& g) {
  const ExistenceReport rep = tetra_exists(g);
  if (!rep.exists()) throw GeometryError("no deeply truncated tetrahedron with this Gram matrix: " + describe(rep));
}

}  // namespace

// ------------------------------------------------------------------- spec

TetraSpec TetraSpec::with_lengths(const DeepPartition& p, std::span<const double> deep_lengths,
                                  std::span<const double> regular_angles) {
  TetraSpec s;
  s.partition = p;
  s.deep_param = DeepParam::length;
  const auto deep = p.deep_edges();
  const auto regular = p.regular_edges();
  if (deep_lengths.size() != deep.size() || regular_angles.size() != regular.size())
    throw InputError("parameter counts do not match partition " + p.label());
  for (std::size_t i = 0; i < deep.size(); ++i) s.values(deep[i]) = deep_lengths[i];
  for (std::size_t j = 0; j < regular.size(); ++j) s.values(regular[j]) = regular_angles[j];
  s.validate();
  return s;
}

TetraSpec TetraSpec::with_angles(const DeepPartition& p, std::span<const double> deep_angles,
                                 std::span<const double> regular_angles) {
  TetraSpec s = with_lengths(p, deep_angles, regular_angles);
  s.deep_param = DeepParam::angle;
  s.validate();
  return s;
}

void TetraSpec::validate() const {
  for (int k = 0; k < 6; ++k) {
    const double x = values(k);
    if (!std::isfinite(x)) throw InputError("non-finite parameter on edge " + std::to_string(k + 1));
    if (partition.is_deep(k)) {
      if (deep_param == DeepParam::length && x < 0.0)
        throw InputError("deep length on edge " + std::to_string(k + 1) + " is negative");
      if (deep_param == DeepParam::angle && (x < 0.0 || x >= kPi))
        throw InputError("deep angle on edge " + std::to_string(k + 1) + " outside [0, pi)");
    } else if (x < 0.0 || x > kPi) {
      throw InputError("regular angle on edge " + std::to_string(k + 1) + " outside [0, pi]");
    }
  }
}

Eigen::VectorXd TetraSpec::deep_values() const {
  const auto deep = partition.deep_edges();
  Eigen::VectorXd out(deep.size());
  for (std::size_t i = 0; i < deep.size(); ++i) out(i) = values(deep[i]);
  return out;
}

Eigen::VectorXd TetraSpec::regular_values() const {
  const auto regular = partition.regular_edges();
  Eigen::VectorXd out(regular.size());
  for (std::size_t j = 0; j < regular.size(); ++j) out(j) = values(regular[j]);
  return out;
}

// ------------------------------------------------------------------- gram

GramMatrix4 gram(const TetraSpec& spec) {
  require_lengths(spec, "gram");
  return gram_from_cosines(cosines(spec));
}

ExistenceReport tetra_exists(const GramMatrix4& g) {
  ExistenceReport rep;
  Eigen::SelfAdjointEigenSolver<GramMatrix4> eig(g, Eigen::EigenvaluesOnly);
  rep.eigenvalues = eig.eigenvalues();
  bool near_zero = false;
  for (int i = 0; i < 4; ++i) {
    const double lambda = rep.eigenvalues(i);
    if (std::abs(lambda) < kSignatureTolerance)
      near_zero = true;
    else if (lambda > 0)
      ++rep.positive;
    else
      ++rep.negative;
  }
  rep.cofactors = cofactor_matrix(g);
  rep.off_diagonal_cofactors_positive = true;
  rep.diagonal_cofactors_negative = true;
  for (int s = 0; s < 4; ++s) {
    if (!(rep.cofactors(s, s) < 0.0)) rep.diagonal_cofactors_negative = false;
    for (int t = 0; t < 4; ++t)
      if (s != t && !(rep.cofactors(s, t) > 0.0)) rep.off_diagonal_cofactors_positive = false;
  }
  if (near_zero)
    rep.verdict = Existence::indeterminate;
  else if (rep.positive == 3 && rep.negative == 1 && rep.off_diagonal_cofactors_positive &&
           rep.diagonal_cofactors_negative)
    rep.verdict = Existence::exists;
  else
    rep.verdict = Existence::absent;
  return rep;
}

// --------------------------------------------------------- angles, lengths

Eigen::VectorXd deep_angles(const TetraSpec& spec) {
  require_lengths(spec, "deep_angles");
  const GramMatrix4 g = gram(spec);
  require_exists(g);
  const GramMatrix4 cof = cofactor_matrix(g);
  const auto deep = spec.partition.deep_edges();
  Eigen::VectorXd out(deep.size());
  for (std::size_t i = 0; i < deep.size(); ++i) {
    const int e = deep[i];
    const auto [u, v] = complement_slot(e);
    const double ratio = cof(u, v) / std::sqrt(cof(u, u) * cof(v, v));
    if (std::abs(ratio) > 1.0 + 1e-12)
      throw GeometryError("cosine of the deep angle on edge " + std::to_string(e + 1) + " is " +
                          std::to_string(ratio) + ", outside [-1, 1]");
    out(i) = deep_angle_raw(g, cof, e, spec.values(e));
  }
  return out;
}

EdgeVector dihedral_angles(const TetraSpec& spec) {
  const TetraSpec lengths = to_lengths(spec);
  EdgeVector out = lengths.values;
  const Eigen::VectorXd deep = deep_angles(lengths);
  const auto edges = lengths.partition.deep_edges();
  for (std::size_t i = 0; i < edges.size(); ++i) out(edges[i]) = deep(i);
  return out;
}

LengthSolve lengths_from_angles(const TetraSpec& spec) {
  if (spec.deep_param != DeepParam::angle) throw InputError("lengths_from_angles needs deep-edge angles");
  spec.validate();
  const auto deep = spec.partition.deep_edges();
  const Eigen::VectorXd target = spec.deep_values();
  const int m = static_cast<int>(deep.size());

  LengthSolve out;
  out.spec = spec;
  out.spec.deep_param = DeepParam::length;
  if (m == 0) {
    require_exists(gram(out.spec));
    return out;
  }

  auto residual_at = [&](const Eigen::VectorXd& l) {
    TetraSpec s = out.spec;
    for (int i = 0; i < m; ++i) s.values(deep[i]) = l(i);
    return Eigen::VectorXd(deep_angles_raw(s) - target);
  };
  auto norm = [](const Eigen::VectorXd& r) {
    return r.allFinite() ? r.lpNorm<Eigen::Infinity>() : std::numeric_limits<double>::infinity();
  };

  Eigen::VectorXd l = target;
  Eigen::VectorXd res = residual_at(l);
  double res_norm = norm(res);
  constexpr int kMaxIterations = 100;
  constexpr double kTolerance = 1e-10;
  int it = 0;
  for (; it < kMaxIterations && !(res_norm <= kTolerance); ++it) {
    if (!std::isfinite(res_norm)) throw SolverError("deep angles undefined at the starting lengths");
    Eigen::MatrixXd jac(m, m);
    for (int k = 0; k < m; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(l(k)));
      Eigen::VectorXd lp = l, lm = l;
      lp(k) += h;
      lm(k) -= h;
      if (lm(k) < 0.0) {
        lm(k) = l(k);
        jac.col(k) = (residual_at(lp) - res) / h;
      } else {
        jac.col(k) = (residual_at(lp) - residual_at(lm)) / (2.0 * h);
      }
    }
    const Eigen::VectorXd step = jac.fullPivLu().solve(-res);
    double lambda = 1.0;
    bool moved = false;
    while (lambda > 1e-8) {
      const Eigen::VectorXd trial = (l + lambda * step).cwiseMax(0.0);
      const Eigen::VectorXd r_trial = residual_at(trial);
      const double n_trial = norm(r_trial);
      if (n_trial < res_norm) {
        l = trial;
        res = r_trial;
        res_norm = n_trial;
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!moved) break;
  }
  if (!(res_norm <= kTolerance))
    throw SolverError("deep lengths did not converge: residual " + std::to_string(res_norm) + " after " +
                      std::to_string(it) + " iterations");
  for (int i = 0; i < m; ++i) out.spec.values(deep[i]) = l(i);
  out.iterations = it;
  out.residual = res_norm;
  require_exists(gram(out.spec));
  return out;
}

TetraSpec to_lengths(const TetraSpec& spec) {
  if (spec.deep_param == DeepParam::length || spec.partition.deep_count() == 0) {
    TetraSpec s = spec;
    s.deep_param = DeepParam::length;
    return s;
  }
  return lengths_from_angles(spec).spec;
}

// ------------------------------------------------------------- potentials

std::array<cplx, 4> PotentialPoint::tau() const { return vertex_half_sums(alpha); }
std::array<cplx, 3> PotentialPoint::eta() const { return quad_half_sums(alpha); }

bool hyperideal_type(const EdgeVector& a, double tol) {
  static constexpr std::array<std::array<int, 3>, 4> triples{{{0, 1, 2}, {0, 4, 5}, {1, 3, 5}, {2, 3, 4}}};
  for (const auto& t : triples) {
    const double x = a(t[0]), y = a(t[1]), z = a(t[2]);
    for (double d : {x + y - z, y + z - x, z + x - y})
      if (d < -tol || d > 2 * kPi + tol) return false;
    const double s = x + y + z;
    if (s < 2 * kPi - tol || s > 4 * kPi + tol) return false;
  }
  return true;
}

namespace {

double delta_term(double x, double y, double z) {
  return -0.5 * lobachevsky((x + y - z) / 2) - 0.5 * lobachevsky((y + z - x) / 2) -
         0.5 * lobachevsky((z + x - y) / 2) + 0.5 * lobachevsky((x + y + z) / 2);
}

cplx li2_checked(cplx w, const char* term) {
  try {
    return dilog(w);
  } catch (const std::domain_error&) {
    throw GeometryError(std::string("dilogarithm argument of ") + term + " lies on the branch cut (" +
                        std::to_string(w.real()) + ")");
  }
}

cplx e2i(cplx x) { return std::exp(2.0 * kI * x); }

void require_hyperideal(const EdgeVector& re_alpha, const char* what) {
  if (!hyperideal_type(re_alpha)) throw GeometryError(std::string(what) + ": alpha is not of hyperideal type");
}

}  // namespace

double potential_V(const EdgeVector& a, double xi) {
  require_hyperideal(a, "potential_V");
  const auto tau = vertex_half_sums(a);
  const auto eta = quad_half_sums(a);
  double v = delta_term(a(0), a(1), a(2)) + delta_term(a(0), a(4), a(5)) + delta_term(a(1), a(3), a(5)) +
             delta_term(a(2), a(3), a(4));
  v -= lobachevsky(xi);
  for (double t : tau) v += lobachevsky(xi - t);
  for (double e : eta) v += lobachevsky(e - xi);
  return v;
}

cplx potential_U(const PotentialPoint& p) {
  const auto tau = p.tau();
  const auto eta = p.eta();
  const cplx xi = p.xi;
  cplx u = kPi * kPi;
  for (const cplx& t : tau)
    for (const cplx& e : eta) u += 0.5 * (e - t) * (e - t);
  for (const cplx& t : tau) u -= 0.5 * (t - kPi) * (t - kPi);
  u += (xi - kPi) * (xi - kPi);
  for (const cplx& t : tau) u -= (xi - t) * (xi - t);
  for (const cplx& e : eta) u -= (e - xi) * (e - xi);

  u -= 2.0 * (kPi * kPi / 6.0);
  for (const cplx& t : tau)
    for (const cplx& e : eta) u -= 0.5 * li2_checked(e2i(e - t), "eta_j - tau_i");
  for (const cplx& t : tau) u += 0.5 * li2_checked(e2i(t - kPi), "tau_i - pi");
  u -= li2_checked(e2i(xi - kPi), "xi - pi");
  for (const cplx& t : tau) u += li2_checked(e2i(xi - t), "xi - tau_i");
  for (const cplx& e : eta) u += li2_checked(e2i(e - xi), "eta_j - xi");
  return u;
}

cplx potential_U_dxi(const PotentialPoint& p) {
  const auto tau = p.tau();
  const auto eta = p.eta();
  cplx num = std::sin(-p.xi);
  for (const cplx& e : eta) num *= std::sin(e - p.xi);
  cplx den = 1.0;
  for (const cplx& t : tau) den *= std::sin(p.xi - t);
  return 2.0 * kI * std::log(num / den);
}

QuadraticCoefficients quadratic_coefficients(const ComplexEdgeVector& alpha) {
  std::array<cplx, 6> u{};
  for (int k = 0; k < 6; ++k) u[k] = std::exp(kI * alpha(k));
  const auto& [u1, u2, u3, u4, u5, u6] = u;
  QuadraticCoefficients q;
  q.A = u1 * u4 + u2 * u5 + u3 * u6 - u1 * u2 * u6 - u1 * u3 * u5 - u2 * u3 * u4 - u4 * u5 * u6 +
        u1 * u2 * u3 * u4 * u5 * u6;
  q.B = -(u1 - 1.0 / u1) * (u4 - 1.0 / u4) - (u2 - 1.0 / u2) * (u5 - 1.0 / u5) - (u3 - 1.0 / u3) * (u6 - 1.0 / u6);
  q.C = 1.0 / (u1 * u4) + 1.0 / (u2 * u5) + 1.0 / (u3 * u6) - 1.0 / (u1 * u2 * u6) - 1.0 / (u1 * u3 * u5) -
        1.0 / (u2 * u3 * u4) - 1.0 / (u4 * u5 * u6) + 1.0 / (u1 * u2 * u3 * u4 * u5 * u6);
  return q;
}

CriticalData critical_point(const ComplexEdgeVector& alpha) {
  require_hyperideal(alpha.real(), "critical_point");
  const ComplexEdgeVector anchor = ComplexEdgeVector::Constant(cplx(kPi, 0.0));
  const ComplexEdgeVector dir = alpha - anchor;

  // At the anchor A = C = 8, B = 0: sqrt(-256) = 16i gives z = i.
  cplx w_prev{0.0, 16.0};
  cplx z_prev = kI;
  constexpr double kMaxStep = 1.0 / 16.0;
  double s = 0.0;
  double h = kMaxStep;
  QuadraticCoefficients q = quadratic_coefficients(anchor);
  while (s < 1.0) {
    const double s1 = std::min(1.0, s + h);
    const QuadraticCoefficients q1 = quadratic_coefficients(anchor + s1 * dir);
    if (std::abs(q1.A) < 1e-12)
      throw SolverError("critical_point: degenerate quadratic (|A| < 1e-12) at path parameter " + std::to_string(s1));
    const cplx disc = q1.discriminant();
    const double scale = std::norm(q1.B) + 4.0 * std::abs(q1.A) * std::abs(q1.C);
    if (std::abs(disc) < 1e-12 * scale)
      throw SolverError("critical_point: branch tracking failed, discriminant vanishes near path parameter " +
                        std::to_string(s1));
    cplx w = std::sqrt(disc);
    if (std::abs(w - w_prev) > std::abs(w + w_prev)) w = -w;
    const cplx z = (-q1.B + w) / (2.0 * q1.A);
    const bool clear_branch = std::abs(w - w_prev) < 0.5 * std::abs(w + w_prev);
    const bool small_move = std::abs(std::log(z / z_prev)) < 0.1;
    if (!(clear_branch && small_move)) {
      h *= 0.5;
      if (h < 1e-10) throw SolverError("critical_point: branch tracking failed to resolve the path");
      continue;
    }
    s = s1;
    w_prev = w;
    z_prev = z;
    q = q1;
    h = std::min(kMaxStep, 2.0 * h);
  }

  CriticalData out;
  out.z = z_prev;
  out.sqrt_discriminant = w_prev;
  // z = exp(-2 i xi), so xi is fixed modulo pi.
  const cplx xi0 = 0.5 * kI * std::log(z_prev);
  const auto tau = vertex_half_sums(alpha);
  const auto eta = quad_half_sums(alpha);
  double lo = -std::numeric_limits<double>::infinity();
  double hi = 2 * kPi;
  for (const cplx& t : tau) lo = std::max(lo, t.real());
  for (const cplx& e : eta) hi = std::min(hi, e.real());
  double k = std::floor((lo - xi0.real()) / kPi) + 1.0;
  out.xi = xi0 + k * kPi;
  out.in_strip = out.xi.real() > lo && out.xi.real() < hi;
  if (!out.in_strip) {
    const double mid = 0.5 * (lo + hi);
    out.xi = xi0 + std::round((mid - xi0.real()) / kPi) * kPi;
  }
  return out;
}

cplx potential_W(const ComplexEdgeVector& alpha) {
  const CriticalData cp = critical_point(alpha);
  if (!cp.in_strip)
    throw GeometryError("critical point Re xi = " + std::to_string(cp.xi.real()) + " lies outside the strip");
  return potential_U({alpha, cp.xi});
}

ComplexEdgeVector complex_alpha(const TetraSpec& spec, int sign) {
  require_lengths(spec, "complex_alpha");
  ComplexEdgeVector a;
  for (int k = 0; k < 6; ++k)
    a(k) = spec.partition.is_deep(k) ? cplx(kPi, sign * spec.values(k)) : cplx(kPi + spec.values(k), 0.0);
  return a;
}

double covolume(const TetraSpec& spec, int sign) {
  const TetraSpec lengths = to_lengths(spec);
  require_exists(gram(lengths));
  return potential_W(complex_alpha(lengths, sign)).imag() / 2.0;
}

double volume(const TetraSpec& spec) {
  const TetraSpec lengths = to_lengths(spec);
  require_exists(gram(lengths));
  if (lengths.partition.deep_count() == 0) {
    EdgeVector alpha = EdgeVector::Constant(kPi) + lengths.values;
    const CriticalData cp = critical_point(alpha.cast<cplx>());
    if (!cp.in_strip) throw GeometryError("critical point lies outside the strip");
    return potential_V(alpha, cp.xi.real());
  }
  const Eigen::VectorXd theta = deep_angles(lengths);
  const Eigen::VectorXd l = lengths.deep_values();
  return covolume(lengths) - 0.5 * theta.dot(l);
}

double octahedron_volume() { return 8.0 * lobachevsky(kPi / 4); }

}  // namespace qsixj
