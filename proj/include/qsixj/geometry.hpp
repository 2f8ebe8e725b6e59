#pragma once

// Deeply truncated tetrahedra: Gram matrix, existence criterion, angles and
// lengths, the potentials U, V, W and the resulting volume and co-volume.
//
// Edges are indexed 0..5 for a_1..a_6. Edge k sits in Gram slot kGramSlots[k]
// (vertices 0..3), i.e. edge1 <-> (1,2), edge2 <-> (1,3), edge3 <-> (2,3),
// edge4 <-> (3,4), edge5 <-> (2,4), edge6 <-> (1,4) in 1-based terms.

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "qsixj/partition.hpp"

namespace qsixj {

template <class Scalar>
using EdgeVectorT = Eigen::Matrix<Scalar, 6, 1>;
using EdgeVector = EdgeVectorT<double>;
using ComplexEdgeVector = EdgeVectorT<std::complex<double>>;

template <class Scalar>
using Gram4T = Eigen::Matrix<Scalar, 4, 4>;
using GramMatrix4 = Gram4T<double>;

inline constexpr std::array<std::array<int, 2>, 6> kGramSlots{{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {1, 3}, {0, 3}}};

/// Gram matrix with unit diagonal and -c_k in the slot of edge k.
template <class Scalar>
Gram4T<Scalar> gram_from_cosines(const EdgeVectorT<Scalar>& c) {
  Gram4T<Scalar> g = Gram4T<Scalar>::Identity();
  for (int k = 0; k < 6; ++k) {
    const auto [s, t] = kGramSlots[k];
    g(s, t) = -c(k);
    g(t, s) = -c(k);
  }
  return g;
}

/// Matrix of cofactors, entry (s,t) = (-1)^{s+t} times the minor without row s and column t.
template <class Scalar>
Gram4T<Scalar> cofactor_matrix(const Gram4T<Scalar>& g) {
  Gram4T<Scalar> out;
  for (int s = 0; s < 4; ++s) {
    for (int t = 0; t < 4; ++t) {
      Eigen::Matrix<Scalar, 3, 3> m;
      for (int i = 0, mi = 0; i < 4; ++i) {
        if (i == s) continue;
        for (int j = 0, mj = 0; j < 4; ++j) {
          if (j == t) continue;
          m(mi, mj++) = g(i, j);
        }
        ++mi;
      }
      out(s, t) = (((s + t) & 1) ? Scalar(-1) : Scalar(1)) * m.determinant();
    }
  }
  return out;
}

enum class DeepParam { length, angle };

struct TetraSpec {
  DeepPartition partition;
  DeepParam deep_param = DeepParam::length;
  /// Per edge: l_i or theta_i on deep edges (by deep_param), theta_j on regular edges.
  EdgeVector values = EdgeVector::Zero();

  static TetraSpec with_lengths(const DeepPartition& p, std::span<const double> deep_lengths,
                                std::span<const double> regular_angles);
  static TetraSpec with_angles(const DeepPartition& p, std::span<const double> deep_angles,
                               std::span<const double> regular_angles);

  /// Lengths >= 0, deep angles in [0, pi), regular angles in [0, pi]. Throws InputError.
  void validate() const;
  Eigen::VectorXd deep_values() const;
  Eigen::VectorXd regular_values() const;
};

/// Requires length mode: -cosh l on deep slots, -cos theta on regular slots.
GramMatrix4 gram(const TetraSpec& spec);

enum class Existence { exists, absent, indeterminate };

struct ExistenceReport {
  Existence verdict = Existence::absent;
  Eigen::Vector4d eigenvalues = Eigen::Vector4d::Zero();
  int positive = 0;
  int negative = 0;
  bool off_diagonal_cofactors_positive = false;
  bool diagonal_cofactors_negative = false;
  GramMatrix4 cofactors = GramMatrix4::Zero();

  bool exists() const { return verdict == Existence::exists; }
  explicit operator bool() const { return exists(); }
};

inline constexpr double kSignatureTolerance = 1e-10;

/// Signature (3,1), positive off-diagonal and negative diagonal cofactors.
/// An eigenvalue within kSignatureTolerance of zero gives Existence::indeterminate.
ExistenceReport tetra_exists(const GramMatrix4& g);

/// Dihedral angles at the deep edges (deep-edge order) of a length-mode spec.
/// Throws GeometryError when the criterion fails.
Eigen::VectorXd deep_angles(const TetraSpec& spec);
/// All six dihedral angles: computed on deep edges, copied on regular ones.
EdgeVector dihedral_angles(const TetraSpec& spec);

struct LengthSolve {
  TetraSpec spec;  // length mode
  int iterations = 0;
  double residual = 0.0;
};

/// Damped Newton inversion of deep_angles. Throws SolverError after 100
/// iterations, GeometryError if the solution fails the existence criterion.
LengthSolve lengths_from_angles(const TetraSpec& spec);
/// A length-mode spec, converting from angle mode when needed.
TetraSpec to_lengths(const TetraSpec& spec);

// -------------------------------------------------------------- potentials

struct PotentialPoint {
  ComplexEdgeVector alpha = ComplexEdgeVector::Zero();
  std::complex<double> xi{};

  std::array<std::complex<double>, 4> tau() const;
  std::array<std::complex<double>, 3> eta() const;
};

template <class Scalar>
std::array<Scalar, 4> vertex_half_sums(const EdgeVectorT<Scalar>& a) {
  return {(a(0) + a(1) + a(2)) / Scalar(2), (a(0) + a(4) + a(5)) / Scalar(2), (a(1) + a(3) + a(5)) / Scalar(2),
          (a(2) + a(3) + a(4)) / Scalar(2)};
}

template <class Scalar>
std::array<Scalar, 3> quad_half_sums(const EdgeVectorT<Scalar>& a) {
  return {(a(0) + a(1) + a(3) + a(4)) / Scalar(2), (a(0) + a(2) + a(3) + a(5)) / Scalar(2),
          (a(1) + a(2) + a(4) + a(5)) / Scalar(2)};
}

/// 0 <= a_i + a_j - a_k <= 2pi and 2pi <= a_i + a_j + a_k <= 4pi on every vertex triple.
bool hyperideal_type(const EdgeVector& alpha, double tol = 1e-12);

/// V(alpha, xi) for real alpha of hyperideal type. Throws GeometryError otherwise.
double potential_V(const EdgeVector& alpha, double xi);
/// U(alpha, xi) through the dilogarithm. A dilogarithm argument on the cut
/// throws GeometryError naming the term.
std::complex<double> potential_U(const PotentialPoint& p);
/// dU/dxi in closed form, 2i log(sin(-xi) prod sin(eta_j - xi) / prod sin(xi - tau_i)).
std::complex<double> potential_U_dxi(const PotentialPoint& p);

struct QuadraticCoefficients {
  std::complex<double> A, B, C;
  std::complex<double> discriminant() const { return B * B - 4.0 * A * C; }
};

/// Coefficients of A z^2 + B z + C = 0 with u_i = exp(i alpha_i).
QuadraticCoefficients quadratic_coefficients(const ComplexEdgeVector& alpha);

struct CriticalData {
  std::complex<double> z;
  std::complex<double> xi;
  std::complex<double> sqrt_discriminant;
  /// Re xi in (max Re tau_i, min(Re eta_j, 2pi)).
  bool in_strip = false;
};

/// Root z = (-B + sqrt(B^2 - 4AC)) / 2A with the square root continued along
/// the straight path from (pi,...,pi), where z = i and xi = 7pi/4.
CriticalData critical_point(const ComplexEdgeVector& alpha);

/// U(alpha, xi(alpha)). Throws GeometryError when the critical point leaves the strip.
std::complex<double> potential_W(const ComplexEdgeVector& alpha);

/// (pi + sign * i l_i) on deep edges and (pi + theta_j) on regular ones.
ComplexEdgeVector complex_alpha(const TetraSpec& length_spec, int sign = 1);

/// Im W / 2 at complex_alpha(spec).
double covolume(const TetraSpec& spec, int sign = 1);
/// V(alpha, xi(alpha)) for I empty, Cov - (1/2) sum theta_i l_i otherwise.
double volume(const TetraSpec& spec);

/// 8 Lambda(pi/4), the regular ideal octahedron.
double octahedron_volume();

}  // namespace qsixj
