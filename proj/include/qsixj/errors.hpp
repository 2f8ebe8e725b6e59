#pragma once

#include <stdexcept>
#include <string>

namespace qsixj {

// Failure classes map one-to-one onto CLI exit codes: input 2, geometry 3,
// solver 4. Range and domain violations on library inputs are reported with
// the std exception types so callers that only care about validity can catch
// std::invalid_argument / std::range_error / std::domain_error directly.

/// Input rejected before any computation ran.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested tetrahedron does not exist, or a geometric quantity left
/// its domain (cut of the dilogarithm, strip membership of the critical point).
class GeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative procedure failed: Newton non-convergence, branch tracking of
/// the discriminant root, rank-deficient fit.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsixj
