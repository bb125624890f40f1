// Error types shared across the library.

#ifndef WG_ERRORS_HPP
#define WG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file (message carries the line number).
struct ParseError : Error {
  using Error::Error;
};

/// Inconsistent mesh connectivity (non-manifold edge, open boundary, ...).
struct TopologyError : Error {
  using Error::Error;
};

/// Mass matrix not SPD; signals a degenerate element or basis.
struct SingularMassError : Error {
  using Error::Error;
};

/// Geometric degeneracy (zero-area cell, zero-length edge).
struct DegenerateGeometryError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

/// Linear solver failure (factorization breakdown or CG stagnation).
struct SolveError : Error {
  using Error::Error;
};

}  // namespace wg

#endif
