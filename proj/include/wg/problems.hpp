// Manufactured boundary-value problems: exact solution, gradient, Laplacian,
// volume load, and boundary traces, for the convergence harness.

#ifndef WG_PROBLEMS_HPP
#define WG_PROBLEMS_HPP

#include <string>

#include "wg/projection.hpp"

namespace wg {

struct Problem {
  std::string name;
  ScalarField u;
  VectorField grad_u;
  ScalarField lap_u;
  ScalarField f;  ///< biharmonic of u

  ScalarField dirichlet() const { return u; }
  /// Neumann trace (x, outward normal) -> grad u . n.
  std::function<double(const Vec2&, const Vec2&)> neumann() const {
    auto g = grad_u;
    return [g](const Vec2& x, const Vec2& n) { return g(x).dot(n); };
  }
};

/// u = x^2 (1-x)^2 y^2 (1-y)^2: homogeneous Dirichlet and Neumann data on (0,1)^2.
Problem make_case1();

/// u = sin(pi x) sin(pi y): zero Dirichlet trace, nonzero Neumann trace on (0,1)^2.
Problem make_case2();

/// Polynomial problem from a dense coefficient table: u = sum c_ab x^a y^b.
/// Derivatives and the load follow by exact coefficient calculus.
Problem make_polynomial_problem(const Eigen::MatrixXd& coeffs, std::string name = "poly");

/// Parses a polynomial problem file: one term per line, `c a b` for c x^a y^b,
/// '#' comments allowed. Throws ParseError on malformed input.
Problem load_polynomial_problem(const std::string& path);

/// Named built-ins: case1, case2, poly2 (a full quadratic), poly3 (a full cubic).
Problem make_problem(const std::string& id);

}  // namespace wg

#endif
