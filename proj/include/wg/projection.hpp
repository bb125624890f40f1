// L2 projections onto element and edge polynomial spaces, and the composite
// embedding of a smooth function into the weak finite element space.

#ifndef WG_PROJECTION_HPP
#define WG_PROJECTION_HPP

#include <Eigen/Dense>
#include <functional>

#include "wg/basis.hpp"
#include "wg/dofmap.hpp"
#include "wg/mesh.hpp"
#include "wg/quadrature.hpp"

namespace wg {

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

/// Default quadrature exactness for degree-k spaces (elements and edges alike).
constexpr int default_exactness(int k) { return 2 * k + 2; }

/// Coefficients of the L2 projection of f onto the span of `basis` under `rule`.
Eigen::VectorXd project_onto(const ElementBasis& basis, const QuadratureRule& rule,
                             const ScalarField& f);
Eigen::VectorXd project_onto(const EdgeBasis& basis, const QuadratureRule& rule,
                             const ScalarField& f);

/// Q_0: projection onto P_k(T).
Eigen::VectorXd project_q0(const Mesh& mesh, int element, int k, const ScalarField& f,
                           int exactness = -1);

/// Q_b: projection onto P_degree(e).
Eigen::VectorXd project_qb(const Mesh& mesh, int edge, int degree, const ScalarField& f,
                           int exactness = -1);

/// Q_g: componentwise projection of a vector field onto [P_degree(e)]^2,
/// expressed in the edge frame (n_e, t_e).
struct EdgeVectorCoeffs {
  Eigen::VectorXd normal;
  Eigen::VectorXd tangential;
};
EdgeVectorCoeffs project_qg(const Mesh& mesh, int edge, int degree, const VectorField& field,
                            int exactness = -1);

/// Q_gn: projection of a scalar (a normal-component trace) onto P_degree(e).
Eigen::VectorXd project_qgn(const Mesh& mesh, int edge, int degree, const ScalarField& g,
                            int exactness = -1);

/// The local projection onto P_{k-2}(T) used by the weak Laplacian identity.
Eigen::VectorXd project_qh_interior(const Mesh& mesh, int element, int k, const ScalarField& f,
                                    int exactness = -1);

/// Q_h u = {Q_0 u, Q_b u, Q_g(grad u)}: the global DOF vector of the projected
/// exact solution, with vg interpreted per the dofmap's flavor.
Eigen::VectorXd embed_exact_solution(const Mesh& mesh, const DofMap& dm, const ScalarField& u,
                                     const VectorField& grad_u, int elem_exactness = -1,
                                     int edge_exactness = -1);

}  // namespace wg

#endif
