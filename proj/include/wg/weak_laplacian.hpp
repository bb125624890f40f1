// Discrete weak Laplacian: the element-local linear operator taking weak
// function DOFs {v0, vb, vg} to the coefficients of a degree-(k-2) polynomial,
// defined by duality against test polynomials through integration by parts:
//
//   (Lap_w v, phi)_T = (v0, Lap phi)_T - <vb, grad phi . n>_dT + <vg . n, phi>_dT
//
// for all phi in P_{k-2}(T), with n the outward normal of T.

#ifndef WG_WEAK_LAPLACIAN_HPP
#define WG_WEAK_LAPLACIAN_HPP

#include <Eigen/Dense>

#include "wg/dofmap.hpp"
#include "wg/projection.hpp"

namespace wg {

struct WeakLaplacianOperator {
  int element = -1;
  int k = 0;
  GradTrace flavor = GradTrace::normal_only;
  Eigen::MatrixXd matrix;  ///< rows: dim P_{k-2}(T); columns: local DOFs
};

WeakLaplacianOperator build_weak_laplacian(const Mesh& mesh, int element, int k, GradTrace flavor,
                                           int elem_exactness = -1, int edge_exactness = -1);

/// Matrix-vector application; throws DimensionError on size mismatch.
Eigen::VectorXd apply_weak_laplacian(const WeakLaplacianOperator& op,
                                     const Eigen::VectorXd& local_dofs);

/// Max coefficient discrepancy over all elements between Lap_w(Q_h u) and the
/// projection of Lap u onto P_{k-2}(T). Vanishes (to solver precision) for
/// polynomial u; quadrature-limited for general smooth u.
double verify_commutativity(const Mesh& mesh, int k, GradTrace flavor, const ScalarField& u,
                            const VectorField& grad_u, const ScalarField& lap_u,
                            int elem_exactness = -1, int edge_exactness = -1);

}  // namespace wg

#endif
