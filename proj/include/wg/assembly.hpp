// Global assembly of the weak Galerkin bilinear form (weak-Laplacian stiffness
// plus stabilizer), boundary lifting by elimination, and the SPD sparse solve.
//
// Stabilizer (both flavors share the second sum):
//   s(u, v) = sum_T sum_{e in dT} |e|^{-1} <grad u0 . n_e - u_g, grad v0 . n_e - v_g>_e
//           + sum_T sum_{e in dT} |e|^{-3} <u0 - ub, v0 - vb>_e
// with the full-vector flavor penalizing both frame components of grad v0 - v_g.
// The weights use the edge length |e|; see the norms module for the matching
// discrete H^2 norm.

#ifndef WG_ASSEMBLY_HPP
#define WG_ASSEMBLY_HPP

#include <Eigen/Sparse>
#include <string>

#include "wg/dofmap.hpp"
#include "wg/projection.hpp"

namespace wg {

struct AssemblyOptions {
  int elem_exactness = -1;  ///< default 2k+2
  int edge_exactness = -1;  ///< default 2k+2 (also used for the stabilizer rules)
  bool keep_full = false;   ///< additionally store the unconstrained matrix
};

/// Neumann data: normal-derivative trace evaluated at a boundary point with the
/// local outward unit normal (the fixed edge normal on boundary edges).
using NeumannField = std::function<double(const Vec2&, const Vec2&)>;

struct SparseSystem {
  DofMap dofmap;
  Eigen::SparseMatrix<double> A;  ///< reduced SPD matrix over free DOFs (full symmetric storage)
  Eigen::VectorXd b;              ///< reduced right-hand side
  Eigen::VectorXd fixed_values;   ///< size total; boundary DOF values, zero elsewhere
  Eigen::SparseMatrix<double> A_full;  ///< unconstrained form, only if keep_full
  bool has_full = false;
};

/// Assembles the scheme for data f (volume load), zeta (Dirichlet trace), and
/// phi (Neumann trace, derivative along the outward domain normal).
SparseSystem assemble(const Mesh& mesh, int k, GradTrace flavor, const ScalarField& f,
                      const ScalarField& zeta, const NeumannField& phi,
                      const AssemblyOptions& options = {});

enum class SolverKind { direct, cg };

struct SolveInfo {
  double relative_residual = 0.0;
  int iterations = 0;
};

/// Solves the reduced system and merges boundary values back in; returns the
/// full DOF vector. Direct = sparse Cholesky (with iterative refinement to the
/// requested residual), cg = diagonally preconditioned conjugate gradients.
Eigen::VectorXd solve(const SparseSystem& system, SolverKind method = SolverKind::direct,
                      double tol = 1e-10, SolveInfo* info = nullptr,
                      const Eigen::VectorXd* initial_guess = nullptr);

/// Writes the reduced matrix in MatrixMarket coordinate symmetric format.
void write_matrix_market(const Eigen::SparseMatrix<double>& A, const std::string& path);

}  // namespace wg

#endif
