#include "wg/weak_laplacian.hpp"

#include <Eigen/Cholesky>

#include "wg/errors.hpp"
#include "wg/quadrature.hpp"

namespace wg {

WeakLaplacianOperator build_weak_laplacian(const Mesh& mesh, int element, int k, GradTrace flavor,
                                           int elem_exactness, int edge_exactness) {
  if (k < 2) throw Error("build_weak_laplacian: k must be >= 2");
  if (elem_exactness < 0) elem_exactness = default_exactness(k);
  if (edge_exactness < 0) edge_exactness = default_exactness(k);

  const Element& el = mesh.elements.at(element);
  const LocalBlocks blocks(k, flavor, static_cast<int>(el.edges.size()));
  const ElementBasis test_basis(mesh, element, k - 2);   // phi
  const ElementBasis v0_basis(mesh, element, k);
  const int nr = test_basis.dim();

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nr, blocks.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nr, nr);

  // (v0, Lap phi)_T and the P_{k-2} mass matrix from one element sweep
  const QuadratureRule elem_rule = element_quadrature(mesh, element, elem_exactness);
  for (std::size_t q = 0; q < elem_rule.size(); ++q) {
    const double w = elem_rule.weights[q];
    const Eigen::VectorXd phi = test_basis.eval(elem_rule.points[q]);
    const Eigen::VectorXd lap_phi = test_basis.eval_laplacian(elem_rule.points[q]);
    const Eigen::VectorXd v0 = v0_basis.eval(elem_rule.points[q]);
    M.noalias() += w * phi * phi.transpose();
    B.block(0, 0, nr, blocks.nk).noalias() += w * lap_phi * v0.transpose();
  }

  for (int j = 0; j < blocks.n_edges; ++j) {
    const int e = el.edges[j];
    const double sign = el.edge_sign[j];  // n = sign * n_e
    const Vec2 ne = mesh.edges[e].normal;
    const EdgeBasis vb_basis(mesh, e, k);
    const EdgeBasis vg_basis(mesh, e, k - 1);
    const QuadratureRule edge_rule = edge_quadrature(mesh, e, edge_exactness);
    for (std::size_t q = 0; q < edge_rule.size(); ++q) {
      const double w = edge_rule.weights[q];
      const Vec2& x = edge_rule.points[q];
      const Eigen::VectorXd phi = test_basis.eval(x);
      const auto grad_phi = test_basis.eval_gradient(x);
      const Eigen::VectorXd dn_phi = sign * (grad_phi * ne);  // grad phi . n
      const Eigen::VectorXd vb = vb_basis.eval(x);
      const Eigen::VectorXd vg = vg_basis.eval(x);

      B.block(0, blocks.vb_offset(j), nr, blocks.nb).noalias() -= w * dn_phi * vb.transpose();
      // vg . n: the normal-component block contributes sign * vg; a tangential
      // block (full_vector flavor) is orthogonal to n and drops out entirely.
      B.block(0, blocks.vg_offset(j), nr, k).noalias() += (w * sign) * phi * vg.transpose();
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw SingularMassError("weak laplacian: P_{k-2} mass matrix not SPD");

  WeakLaplacianOperator op;
  op.element = element;
  op.k = k;
  op.flavor = flavor;
  op.matrix = llt.solve(B);
  return op;
}

Eigen::VectorXd apply_weak_laplacian(const WeakLaplacianOperator& op,
                                     const Eigen::VectorXd& local_dofs) {
  if (local_dofs.size() != op.matrix.cols())
    throw DimensionError("apply_weak_laplacian: expected " + std::to_string(op.matrix.cols()) +
                         " local DOFs, got " + std::to_string(local_dofs.size()));
  return op.matrix * local_dofs;
}

double verify_commutativity(const Mesh& mesh, int k, GradTrace flavor, const ScalarField& u,
                            const VectorField& grad_u, const ScalarField& lap_u,
                            int elem_exactness, int edge_exactness) {
  const DofMap dm = build_dof_map(mesh, k, flavor);
  const Eigen::VectorXd qh = embed_exact_solution(mesh, dm, u, grad_u, elem_exactness,
                                                  edge_exactness);
  double worst = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const auto op = build_weak_laplacian(mesh, t, k, flavor, elem_exactness, edge_exactness);
    const Eigen::VectorXd lhs = apply_weak_laplacian(op, dm.gather(mesh, t, qh).dofs);
    const Eigen::VectorXd rhs = project_qh_interior(mesh, t, k, lap_u, elem_exactness);
    worst = std::max(worst, (lhs - rhs).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

}  // namespace wg
