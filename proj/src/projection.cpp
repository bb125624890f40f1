#include "wg/projection.hpp"

#include <Eigen/Cholesky>

#include "wg/errors.hpp"

namespace wg {

namespace {

template <typename Basis>
Eigen::VectorXd l2_solve(const Basis& basis, const QuadratureRule& rule, const ScalarField& f) {
  const int n = basis.dim();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd v = basis.eval(rule.points[q]);
    M.noalias() += rule.weights[q] * v * v.transpose();
    rhs.noalias() += (rule.weights[q] * f(rule.points[q])) * v;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw SingularMassError("projection mass matrix not SPD");
  Eigen::VectorXd c = llt.solve(rhs);
  c += llt.solve(rhs - M * c);  // one refinement pass keeps idempotence at 1e-13
  return c;
}

}  // namespace

Eigen::VectorXd project_onto(const ElementBasis& basis, const QuadratureRule& rule,
                             const ScalarField& f) {
  return l2_solve(basis, rule, f);
}

Eigen::VectorXd project_onto(const EdgeBasis& basis, const QuadratureRule& rule,
                             const ScalarField& f) {
  return l2_solve(basis, rule, f);
}

Eigen::VectorXd project_q0(const Mesh& mesh, int element, int k, const ScalarField& f,
                           int exactness) {
  if (exactness < 0) exactness = default_exactness(k);
  const ElementBasis basis(mesh, element, k);
  return l2_solve(basis, element_quadrature(mesh, element, exactness), f);
}

Eigen::VectorXd project_qb(const Mesh& mesh, int edge, int degree, const ScalarField& f,
                           int exactness) {
  if (exactness < 0) exactness = default_exactness(degree);
  const EdgeBasis basis(mesh, edge, degree);
  return l2_solve(basis, edge_quadrature(mesh, edge, exactness), f);
}

EdgeVectorCoeffs project_qg(const Mesh& mesh, int edge, int degree, const VectorField& field,
                            int exactness) {
  if (exactness < 0) exactness = default_exactness(degree);
  const Vec2 n = mesh.edges[edge].normal;
  const Vec2 t = mesh.edge_tangent(edge);
  EdgeVectorCoeffs c;
  c.normal = project_qgn(mesh, edge, degree,
                         [&](const Vec2& x) { return field(x).dot(n); }, exactness);
  const EdgeBasis basis(mesh, edge, degree);
  c.tangential = l2_solve(basis, edge_quadrature(mesh, edge, exactness),
                          [&](const Vec2& x) { return field(x).dot(t); });
  return c;
}

Eigen::VectorXd project_qgn(const Mesh& mesh, int edge, int degree, const ScalarField& g,
                            int exactness) {
  if (exactness < 0) exactness = default_exactness(degree);
  const EdgeBasis basis(mesh, edge, degree);
  return l2_solve(basis, edge_quadrature(mesh, edge, exactness), g);
}

Eigen::VectorXd project_qh_interior(const Mesh& mesh, int element, int k, const ScalarField& f,
                                    int exactness) {
  if (k < 2) throw Error("project_qh_interior: k must be >= 2");
  if (exactness < 0) exactness = default_exactness(k);
  const ElementBasis basis(mesh, element, k - 2);
  return l2_solve(basis, element_quadrature(mesh, element, exactness), f);
}

Eigen::VectorXd embed_exact_solution(const Mesh& mesh, const DofMap& dm, const ScalarField& u,
                                     const VectorField& grad_u, int elem_exactness,
                                     int edge_exactness) {
  if (elem_exactness < 0) elem_exactness = default_exactness(dm.k);
  if (edge_exactness < 0) edge_exactness = default_exactness(dm.k);
  Eigen::VectorXd dofs = Eigen::VectorXd::Zero(dm.total);

  for (int t = 0; t < mesh.n_elements(); ++t)
    dofs.segment(dm.v0_offset(t), dm.nk) = project_q0(mesh, t, dm.k, u, elem_exactness);

  for (int e = 0; e < mesh.n_edges(); ++e) {
    dofs.segment(dm.vb_offset(e), dm.nb) = project_qb(mesh, e, dm.k, u, edge_exactness);
    if (dm.flavor == GradTrace::full_vector) {
      const EdgeVectorCoeffs c = project_qg(mesh, e, dm.k - 1, grad_u, edge_exactness);
      dofs.segment(dm.vg_offset(e), dm.k) = c.normal;
      dofs.segment(dm.vg_offset(e) + dm.k, dm.k) = c.tangential;
    } else {
      const Vec2 n = mesh.edges[e].normal;
      dofs.segment(dm.vg_offset(e), dm.ng) = project_qgn(
          mesh, e, dm.k - 1, [&](const Vec2& x) { return grad_u(x).dot(n); }, edge_exactness);
    }
  }
  return dofs;
}

}  // namespace wg
