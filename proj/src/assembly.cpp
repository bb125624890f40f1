#include "wg/assembly.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/IterativeLinearSolvers>
#include <cstdio>
#include <fstream>
#include <vector>

#include "wg/errors.hpp"
#include "wg/quadrature.hpp"
#include "wg/weak_laplacian.hpp"

namespace wg {

SparseSystem assemble(const Mesh& mesh, int k, GradTrace flavor, const ScalarField& f,
                      const ScalarField& zeta, const NeumannField& phi,
                      const AssemblyOptions& options) {
  const int elem_ex = options.elem_exactness >= 0 ? options.elem_exactness : default_exactness(k);
  const int edge_ex = options.edge_exactness >= 0 ? options.edge_exactness : default_exactness(k);

  SparseSystem sys;
  sys.dofmap = build_dof_map(mesh, k, flavor);
  const DofMap& dm = sys.dofmap;

  // boundary values: vb = Q_b(zeta), normal vg = Q_gn(phi); n_e is outward there
  sys.fixed_values = Eigen::VectorXd::Zero(dm.total);
  for (const Edge& ed : mesh.edges) {
    if (!ed.boundary) continue;
    sys.fixed_values.segment(dm.vb_offset(ed.id), dm.nb) =
        project_qb(mesh, ed.id, k, zeta, edge_ex);
    const Vec2 n = ed.normal;
    sys.fixed_values.segment(dm.vg_offset(ed.id), k) = project_qgn(
        mesh, ed.id, k - 1, [&phi, n](const Vec2& x) { return phi(x, n); }, edge_ex);
  }

  std::vector<Eigen::Triplet<double>> trip;
  std::vector<Eigen::Triplet<double>> trip_full;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dm.n_free());

  for (int t = 0; t < mesh.n_elements(); ++t) {
    const Element& el = mesh.elements[t];
    const LocalBlocks blocks = dm.local_blocks(mesh, t);
    const int nl = blocks.size();
    const ElementBasis v0_basis(mesh, t, k);
    const ElementBasis test_basis(mesh, t, k - 2);
    const QuadratureRule elem_rule = element_quadrature(mesh, t, elem_ex);

    // weak-Laplacian stiffness L^T M_r L
    const WeakLaplacianOperator op = build_weak_laplacian(mesh, t, k, flavor, elem_ex, edge_ex);
    Eigen::MatrixXd Mr = Eigen::MatrixXd::Zero(test_basis.dim(), test_basis.dim());
    for (std::size_t q = 0; q < elem_rule.size(); ++q) {
      const Eigen::VectorXd phi_q = test_basis.eval(elem_rule.points[q]);
      Mr.noalias() += elem_rule.weights[q] * phi_q * phi_q.transpose();
    }
    Eigen::MatrixXd K = op.matrix.transpose() * Mr * op.matrix;

    // stabilizer: rank-one updates per edge quadrature point
    for (int j = 0; j < blocks.n_edges; ++j) {
      const int e = el.edges[j];
      const double he = mesh.edges[e].length;
      const Vec2 ne = mesh.edges[e].normal;
      const Vec2 te = mesh.edge_tangent(e);
      const EdgeBasis vb_basis(mesh, e, k);
      const EdgeBasis vg_basis(mesh, e, k - 1);
      const QuadratureRule edge_rule = edge_quadrature(mesh, e, edge_ex);
      Eigen::VectorXd rn(nl), rt(nl), rb(nl);
      for (std::size_t q = 0; q < edge_rule.size(); ++q) {
        const double w = edge_rule.weights[q];
        const Vec2& x = edge_rule.points[q];
        const auto grad_v0 = v0_basis.eval_gradient(x);
        const Eigen::VectorXd v0 = v0_basis.eval(x);
        const Eigen::VectorXd vb = vb_basis.eval(x);
        const Eigen::VectorXd vg = vg_basis.eval(x);

        rn.setZero();
        rn.segment(0, blocks.nk) = grad_v0 * ne;
        rn.segment(blocks.vg_offset(j), k) = -vg;
        K.noalias() += (w / he) * rn * rn.transpose();

        if (flavor == GradTrace::full_vector) {
          rt.setZero();
          rt.segment(0, blocks.nk) = grad_v0 * te;
          rt.segment(blocks.vg_offset(j) + k, k) = -vg;
          K.noalias() += (w / he) * rt * rt.transpose();
        }

        rb.setZero();
        rb.segment(0, blocks.nk) = v0;
        rb.segment(blocks.vb_offset(j), blocks.nb) = -vb;
        K.noalias() += (w / (he * he * he)) * rb * rb.transpose();
      }
    }
    K = 0.5 * (K + K.transpose()).eval();

    // load (f, v0)_T
    Eigen::VectorXd load = Eigen::VectorXd::Zero(blocks.nk);
    for (std::size_t q = 0; q < elem_rule.size(); ++q)
      load.noalias() +=
          (elem_rule.weights[q] * f(elem_rule.points[q])) * v0_basis.eval(elem_rule.points[q]);

    const std::vector<int> gidx = dm.local_to_global(mesh, t);
    for (int i = 0; i < blocks.nk; ++i) b[dm.free_of_global[gidx[i]]] += load[i];

    for (int i = 0; i < nl; ++i) {
      const int gi = gidx[i];
      for (int jj = 0; jj < nl; ++jj) {
        const int gj = gidx[jj];
        const double v = K(i, jj);
        if (v == 0.0) continue;
        if (options.keep_full) trip_full.emplace_back(gi, gj, v);
        if (dm.fixed[gi]) continue;
        const int fi = dm.free_of_global[gi];
        if (dm.fixed[gj])
          b[fi] -= v * sys.fixed_values[gj];
        else
          trip.emplace_back(fi, dm.free_of_global[gj], v);
      }
    }
  }

  sys.A.resize(dm.n_free(), dm.n_free());
  sys.A.setFromTriplets(trip.begin(), trip.end());
  sys.A.makeCompressed();
  sys.b = std::move(b);
  if (options.keep_full) {
    sys.A_full.resize(dm.total, dm.total);
    sys.A_full.setFromTriplets(trip_full.begin(), trip_full.end());
    sys.A_full.makeCompressed();
    sys.has_full = true;
  }
  return sys;
}

Eigen::VectorXd solve(const SparseSystem& system, SolverKind method, double tol, SolveInfo* info,
                      const Eigen::VectorXd* initial_guess) {
  const Eigen::SparseMatrix<double>& A = system.A;
  const Eigen::VectorXd& b = system.b;
  const double bnorm = b.norm() > 0.0 ? b.norm() : 1.0;
  Eigen::VectorXd x;
  int iters = 0;

  if (method == SolverKind::direct) {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(A);
    if (llt.info() != Eigen::Success)
      throw SolveError("sparse Cholesky factorization failed: matrix is not SPD");
    x = llt.solve(b);
    // iterative refinement down to the requested residual
    for (int pass = 0; pass < 3; ++pass) {
      const Eigen::VectorXd r = b - A * x;
      if (r.norm() / bnorm < tol) break;
      x += llt.solve(r);
      ++iters;
    }
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg(A);
    cg.setTolerance(tol);
    cg.setMaxIterations(50L * A.rows());
    if (initial_guess)
      x = cg.solveWithGuess(b, Eigen::VectorXd(initial_guess->head(A.rows())));
    else
      x = cg.solve(b);
    iters = static_cast<int>(cg.iterations());
    if (cg.info() != Eigen::Success)
      throw SolveError("conjugate gradients did not converge after " + std::to_string(iters) +
                       " iterations");
  }

  const double relres = (b - A * x).norm() / bnorm;
  if (info) {
    info->relative_residual = relres;
    info->iterations = iters;
  }

  Eigen::VectorXd full = system.fixed_values;
  const DofMap& dm = system.dofmap;
  for (int i = 0; i < dm.n_free(); ++i) full[dm.global_of_free[i]] = x[i];
  return full;
}

void write_matrix_market(const Eigen::SparseMatrix<double>& A, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file: " + path);
  std::size_t nnz_lower = 0;
  for (int c = 0; c < A.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it)
      if (it.row() >= it.col()) ++nnz_lower;
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << A.rows() << " " << A.cols() << " " << nnz_lower << "\n";
  char buf[64];
  for (int c = 0; c < A.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
      if (it.row() < it.col()) continue;
      std::snprintf(buf, sizeof buf, "%d %d %.16e", static_cast<int>(it.row()) + 1,
                    static_cast<int>(it.col()) + 1, it.value());
      out << buf << "\n";
    }
  }
}

}  // namespace wg
