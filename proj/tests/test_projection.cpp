#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wg/projection.hpp"

using namespace wg;

namespace {

Mesh unit_right_triangle() {
  return build_mesh({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{0, 1, 2}});
}

double eval_on(const ElementBasis& basis, const Eigen::VectorXd& c, const Vec2& x) {
  return basis.eval(x).dot(c);
}

}  // namespace

TEST_CASE("basis ordering and normalization") {
  const Mesh m = unit_right_triangle();
  const ElementBasis basis(m, 0, 2);
  CHECK(basis.dim() == 6);
  const Eigen::VectorXd at_center = basis.eval(m.elements[0].centroid);
  CHECK(at_center[0] == 1.0);  // constant basis function
  for (int i = 1; i < 6; ++i) CHECK(at_center[i] == doctest::Approx(0.0));
  const auto exps = monomial_exponents(2);
  CHECK(exps[1] == std::pair<int, int>(1, 0));
  CHECK(exps[2] == std::pair<int, int>(0, 1));
  CHECK(exps[4] == std::pair<int, int>(1, 1));
}

TEST_CASE("Q0 reproduces members of P_k and kills nothing") {
  const Mesh m = build_uniform_triangular(2);
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int t : {0, 3, 5}) {
    const auto c = project_q0(m, t, 2, [](const Vec2& p) { return p.x() + p.y(); });
    const ElementBasis basis(m, t, 2);
    for (int i = 0; i < 10; ++i) {
      const Vec2 x(uni(eng), uni(eng));
      CHECK(eval_on(basis, c, x) == doctest::Approx(x.x() + x.y()).epsilon(1e-12));
    }
    const auto zero = project_q0(m, t, 2, [](const Vec2&) { return 0.0; });
    CHECK(zero.norm() == 0.0);
  }
}

TEST_CASE("Q0 orthogonality residual") {
  const Mesh m = unit_right_triangle();
  auto f = [](const Vec2& p) { return p.x() * p.x() * p.x(); };
  const auto c = project_q0(m, 0, 2, f, 8);
  const ElementBasis basis(m, 0, 2);
  const QuadratureRule rule = element_quadrature(m, 0, 8);  // exact for deg(f*q) = 5
  for (int i = 0; i < 6; ++i) {
    const double residual = rule.integrate([&](const Vec2& x) {
      return (f(x) - eval_on(basis, c, x)) * basis.eval(x)[i];
    });
    CHECK(std::abs(residual) < 1e-11);
  }
}

TEST_CASE("projection idempotence") {
  const Mesh m = build_uniform_triangular(2);
  auto f = [](const Vec2& p) { return std::sin(3.0 * p.x()) + p.y() * p.y() * p.y(); };
  const auto c1 = project_q0(m, 1, 3, f);
  const ElementBasis basis(m, 1, 3);
  const auto c2 = project_q0(m, 1, 3, [&](const Vec2& x) { return eval_on(basis, c1, x); });
  CHECK((c1 - c2).lpNorm<Eigen::Infinity>() < 1e-13 * c1.lpNorm<Eigen::Infinity>());

  const auto cb1 = project_qb(m, 0, 2, f);
  const EdgeBasis eb(m, 0, 2);
  const auto cb2 = project_qb(m, 0, 2, [&](const Vec2& x) { return eb.eval(x).dot(cb1); });
  CHECK((cb1 - cb2).lpNorm<Eigen::Infinity>() < 1e-13);
}

TEST_CASE("edge projections") {
  const Mesh m = unit_right_triangle();
  // Q_b of a degree-k trace is exact
  auto f = [](const Vec2& p) { return 1.0 + 2.0 * p.x() - p.y() + p.x() * p.x(); };
  for (const auto& e : m.edges) {
    const auto c = project_qb(m, e.id, 2, f);
    const EdgeBasis basis(m, e.id, 2);
    const QuadratureRule rule = edge_quadrature(m, e.id, 6);
    for (const auto& x : rule.points)
      CHECK(basis.eval(x).dot(c) == doctest::Approx(f(x)).epsilon(1e-12));
  }
  // Q_g of a constant vector reconstructs it exactly
  for (const auto& e : m.edges) {
    const auto c = project_qg(m, e.id, 1, [](const Vec2&) { return Vec2(1.0, 0.0); });
    const EdgeBasis basis(m, e.id, 1);
    const Vec2 n = e.normal;
    const Vec2 t = m.edge_tangent(e.id);
    const QuadratureRule rule = edge_quadrature(m, e.id, 4);
    for (const auto& x : rule.points) {
      const Vec2 rec = basis.eval(x).dot(c.normal) * n + basis.eval(x).dot(c.tangential) * t;
      CHECK((rec - Vec2(1.0, 0.0)).norm() < 1e-12);
    }
  }
  // Q_gn of the arclength parameter with degree 1 is exact
  {
    const int e = 0;
    const EdgeBasis basis(m, e, 1);
    auto g = [&](const Vec2& x) { return basis.param(x); };
    const auto c = project_qgn(m, e, 1, g);
    CHECK(c[0] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(c[1] == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("interior projection onto P_{k-2}") {
  const Mesh m = unit_right_triangle();
  // k=2: the projection is the mean value; centroid x-coordinate for f = x
  const auto c = project_qh_interior(m, 0, 2, [](const Vec2& p) { return p.x(); });
  CHECK(c.size() == 1);
  CHECK(c[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  const auto cc = project_qh_interior(m, 0, 2, [](const Vec2&) { return 7.5; });
  CHECK(cc[0] == doctest::Approx(7.5).epsilon(1e-13));
  // f in P_{k-2} is reproduced (k=4, f quadratic)
  auto f = [](const Vec2& p) { return 1.0 + p.x() - 2.0 * p.y() + 0.5 * p.x() * p.y(); };
  const auto c4 = project_qh_interior(m, 0, 4, f);
  const ElementBasis basis(m, 0, 2);
  const QuadratureRule rule = element_quadrature(m, 0, 6);
  for (const auto& x : rule.points)
    CHECK(basis.eval(x).dot(c4) == doctest::Approx(f(x)).epsilon(1e-12));
}

TEST_CASE("embedding a global polynomial leaves no stabilizer residual") {
  const Mesh m = build_uniform_triangular(2);
  const int k = 2;
  for (GradTrace flavor : {GradTrace::normal_only, GradTrace::full_vector}) {
    const DofMap dm = build_dof_map(m, k, flavor);
    auto u = [](const Vec2& p) { return p.x() * p.x() + 0.5 * p.x() * p.y() - p.y(); };
    auto grad = [](const Vec2& p) { return Vec2(2.0 * p.x() + 0.5 * p.y(), 0.5 * p.x() - 1.0); };
    const Eigen::VectorXd qh = embed_exact_solution(m, dm, u, grad);

    double stab = 0.0;
    for (int t = 0; t < m.n_elements(); ++t) {
      const Element& el = m.elements[t];
      const LocalWeakFunction lf = dm.gather(m, t, qh);
      const ElementBasis v0b(m, t, k);
      for (std::size_t j = 0; j < el.edges.size(); ++j) {
        const int e = el.edges[j];
        const Vec2 ne = m.edges[e].normal;
        const Vec2 te = m.edge_tangent(e);
        const EdgeBasis vbb(m, e, k);
        const EdgeBasis vgb(m, e, k - 1);
        const QuadratureRule rule = edge_quadrature(m, e, 2 * k);
        LocalWeakFunction mut = lf;
        for (std::size_t q = 0; q < rule.size(); ++q) {
          const Vec2& x = rule.points[q];
          const auto g = v0b.eval_gradient(x);
          const Vec2 gv(mut.v0().dot(g.col(0)), mut.v0().dot(g.col(1)));
          const double jn = gv.dot(ne) - vgb.eval(x).dot(mut.vg(j).head(k));
          const double jb = v0b.eval(x).dot(mut.v0()) - vbb.eval(x).dot(mut.vb(j));
          stab += rule.weights[q] * (jn * jn + jb * jb);
          if (flavor == GradTrace::full_vector) {
            const double jt = gv.dot(te) - vgb.eval(x).dot(mut.vg(j).tail(k));
            stab += rule.weights[q] * jt * jt;
          }
        }
      }
    }
    CHECK(stab < 1e-20);

    const Eigen::VectorXd zero =
        embed_exact_solution(m, dm, [](const Vec2&) { return 0.0; },
                             [](const Vec2&) { return Vec2(0.0, 0.0); });
    CHECK(zero.norm() == 0.0);
  }
}

TEST_CASE("mass conditioning is h-uniform in the scaled basis") {
  for (int k : {2, 3}) {
    double cond_min = 1e300, cond_max = 0.0;
    for (int n : {2, 8, 32}) {
      const Mesh m = build_uniform_triangular(n);
      const ElementBasis basis(m, 0, k);
      const Eigen::MatrixXd M = basis.mass_matrix(element_quadrature(m, 0, 2 * k + 2));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M / m.elements[0].area);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
      const double cond = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
      cond_min = std::min(cond_min, cond);
      cond_max = std::max(cond_max, cond);
    }
    CHECK(cond_max / cond_min < 2.0);
  }
}

TEST_CASE("orthonormalized bases have identity Gram matrices") {
  const Mesh m = build_uniform_triangular(2);
  ElementBasis basis(m, 0, 5);
  const QuadratureRule rule = element_quadrature(m, 0, 12);
  basis.orthonormalize(rule);
  const Eigen::MatrixXd M = basis.mass_matrix(rule);
  CHECK((M - Eigen::MatrixXd::Identity(M.rows(), M.cols())).lpNorm<Eigen::Infinity>() < 1e-10);
}
