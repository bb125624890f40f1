#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "wg/norms.hpp"

using namespace wg;

namespace {

// iterated 5-point Laplacian: an independent check of the hard-coded loads.
// One Richardson step cancels the h^2 truncation term; a single narrow stencil
// cannot reach 1e-4 against the h^{-4} roundoff floor.
double fd_biharmonic(const ScalarField& u, const Vec2& x, double h) {
  auto lap2 = [&](double hh) {
    auto lap = [&](const Vec2& p) {
      return (u({p.x() + hh, p.y()}) + u({p.x() - hh, p.y()}) + u({p.x(), p.y() + hh}) +
              u({p.x(), p.y() - hh}) - 4.0 * u(p)) /
             (hh * hh);
    };
    return (lap({x.x() + hh, x.y()}) + lap({x.x() - hh, x.y()}) + lap({x.x(), x.y() + hh}) +
            lap({x.x(), x.y() - hh}) - 4.0 * lap(x)) /
           (hh * hh);
  };
  return (4.0 * lap2(0.5 * h) - lap2(h)) / 3.0;
}

}  // namespace

TEST_CASE("norm values with closed forms") {
  const Mesh tri = build_uniform_triangular(2);
  const Mesh vor = build_polygonal(16, 2, 9);
  for (const Mesh* m : {&tri, &vor}) {
    const DofMap dm = build_dof_map(*m, 2, GradTrace::normal_only);
    CHECK(triple_bar_norm(*m, dm, Eigen::VectorXd::Zero(dm.total)) == 0.0);
    CHECK(l2_norm_element(*m, dm, Eigen::VectorXd::Zero(dm.total)) == 0.0);

    // |||Q_h(x^2)||| = sqrt(int_Omega 2^2) = 2: stabilizer-free global polynomial
    const Eigen::VectorXd qh = embed_exact_solution(
        *m, dm, [](const Vec2& p) { return p.x() * p.x(); },
        [](const Vec2& p) { return Vec2(2.0 * p.x(), 0.0); });
    CHECK(triple_bar_norm(*m, dm, qh) == doctest::Approx(2.0).epsilon(1e-12));

    // homogeneity
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXd v(dm.total);
    for (int i = 0; i < v.size(); ++i) v[i] = uni(eng);
    const double base = triple_bar_norm(*m, dm, v);
    CHECK(triple_bar_norm(*m, dm, -3.0 * v) == doctest::Approx(3.0 * base).epsilon(1e-13));
    CHECK(l2_norm_element(*m, dm, -3.0 * v) ==
          doctest::Approx(3.0 * l2_norm_element(*m, dm, v)).epsilon(1e-13));

    // triangle inequality on random pairs
    Eigen::VectorXd w(dm.total);
    for (int i = 0; i < w.size(); ++i) w[i] = uni(eng);
    CHECK(triple_bar_norm(*m, dm, v + w) <=
          triple_bar_norm(*m, dm, v) + triple_bar_norm(*m, dm, w) + 1e-12);

    // v0 = 1 has unit element L2 norm on the unit square
    Eigen::VectorXd ones = Eigen::VectorXd::Zero(dm.total);
    for (int t = 0; t < m->n_elements(); ++t) ones[dm.v0_offset(t)] = 1.0;
    CHECK(l2_norm_element(*m, dm, ones) == doctest::Approx(1.0).epsilon(1e-13));

    // v0 = Q_0(x): ||x||_{L2(0,1)^2} = 1/sqrt(3)
    Eigen::VectorXd px = Eigen::VectorXd::Zero(dm.total);
    for (int t = 0; t < m->n_elements(); ++t)
      px.segment(dm.v0_offset(t), dm.nk) =
          project_q0(*m, t, 2, [](const Vec2& p) { return p.x(); });
    CHECK(l2_norm_element(*m, dm, px) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  }
}

TEST_CASE("error report vanishes when the solve is bypassed") {
  const Mesh m = build_uniform_triangular(2);
  const DofMap dm = build_dof_map(m, 2, GradTrace::normal_only);
  const Problem prob = make_case2();
  const Eigen::VectorXd qh = embed_exact_solution(m, dm, prob.u, prob.grad_u);
  const ErrorReport rep = error_vs_projection(m, dm, qh, prob, 0.5);
  CHECK(rep.err_h2 <= 1e-15);
  CHECK(rep.err_l2 <= 1e-15);
  CHECK(rep.h == 0.5);
}

TEST_CASE("manufactured loads agree with finite differences") {
  std::mt19937_64 eng(12);
  std::uniform_real_distribution<double> uni(0.1, 0.9);
  for (const Problem& prob : {make_case1(), make_case2(), make_problem("poly3")}) {
    for (int i = 0; i < 20; ++i) {
      const Vec2 x(uni(eng), uni(eng));
      const double fd = fd_biharmonic(prob.u, x, 1e-2);
      const double ex = prob.f(x);
      const double scale = std::max(1.0, std::abs(ex));
      CHECK(std::abs(fd - ex) / scale < 1e-4);
    }
  }
}

TEST_CASE("table values from the paper's first rows") {
  const Problem prob = make_case1();
  std::vector<MeshLevel> levels;
  for (int n : {4, 8}) levels.push_back({build_uniform_triangular(n), 1.0 / n});
  const ConvergenceTable table = convergence_study(prob, 2, GradTrace::normal_only, levels);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].err_h2 == doctest::Approx(2.5683e-01).epsilon(0.02));
  CHECK(table.rows[0].err_l2 == doctest::Approx(3.3304e-02).epsilon(0.02));
  CHECK(table.rows[1].err_h2 == doctest::Approx(1.3540e-01).epsilon(0.02));
  CHECK(table.rows[1].err_l2 == doctest::Approx(9.1046e-03).epsilon(0.02));
  REQUIRE(table.rows[1].order_h2.has_value());
  CHECK(*table.rows[1].order_h2 == doctest::Approx(0.92359).epsilon(0.06));
  CHECK(*table.rows[1].order_l2 == doctest::Approx(1.8710).epsilon(0.06));
}

TEST_CASE("patch-test studies blank their order columns") {
  const Problem prob = make_problem("poly2");
  std::vector<MeshLevel> levels;
  for (int n : {2, 4}) levels.push_back({build_uniform_triangular(n), 1.0 / n});
  const ConvergenceTable table = convergence_study(prob, 2, GradTrace::normal_only, levels);
  CHECK(table.rows[1].err_h2 < 1e-8);
  CHECK(!table.rows[1].order_h2.has_value());

  std::ostringstream csv;
  table.write_csv(csv);
  CHECK(csv.str().find("h,err_h2,order_h2,err_l2,order_l2") == 0);
  std::ostringstream txt;
  table.print(txt);
  CHECK(txt.str().find("err_h2") != std::string::npos);
}

TEST_CASE("single-level tables have no orders") {
  const Problem prob = make_case1();
  std::vector<MeshLevel> levels;
  levels.push_back({build_uniform_triangular(2), 0.5});
  const ConvergenceTable table = convergence_study(prob, 2, GradTrace::normal_only, levels);
  REQUIRE(table.rows.size() == 1);
  CHECK(!table.rows[0].order_h2.has_value());
  CHECK(!table.rows[0].order_l2.has_value());
}
