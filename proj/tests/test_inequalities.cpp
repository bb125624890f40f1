#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wg/basis.hpp"
#include "wg/inequalities.hpp"
#include "wg/quadrature.hpp"

using namespace wg;

TEST_CASE("trace quotient of the constant on the unit right triangle") {
  // ||1||^2_e / ( h_T^{-1} (||1||^2_T + h_T^2 ||grad 1||^2_T) ) on the bottom leg
  const Mesh m = build_mesh({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{0, 1, 2}});
  const double hT = m.elements[0].diameter;  // sqrt(2)
  const double num = 1.0;                    // edge length
  const double den = (0.5 + 0.0) / hT;       // area / h_T
  CHECK(num / den == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  // the sampled estimator dominates the constant's quotient
  const auto est = estimate_trace_constant(m, 2, 2.0, 50, 42);
  CHECK(est.constant >= 2.0 * std::sqrt(2.0) - 1e-9);
  CHECK(est.id == "trace");
  CHECK(std::isfinite(est.constant));
}

TEST_CASE("trace estimates are scale-invariant across uniform refinements") {
  double first = 0.0;
  for (int n : {2, 4, 8, 16}) {
    const auto est = estimate_trace_constant(build_uniform_triangular(n), 2, 2.0, 200, 42);
    if (n == 2)
      first = est.constant;
    else
      CHECK(std::abs(est.constant - first) < 1e-10 * first);
  }
}

TEST_CASE("inverse inequality estimates") {
  const Mesh m2 = build_uniform_triangular(2);
  const Mesh m32 = build_uniform_triangular(32);
  const auto e2 = estimate_inverse_constant(m2, 2, 200, 42);
  const auto e32 = estimate_inverse_constant(m32, 2, 200, 42);
  CHECK(std::abs(e2.constant - e32.constant) / e2.constant < 0.01);
  CHECK(e2.constant > 0.0);

  // the quotient of a constant is zero; of (x-x_T)/h_T it is computable and
  // below the sampled max
  const Mesh tri = build_mesh({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{0, 1, 2}});
  const ElementBasis basis(tri, 0, 1);
  const QuadratureRule rule = element_quadrature(tri, 0, 4);
  const double hT = tri.elements[0].diameter;
  Eigen::VectorXd cx = Eigen::VectorXd::Zero(3);
  cx[1] = 1.0;  // (x - x_T)/h_T
  double num = 0.0, den = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto g = basis.eval_gradient(rule.points[q]);
    const Vec2 gv(cx.dot(g.col(0)), cx.dot(g.col(1)));
    num += rule.weights[q] * gv.squaredNorm();
    const double v = basis.eval(rule.points[q]).dot(cx);
    den += rule.weights[q] * v * v;
  }
  const double quotient = hT * std::sqrt(num / den);
  CHECK(quotient > 0.0);
  const auto e1 = estimate_inverse_constant(tri, 1, 200, 42);
  CHECK(quotient <= e1.constant + 1e-12);

  // the constant polynomial has a zero quotient
  double gnum = 0.0;
  Eigen::VectorXd c0 = Eigen::VectorXd::Zero(3);
  c0[0] = 3.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto g = basis.eval_gradient(rule.points[q]);
    gnum += rule.weights[q] * Vec2(c0.dot(g.col(0)), c0.dot(g.col(1))).squaredNorm();
  }
  CHECK(gnum == 0.0);
}

TEST_CASE("lp inverse estimates") {
  // phi = 1: ||1||_2 / (h^{-1} ||1||_1) = h, bounded as h -> 0
  for (int n : {2, 8}) {
    const Mesh m = build_uniform_triangular(n);
    const double h = m.h;
    const double quotient = 1.0 / (std::pow(h, 2.0 / 2.0 - 2.0 / 1.0) * 1.0);
    CHECK(quotient == doctest::Approx(h));
  }
  // p = r: the quotient is exactly 1 for any phi
  const Mesh m = build_uniform_triangular(2);
  const auto same = estimate_lp_inverse(m, 2, 2.0, 2.0, 50, 42);
  CHECK(same.constant == doctest::Approx(1.0).epsilon(1e-12));

  // bounded across refinements
  double lo = 1e300, hi = 0.0;
  for (int n : {2, 8, 32}) {
    const auto est = estimate_lp_inverse(build_uniform_triangular(n), 2, 2.0, 1.0, 100, 42);
    lo = std::min(lo, est.constant);
    hi = std::max(hi, est.constant);
  }
  CHECK(hi <= 1.05 * lo);

  CHECK_THROWS_AS(estimate_lp_inverse(m, 2, 1.0, 2.0, 10, 42), Error);
}

TEST_CASE("domain inverse estimates") {
  const Triangle K{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  const Disk S{{0.3, 0.3}, 0.2};

  // constants give sqrt(|K|/|S|)
  const double expect = std::sqrt(0.5 / (M_PI * 0.04));
  const ElementBasis basis((K.a + K.b + K.c) / 3.0, K.diameter(), 2);
  const QuadratureRule rk = triangle_quadrature(K.a, K.b, K.c, 4);
  const QuadratureRule rs = disk_quadrature(S.center, S.radius, 4);
  double nk = 0.0, ns = 0.0;
  for (std::size_t q = 0; q < rk.size(); ++q) {
    const double v = basis.eval(rk.points[q])[0];
    nk += rk.weights[q] * v * v;
  }
  for (std::size_t q = 0; q < rs.size(); ++q) {
    const double v = basis.eval(rs.points[q])[0];
    ns += rs.weights[q] * v * v;
  }
  CHECK(std::sqrt(nk / ns) == doctest::Approx(expect).epsilon(1e-12));

  const auto est = estimate_domain_inverse(K, S, 2, 200, 42);
  CHECK(est.constant >= expect - 1e-9);

  // dilation invariance
  const Triangle K2{{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}};
  const Disk S2{{0.6, 0.6}, 0.4};
  const auto est2 = estimate_domain_inverse(K2, S2, 2, 200, 42);
  CHECK(std::abs(est2.constant - est.constant) < 1e-10 * est.constant);

  // shrinking the ball grows the sampled max
  const auto small1 = estimate_domain_inverse(K, {{0.3, 0.3}, 0.1}, 2, 200, 42);
  const auto small2 = estimate_domain_inverse(K, {{0.3, 0.3}, 0.05}, 2, 200, 42);
  CHECK(small1.constant > est.constant);
  CHECK(small2.constant > small1.constant);

  // containment precondition
  CHECK_THROWS_AS(estimate_domain_inverse(K, {{0.8, 0.8}, 0.2}, 2, 10, 42), Error);
}
