#include "wg/problems.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wg/errors.hpp"

namespace wg {

Problem make_case1() {
  // u = X(x) Y(y) with X = x^2(1-x)^2; f = X''''Y + 2 X''Y'' + X Y''''
  auto X = [](double x) { return x * x * (1.0 - x) * (1.0 - x); };
  auto Xp = [](double x) { return 2.0 * x - 6.0 * x * x + 4.0 * x * x * x; };
  auto Xpp = [](double x) { return 2.0 - 12.0 * x + 12.0 * x * x; };
  Problem p;
  p.name = "case1";
  p.u = [X](const Vec2& v) { return X(v.x()) * X(v.y()); };
  p.grad_u = [X, Xp](const Vec2& v) {
    return Vec2(Xp(v.x()) * X(v.y()), X(v.x()) * Xp(v.y()));
  };
  p.lap_u = [X, Xpp](const Vec2& v) {
    return Xpp(v.x()) * X(v.y()) + X(v.x()) * Xpp(v.y());
  };
  p.f = [X, Xpp](const Vec2& v) {
    return 24.0 * X(v.y()) + 2.0 * Xpp(v.x()) * Xpp(v.y()) + 24.0 * X(v.x());
  };
  return p;
}

Problem make_case2() {
  const double pi = std::numbers::pi;
  Problem p;
  p.name = "case2";
  p.u = [pi](const Vec2& v) { return std::sin(pi * v.x()) * std::sin(pi * v.y()); };
  p.grad_u = [pi](const Vec2& v) {
    return Vec2(pi * std::cos(pi * v.x()) * std::sin(pi * v.y()),
                pi * std::sin(pi * v.x()) * std::cos(pi * v.y()));
  };
  p.lap_u = [pi](const Vec2& v) {
    return -2.0 * pi * pi * std::sin(pi * v.x()) * std::sin(pi * v.y());
  };
  p.f = [pi](const Vec2& v) {
    return 4.0 * pi * pi * pi * pi * std::sin(pi * v.x()) * std::sin(pi * v.y());
  };
  return p;
}

namespace {

double eval_poly(const Eigen::MatrixXd& c, double x, double y) {
  double s = 0.0;
  for (int a = 0; a < c.rows(); ++a)
    for (int b = 0; b < c.cols(); ++b)
      if (c(a, b) != 0.0) s += c(a, b) * std::pow(x, a) * std::pow(y, b);
  return s;
}

Eigen::MatrixXd diff_x(const Eigen::MatrixXd& c) {
  if (c.rows() <= 1) return Eigen::MatrixXd::Zero(1, c.cols());
  Eigen::MatrixXd d(c.rows() - 1, c.cols());
  for (int a = 1; a < c.rows(); ++a) d.row(a - 1) = a * c.row(a);
  return d;
}

Eigen::MatrixXd diff_y(const Eigen::MatrixXd& c) {
  if (c.cols() <= 1) return Eigen::MatrixXd::Zero(c.rows(), 1);
  Eigen::MatrixXd d(c.rows(), c.cols() - 1);
  for (int b = 1; b < c.cols(); ++b) d.col(b - 1) = b * c.col(b);
  return d;
}

Eigen::MatrixXd add(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(std::max(a.rows(), b.rows()),
                                            std::max(a.cols(), b.cols()));
  s.topLeftCorner(a.rows(), a.cols()) += a;
  s.topLeftCorner(b.rows(), b.cols()) += b;
  return s;
}

}  // namespace

Problem make_polynomial_problem(const Eigen::MatrixXd& coeffs, std::string name) {
  const Eigen::MatrixXd cx = diff_x(coeffs);
  const Eigen::MatrixXd cy = diff_y(coeffs);
  const Eigen::MatrixXd lap = add(diff_x(cx), diff_y(cy));
  const Eigen::MatrixXd bih = add(diff_x(diff_x(lap)), diff_y(diff_y(lap)));
  Problem p;
  p.name = std::move(name);
  p.u = [coeffs](const Vec2& v) { return eval_poly(coeffs, v.x(), v.y()); };
  p.grad_u = [cx, cy](const Vec2& v) {
    return Vec2(eval_poly(cx, v.x(), v.y()), eval_poly(cy, v.x(), v.y()));
  };
  p.lap_u = [lap](const Vec2& v) { return eval_poly(lap, v.x(), v.y()); };
  p.f = [bih](const Vec2& v) { return eval_poly(bih, v.x(), v.y()); };
  return p;
}

Problem load_polynomial_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file: " + path);
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(1, 1);
  std::string line;
  int lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double c;
    int a, b;
    if (!(ls >> c)) continue;  // blank
    if (!(ls >> a >> b) || a < 0 || b < 0)
      throw ParseError("problem file line " + std::to_string(lineno) +
                       ": expected 'c a b' with a, b >= 0");
    if (a + 1 > coeffs.rows() || b + 1 > coeffs.cols()) {
      Eigen::MatrixXd grown = Eigen::MatrixXd::Zero(std::max<int>(a + 1, coeffs.rows()),
                                                    std::max<int>(b + 1, coeffs.cols()));
      grown.topLeftCorner(coeffs.rows(), coeffs.cols()) = coeffs;
      coeffs.swap(grown);
    }
    coeffs(a, b) += c;
    any = true;
  }
  if (!any) throw ParseError("problem file " + path + ": no terms");
  return make_polynomial_problem(coeffs, "file:" + path);
}

Problem make_problem(const std::string& id) {
  if (id == "case1") return make_case1();
  if (id == "case2") return make_case2();
  if (id == "poly2") {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(3, 3);
    c(0, 0) = 1.0; c(1, 0) = 0.5; c(0, 1) = -1.0;
    c(2, 0) = 1.0; c(1, 1) = 2.0; c(0, 2) = -0.5;
    return make_polynomial_problem(c, "poly2");
  }
  if (id == "poly3") {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(4, 4);
    c(0, 0) = 0.25; c(1, 0) = -1.0; c(0, 1) = 0.5; c(1, 1) = 1.0;
    c(2, 0) = 0.75; c(0, 2) = -0.25;
    c(3, 0) = 1.0; c(2, 1) = -2.0; c(1, 2) = 0.5; c(0, 3) = 1.5;
    return make_polynomial_problem(c, "poly3");
  }
  throw Error("unknown problem id: " + id + " (expected case1, case2, poly2, or poly3)");
}

}  // namespace wg
