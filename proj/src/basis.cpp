#include "wg/basis.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "wg/errors.hpp"

namespace wg {

BasisOptions& basis_options() {
  static BasisOptions opts;
  return opts;
}

std::vector<std::pair<int, int>> monomial_exponents(int k) {
  std::vector<std::pair<int, int>> exps;
  exps.reserve(poly_dim_2d(k));
  for (int d = 0; d <= k; ++d)
    for (int a = d; a >= 0; --a) exps.emplace_back(a, d - a);
  return exps;
}

ElementBasis::ElementBasis(const Mesh& mesh, int element, int degree)
    : ElementBasis(mesh.elements.at(element).centroid, mesh.elements.at(element).diameter,
                   degree) {
  if (degree > basis_options().orthonormalize_above)
    orthonormalize(element_quadrature(mesh, element, 2 * degree));
}

ElementBasis::ElementBasis(Vec2 center, double scale, int degree)
    : center_(center), scale_(scale), degree_(degree), exps_(monomial_exponents(degree)) {}

Eigen::VectorXd ElementBasis::raw_eval(const Vec2& x) const {
  const double X = (x.x() - center_.x()) / scale_;
  const double Y = (x.y() - center_.y()) / scale_;
  // powers up to degree once, then gather
  std::vector<double> px(degree_ + 1, 1.0), py(degree_ + 1, 1.0);
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * X;
    py[i] = py[i - 1] * Y;
  }
  Eigen::VectorXd v(dim());
  for (int i = 0; i < dim(); ++i) v[i] = px[exps_[i].first] * py[exps_[i].second];
  return v;
}

Eigen::VectorXd ElementBasis::eval(const Vec2& x) const {
  Eigen::VectorXd v = raw_eval(x);
  return orthonormal_ ? Eigen::VectorXd(transform_ * v) : v;
}

Eigen::Matrix<double, Eigen::Dynamic, 2> ElementBasis::eval_gradient(const Vec2& x) const {
  const double X = (x.x() - center_.x()) / scale_;
  const double Y = (x.y() - center_.y()) / scale_;
  std::vector<double> px(degree_ + 1, 1.0), py(degree_ + 1, 1.0);
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * X;
    py[i] = py[i - 1] * Y;
  }
  Eigen::Matrix<double, Eigen::Dynamic, 2> g(dim(), 2);
  for (int i = 0; i < dim(); ++i) {
    const auto [a, b] = exps_[i];
    g(i, 0) = a > 0 ? a * px[a - 1] * py[b] / scale_ : 0.0;
    g(i, 1) = b > 0 ? b * px[a] * py[b - 1] / scale_ : 0.0;
  }
  return orthonormal_ ? Eigen::Matrix<double, Eigen::Dynamic, 2>(transform_ * g) : g;
}

Eigen::VectorXd ElementBasis::eval_laplacian(const Vec2& x) const {
  const double X = (x.x() - center_.x()) / scale_;
  const double Y = (x.y() - center_.y()) / scale_;
  std::vector<double> px(degree_ + 1, 1.0), py(degree_ + 1, 1.0);
  for (int i = 1; i <= degree_; ++i) {
    px[i] = px[i - 1] * X;
    py[i] = py[i - 1] * Y;
  }
  const double s2 = scale_ * scale_;
  Eigen::VectorXd v(dim());
  for (int i = 0; i < dim(); ++i) {
    const auto [a, b] = exps_[i];
    double lap = 0.0;
    if (a >= 2) lap += a * (a - 1) * px[a - 2] * py[b];
    if (b >= 2) lap += b * (b - 1) * px[a] * py[b - 2];
    v[i] = lap / s2;
  }
  return orthonormal_ ? Eigen::VectorXd(transform_ * v) : v;
}

Eigen::MatrixXd ElementBasis::mass_matrix(const QuadratureRule& rule) const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim(), dim());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd v = eval(rule.points[q]);
    M.noalias() += rule.weights[q] * v * v.transpose();
  }
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw SingularMassError("element mass matrix not SPD (degenerate element or basis)");
  return M;
}

void ElementBasis::orthonormalize(const QuadratureRule& rule) {
  const Eigen::MatrixXd M = mass_matrix(rule);
  // basis = L^{-1} * monomials gives an identity Gram matrix
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  Eigen::MatrixXd Linv = Eigen::MatrixXd::Identity(dim(), dim());
  llt.matrixL().solveInPlace(Linv);
  transform_ = orthonormal_ ? Eigen::MatrixXd(Linv * transform_) : Linv;
  orthonormal_ = true;
}

EdgeBasis::EdgeBasis(const Mesh& mesh, int edge, int degree)
    : EdgeBasis(mesh.edge_endpoints(edge).first, mesh.edge_endpoints(edge).second, degree) {}

EdgeBasis::EdgeBasis(Vec2 start, Vec2 end, int degree) : start_(start), degree_(degree) {
  const Vec2 d = end - start;
  length_ = d.norm();
  tangent_ = d / length_;
}

double EdgeBasis::param(const Vec2& x) const {
  return (x - start_).dot(tangent_) / length_ - 0.5;
}

Eigen::VectorXd EdgeBasis::eval(const Vec2& x) const {
  const double t = param(x);
  Eigen::VectorXd v(dim());
  double p = 1.0;
  for (int i = 0; i <= degree_; ++i) {
    v[i] = p;
    p *= t;
  }
  return v;
}

Eigen::MatrixXd EdgeBasis::mass_matrix(const QuadratureRule& rule) const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim(), dim());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd v = eval(rule.points[q]);
    M.noalias() += rule.weights[q] * v * v.transpose();
  }
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw SingularMassError("edge mass matrix not SPD (degenerate edge)");
  return M;
}

}  // namespace wg
