// Scaled monomial bases on elements, monomial bases on edges, and their
// evaluation. Element basis functions are ((x-x_T)/h_T)^a ((y-y_T)/h_T)^b in
// graded lexicographic order; edge basis functions are powers of the centered
// arclength parameter t in [-1/2, 1/2].

#ifndef WG_BASIS_HPP
#define WG_BASIS_HPP

#include <Eigen/Dense>
#include <vector>

#include "wg/mesh.hpp"
#include "wg/quadrature.hpp"

namespace wg {

/// dim P_k in 2D.
constexpr int poly_dim_2d(int k) { return (k + 1) * (k + 2) / 2; }

/// Process-wide basis settings. Element bases of degree strictly above
/// `orthonormalize_above` are orthonormalized at construction (Gram-Schmidt
/// against a just-exact element rule); the default leaves monomials untouched.
struct BasisOptions {
  int orthonormalize_above = 1 << 20;
};
BasisOptions& basis_options();

/// Monomial exponent pairs (a, b) with a + b <= k, graded lexicographic:
/// (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
std::vector<std::pair<int, int>> monomial_exponents(int k);

class ElementBasis {
 public:
  ElementBasis(const Mesh& mesh, int element, int degree);
  /// Free-standing variant (no mesh needed), e.g. for the inequality estimators.
  ElementBasis(Vec2 center, double scale, int degree);

  int degree() const { return degree_; }
  int dim() const { return static_cast<int>(exps_.size()); }
  Vec2 center() const { return center_; }
  double scale() const { return scale_; }

  /// Row vector of basis values at x.
  Eigen::VectorXd eval(const Vec2& x) const;
  /// Gradient of each basis function at x; rows are functions, columns d/dx, d/dy.
  Eigen::Matrix<double, Eigen::Dynamic, 2> eval_gradient(const Vec2& x) const;
  /// Laplacian of each basis function at x (closed form, no differencing).
  Eigen::VectorXd eval_laplacian(const Vec2& x) const;

  /// Gram (mass) matrix under the given rule. Throws SingularMassError if not SPD.
  Eigen::MatrixXd mass_matrix(const QuadratureRule& rule) const;

  /// Replaces the monomial span by its Gram-Schmidt orthonormalization with
  /// respect to the given rule (for high degrees where monomials condition badly).
  void orthonormalize(const QuadratureRule& rule);

 private:
  Vec2 center_;
  double scale_ = 1.0;
  int degree_ = 0;
  std::vector<std::pair<int, int>> exps_;
  Eigen::MatrixXd transform_;  // empty unless orthonormalized; rows map monomials -> basis
  bool orthonormal_ = false;

  Eigen::VectorXd raw_eval(const Vec2& x) const;
};

class EdgeBasis {
 public:
  EdgeBasis(const Mesh& mesh, int edge, int degree);
  EdgeBasis(Vec2 start, Vec2 end, int degree);

  int degree() const { return degree_; }
  int dim() const { return degree_ + 1; }

  /// Centered scaled arclength parameter of a point assumed to lie on the edge.
  double param(const Vec2& x) const;
  /// Basis values (1, t, t^2, ...) at a point on the edge.
  Eigen::VectorXd eval(const Vec2& x) const;

  Eigen::MatrixXd mass_matrix(const QuadratureRule& rule) const;

 private:
  Vec2 start_;
  Vec2 tangent_;
  double length_ = 0.0;
  int degree_ = 0;
};

}  // namespace wg

#endif
