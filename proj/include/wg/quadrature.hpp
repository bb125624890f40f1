// Quadrature on polygonal elements, edges, and disks.
//
// Element rules fan-triangulate the polygon (from the centroid when the polygon
// is star-shaped with respect to it, by ear clipping otherwise) and place a
// collapsed tensor-product Gauss rule on each piece, so weights are positive at
// every exactness degree.

#ifndef WG_QUADRATURE_HPP
#define WG_QUADRATURE_HPP

#include <vector>

#include "wg/geometry.hpp"
#include "wg/mesh.hpp"

namespace wg {

struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int exactness = 0;

  std::size_t size() const { return points.size(); }
  double weight_sum() const;

  /// Applies the rule to a callable f(Vec2) -> double.
  template <typename F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t q = 0; q < points.size(); ++q) s += weights[q] * f(points[q]);
    return s;
  }
};

/// Gauss-Legendre nodes and weights on [-1, 1], exact through degree 2n-1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Rule on triangle (a, b, c), exact for total degree <= exactness.
QuadratureRule triangle_quadrature(const Vec2& a, const Vec2& b, const Vec2& c, int exactness);

/// Rule on a mesh element (any simple polygon). Throws DegenerateGeometryError
/// if the element area is below 1e-14.
QuadratureRule element_quadrature(const Mesh& mesh, int element, int exactness);

/// Gauss rule on an edge; weights sum to the edge length.
QuadratureRule edge_quadrature(const Mesh& mesh, int edge, int exactness);

/// Gauss rule on the segment [a, b].
QuadratureRule segment_quadrature(const Vec2& a, const Vec2& b, int exactness);

/// Tensor rule (radial Gauss x equispaced angles) on a disk, exact for
/// polynomials of total degree <= exactness.
QuadratureRule disk_quadrature(const Vec2& center, double radius, int exactness);

}  // namespace wg

#endif
