// Small planar geometry helpers used throughout the mesh and quadrature code.

#ifndef WG_GEOMETRY_HPP
#define WG_GEOMETRY_HPP

#include <Eigen/Dense>

namespace wg {

using Vec2 = Eigen::Vector2d;

/// z-component of the cross product of two planar vectors.
inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Twice the signed area of triangle (a, b, c); positive for CCW order.
inline double orient2(const Vec2& a, const Vec2& b, const Vec2& c) {
  return cross2(b - a, c - a);
}

/// Rotate a vector by -90 degrees: maps a CCW boundary tangent to the outward normal.
inline Vec2 rotate_cw(const Vec2& v) { return Vec2(v.y(), -v.x()); }

/// Signed area of a simple polygon given as a vertex loop.
template <typename PointRange>
double polygon_signed_area(const PointRange& pts) {
  double a2 = 0.0;
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& p = pts[i];
    const Vec2& q = pts[(i + 1) % m];
    a2 += cross2(p, q);
  }
  return 0.5 * a2;
}

/// Area centroid of a simple polygon (valid for non-convex loops too).
template <typename PointRange>
Vec2 polygon_centroid(const PointRange& pts) {
  double a2 = 0.0;
  Vec2 c = Vec2::Zero();
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& p = pts[i];
    const Vec2& q = pts[(i + 1) % m];
    const double cr = cross2(p, q);
    a2 += cr;
    c += (p + q) * cr;
  }
  return c / (3.0 * a2);
}

/// Point-in-polygon test (winding by ray crossing); boundary points count as inside.
template <typename PointRange>
bool point_in_polygon(const Vec2& x, const PointRange& pts) {
  bool inside = false;
  const std::size_t m = pts.size();
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const Vec2& pi = pts[i];
    const Vec2& pj = pts[j];
    // on-segment check
    const double o = orient2(pj, pi, x);
    if (std::abs(o) < 1e-14 && (x - pi).dot(x - pj) <= 1e-14) return true;
    if ((pi.y() > x.y()) != (pj.y() > x.y())) {
      const double t = (x.y() - pi.y()) / (pj.y() - pi.y());
      if (x.x() < pi.x() + t * (pj.x() - pi.x())) inside = !inside;
    }
  }
  return inside;
}

}  // namespace wg

#endif
