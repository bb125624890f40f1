#include "wg/quadrature.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "wg/errors.hpp"

namespace wg {

double QuadratureRule::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  // Newton iteration on P_n from the Chebyshev initial guess; symmetric pairs.
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

namespace {

const std::pair<std::vector<double>, std::vector<double>>& gauss_cached(int n) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::pair<std::vector<double>, std::vector<double>> gw;
    gauss_legendre(n, gw.first, gw.second);
    it = cache.emplace(n, std::move(gw)).first;
  }
  return it->second;
}

void append_triangle(QuadratureRule& rule, const Vec2& a, const Vec2& b, const Vec2& c,
                     int exactness) {
  // Duffy collapse: x = A + s(B-A) + t(1-s)(C-A); the factor (1-s) raises the
  // s-degree by one, hence the extra point in that direction.
  const int ns = std::max(1, (exactness + 2 + 1) / 2);
  const int nt = std::max(1, (exactness + 1 + 1) / 2);
  const auto& [xs, ws] = gauss_cached(ns);
  const auto& [xt, wt] = gauss_cached(nt);
  const double area2 = orient2(a, b, c);  // twice the signed area
  for (int i = 0; i < ns; ++i) {
    const double s = 0.5 * (xs[i] + 1.0);
    for (int j = 0; j < nt; ++j) {
      const double t = 0.5 * (xt[j] + 1.0);
      const Vec2 p = a + s * (b - a) + t * (1.0 - s) * (c - a);
      rule.points.push_back(p);
      rule.weights.push_back(area2 * 0.25 * ws[i] * wt[j] * (1.0 - s));
    }
  }
}

// Ear clipping for simple polygons whose centroid fan fails; O(m^2), m is small.
std::vector<std::array<Vec2, 3>> ear_clip(std::vector<Vec2> poly) {
  std::vector<std::array<Vec2, 3>> tris;
  while (poly.size() > 3) {
    const std::size_t m = poly.size();
    bool clipped = false;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2& prev = poly[(i + m - 1) % m];
      const Vec2& cur = poly[i];
      const Vec2& next = poly[(i + 1) % m];
      if (orient2(prev, cur, next) <= 0.0) continue;  // reflex corner
      bool ear = true;
      for (std::size_t j = 0; j < m && ear; ++j) {
        if (j == i || j == (i + m - 1) % m || j == (i + 1) % m) continue;
        const Vec2& p = poly[j];
        if (orient2(prev, cur, p) > 0.0 && orient2(cur, next, p) > 0.0 &&
            orient2(next, prev, p) > 0.0)
          ear = false;
      }
      if (!ear) continue;
      tris.push_back({prev, cur, next});
      poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped) throw DegenerateGeometryError("ear clipping failed: polygon not simple");
  }
  tris.push_back({poly[0], poly[1], poly[2]});
  return tris;
}

}  // namespace

QuadratureRule triangle_quadrature(const Vec2& a, const Vec2& b, const Vec2& c, int exactness) {
  QuadratureRule rule;
  rule.exactness = exactness;
  append_triangle(rule, a, b, c, exactness);
  return rule;
}

QuadratureRule element_quadrature(const Mesh& mesh, int element, int exactness) {
  const Element& el = mesh.elements.at(element);
  if (el.area < 1e-14)
    throw DegenerateGeometryError("element " + std::to_string(element) + ": area below 1e-14");
  const auto corners = mesh.element_corners(element);
  const std::size_t m = corners.size();

  QuadratureRule rule;
  rule.exactness = exactness;
  if (m == 3) {
    append_triangle(rule, corners[0], corners[1], corners[2], exactness);
    return rule;
  }

  bool star_from_centroid = true;
  for (std::size_t q = 0; q < m; ++q)
    if (orient2(corners[q], corners[(q + 1) % m], el.centroid) <= 0.0) star_from_centroid = false;

  if (star_from_centroid) {
    for (std::size_t q = 0; q < m; ++q)
      append_triangle(rule, corners[q], corners[(q + 1) % m], el.centroid, exactness);
  } else {
    for (const auto& tri : ear_clip(corners))
      append_triangle(rule, tri[0], tri[1], tri[2], exactness);
  }
  return rule;
}

QuadratureRule segment_quadrature(const Vec2& a, const Vec2& b, int exactness) {
  const int n = std::max(1, (exactness + 2) / 2);
  const auto& [x, w] = gauss_cached(n);
  QuadratureRule rule;
  rule.exactness = exactness;
  const double half_len = 0.5 * (b - a).norm();
  for (int i = 0; i < n; ++i) {
    rule.points.push_back(a + 0.5 * (x[i] + 1.0) * (b - a));
    rule.weights.push_back(half_len * w[i]);
  }
  return rule;
}

QuadratureRule edge_quadrature(const Mesh& mesh, int edge, int exactness) {
  auto [a, b] = mesh.edge_endpoints(edge);
  return segment_quadrature(a, b, exactness);
}

QuadratureRule disk_quadrature(const Vec2& center, double radius, int exactness) {
  // Radial Gauss handles r^(deg+1) after the Jacobian; equispaced angles are
  // exact for trig polynomials of degree <= n_theta - 1.
  const int nr = std::max(1, (exactness + 2 + 1) / 2);
  const int ntheta = exactness + 1 + ((exactness + 1) % 2);
  const auto& [xr, wr] = gauss_cached(nr);
  QuadratureRule rule;
  rule.exactness = exactness;
  const double dtheta = 2.0 * std::numbers::pi / ntheta;
  for (int i = 0; i < nr; ++i) {
    const double r = radius * 0.5 * (xr[i] + 1.0);
    const double wrad = radius * 0.5 * wr[i] * r * dtheta;  // r dr dtheta
    for (int j = 0; j < ntheta; ++j) {
      const double th = dtheta * (j + 0.5);
      rule.points.push_back(center + r * Vec2(std::cos(th), std::sin(th)));
      rule.weights.push_back(wrad);
    }
  }
  return rule;
}

}  // namespace wg
