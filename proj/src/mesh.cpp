#include "wg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace wg {

std::vector<Vec2> Mesh::element_corners(int t) const {
  const Element& el = elements[t];
  std::vector<Vec2> pts;
  pts.reserve(el.vertices.size());
  for (int v : el.vertices) pts.push_back(vertex_pos(v));
  return pts;
}

std::pair<Vec2, Vec2> Mesh::edge_endpoints(int e) const {
  const Edge& ed = edges[e];
  return {vertex_pos(ed.v[0]), vertex_pos(ed.v[1])};
}

Vec2 Mesh::edge_tangent(int e) const {
  auto [a, b] = edge_endpoints(e);
  return (b - a).normalized();
}

double Mesh::total_area() const {
  double s = 0.0;
  for (const Element& el : elements) s += el.area;
  return s;
}

namespace {

// Proper + touching segment intersection test for the simplicity check.
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double d1 = orient2(c, d, a);
  const double d2 = orient2(c, d, b);
  const double d3 = orient2(a, b, c);
  const double d4 = orient2(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return false;
}

void validate_loop_simple(const std::vector<Vec2>& pts, int elem_id) {
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      // skip adjacent segments (they share an endpoint)
      if (j == i + 1 || (i == 0 && j == m - 1)) continue;
      if (segments_cross(pts[i], pts[(i + 1) % m], pts[j], pts[(j + 1) % m])) {
        throw TopologyError("element " + std::to_string(elem_id) +
                            ": vertex loop is self-intersecting");
      }
    }
  }
}

}  // namespace

Mesh build_mesh(std::vector<Vec2> points, std::vector<std::vector<int>> loops) {
  Mesh mesh;
  const int nv = static_cast<int>(points.size());
  mesh.vertices.resize(nv);
  for (int i = 0; i < nv; ++i) {
    if (!std::isfinite(points[i].x()) || !std::isfinite(points[i].y()))
      throw DegenerateGeometryError("vertex " + std::to_string(i) + ": non-finite coordinates");
    mesh.vertices[i] = Vertex{i, points[i].x(), points[i].y()};
  }

  mesh.elements.resize(loops.size());
  std::map<std::pair<int, int>, int> edge_of;

  for (std::size_t t = 0; t < loops.size(); ++t) {
    Element& el = mesh.elements[t];
    el.id = static_cast<int>(t);
    el.vertices = loops[t];
    const std::size_t m = el.vertices.size();
    if (m < 3) throw TopologyError("element " + std::to_string(t) + ": fewer than 3 vertices");
    std::set<int> uniq(el.vertices.begin(), el.vertices.end());
    if (uniq.size() != m)
      throw TopologyError("element " + std::to_string(t) + ": repeated vertex in loop");
    for (int v : el.vertices)
      if (v < 0 || v >= nv)
        throw TopologyError("element " + std::to_string(t) + ": vertex id out of range");

    std::vector<Vec2> pts;
    pts.reserve(m);
    for (int v : el.vertices) pts.push_back(points[v]);
    const double area = polygon_signed_area(pts);
    if (!(area > 0.0))
      throw TopologyError("element " + std::to_string(t) +
                          ": vertex loop not counter-clockwise (signed area <= 0)");
    validate_loop_simple(pts, el.id);
    el.area = area;
    el.centroid = polygon_centroid(pts);
    el.diameter = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        el.diameter = std::max(el.diameter, (pts[i] - pts[j]).norm());

    el.edges.resize(m);
    el.edge_sign.assign(m, 0.0);
    for (std::size_t q = 0; q < m; ++q) {
      const int a = el.vertices[q];
      const int b = el.vertices[(q + 1) % m];
      const auto key = std::minmax(a, b);
      auto it = edge_of.find(key);
      int e;
      if (it == edge_of.end()) {
        e = static_cast<int>(mesh.edges.size());
        edge_of.emplace(key, e);
        Edge ed;
        ed.id = e;
        ed.v = {key.first, key.second};
        ed.length = (points[key.first] - points[key.second]).norm();
        if (!(ed.length > 0.0))
          throw DegenerateGeometryError("edge between vertices " + std::to_string(key.first) +
                                        " and " + std::to_string(key.second) +
                                        ": zero length");
        mesh.edges.push_back(ed);
      } else {
        e = it->second;
      }
      Edge& ed = mesh.edges[e];
      if (ed.elems[0] < 0)
        ed.elems[0] = el.id;
      else if (ed.elems[1] < 0)
        ed.elems[1] = el.id;
      else
        throw TopologyError("edge " + std::to_string(e) +
                            ": shared by more than two elements (non-manifold)");
      el.edges[q] = e;
    }
  }

  // fixed normals and orientation signs
  for (Edge& ed : mesh.edges) {
    if (ed.elems[0] < 0) throw TopologyError("edge " + std::to_string(ed.id) + ": orphaned");
    ed.boundary = (ed.elems[1] < 0);
    if (!ed.boundary && ed.elems[0] > ed.elems[1]) std::swap(ed.elems[0], ed.elems[1]);

    // n_e = outward normal of the lowest-id adjacent element on this edge; that
    // realizes both conventions (outward on the boundary, low id -> high id inside).
    const Element& ref = mesh.elements[ed.elems[0]];
    const std::size_t m = ref.vertices.size();
    Vec2 n = Vec2::Zero();
    for (std::size_t q = 0; q < m; ++q) {
      if (ref.edges[q] == ed.id) {
        const Vec2 a = mesh.vertex_pos(ref.vertices[q]);
        const Vec2 b = mesh.vertex_pos(ref.vertices[(q + 1) % m]);
        n = rotate_cw(b - a).normalized();
        break;
      }
    }
    ed.normal = n;
  }

  for (Element& el : mesh.elements) {
    const std::size_t m = el.vertices.size();
    for (std::size_t q = 0; q < m; ++q) {
      const Vec2 a = mesh.vertex_pos(el.vertices[q]);
      const Vec2 b = mesh.vertex_pos(el.vertices[(q + 1) % m]);
      const Vec2 out = rotate_cw(b - a).normalized();
      const double d = out.dot(mesh.edges[el.edges[q]].normal);
      if (std::abs(std::abs(d) - 1.0) > 1e-12)
        throw TopologyError("element " + std::to_string(el.id) + ", edge " +
                            std::to_string(el.edges[q]) +
                            ": edge normal not parallel to element side");
      el.edge_sign[q] = (d > 0.0) ? 1.0 : -1.0;
    }
  }

  mesh.h = 0.0;
  for (const Element& el : mesh.elements) mesh.h = std::max(mesh.h, el.diameter);

  // global consistency: sum of element areas must equal the area enclosed by the
  // boundary loop (interior edge contributions cancel in the shoelace sum).
  double boundary_area = 0.0;
  for (const Element& el : mesh.elements) {
    const std::size_t m = el.vertices.size();
    for (std::size_t q = 0; q < m; ++q) {
      if (!mesh.edges[el.edges[q]].boundary) continue;
      const Vec2 a = mesh.vertex_pos(el.vertices[q]);
      const Vec2 b = mesh.vertex_pos(el.vertices[(q + 1) % m]);
      boundary_area += 0.5 * cross2(a, b);
    }
  }
  const double total = mesh.total_area();
  if (std::abs(total - boundary_area) > 1e-10 * std::max(1.0, total))
    throw TopologyError("element areas do not tile the region enclosed by the boundary");

  return mesh;
}

Mesh build_uniform_triangular(int n) {
  if (n < 1) throw Error("build_uniform_triangular: n must be >= 1");
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      pts.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::vector<int>> loops;
  loops.reserve(static_cast<std::size_t>(2) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // negative-slope diagonal from (i, j+1) to (i+1, j)
      loops.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1)});
      loops.push_back({vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  return build_mesh(std::move(pts), std::move(loops));
}

Vec2 outward_normal(const Mesh& mesh, int element, int edge) {
  const Element& el = mesh.elements.at(element);
  for (std::size_t q = 0; q < el.edges.size(); ++q)
    if (el.edges[q] == edge) return el.edge_sign[q] * mesh.edges[edge].normal;
  throw Error("outward_normal: edge " + std::to_string(edge) + " not in element " +
              std::to_string(element));
}

}  // namespace wg
