// Immutable 2D polytopal mesh: construction, derived geometry (areas, diameters,
// fixed edge normals, orientation signs), file I/O, and shape-regularity auditing.
//
// Conventions:
//  - Edge endpoints are stored with the lower vertex id first; the edge's arclength
//    parametrization for edge polynomial bases runs from v[0] to v[1].
//  - The fixed unit normal n_e points from the lower-id adjacent element toward the
//    higher-id one on interior edges, and outward on boundary edges.
//  - Element loops are counter-clockwise; edge_sign[j] * n_e is the outward normal
//    of the element on its j-th edge.

#ifndef WG_MESH_HPP
#define WG_MESH_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wg/errors.hpp"
#include "wg/geometry.hpp"

namespace wg {

struct Vertex {
  int id = -1;
  double x = 0.0;
  double y = 0.0;
  Vec2 pos() const { return Vec2(x, y); }
};

struct Edge {
  int id = -1;
  std::array<int, 2> v{-1, -1};       ///< endpoint vertex ids, v[0] < v[1]
  Vec2 normal = Vec2::Zero();         ///< fixed unit normal n_e
  double length = 0.0;                ///< h_e
  std::array<int, 2> elems{-1, -1};   ///< adjacent element ids; elems[1] < 0 on boundary
  bool boundary = false;
};

struct Element {
  int id = -1;
  std::vector<int> vertices;      ///< CCW vertex loop
  std::vector<int> edges;         ///< edges[j] joins vertices[j] and vertices[j+1 mod m]
  std::vector<double> edge_sign;  ///< +-1 so that edge_sign[j]*n_e is outward
  double area = 0.0;
  double diameter = 0.0;          ///< h_T, max pairwise vertex distance
  Vec2 centroid = Vec2::Zero();
};

class Mesh {
 public:
  static constexpr int dimension = 2;

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Element> elements;
  double h = 0.0;  ///< max_T h_T

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_elements() const { return static_cast<int>(elements.size()); }

  Vec2 vertex_pos(int v) const { return vertices[v].pos(); }

  /// Corner coordinates of an element, in loop order.
  std::vector<Vec2> element_corners(int t) const;

  /// Endpoints of an edge in parametrization order (v[0] -> v[1]).
  std::pair<Vec2, Vec2> edge_endpoints(int e) const;

  /// Unit tangent along the edge parametrization direction.
  Vec2 edge_tangent(int e) const;

  double total_area() const;
};

/// Builds a mesh from raw vertices and CCW element loops; derives edges, normals
/// and signs, and validates all connectivity/geometry invariants.
/// Throws TopologyError / DegenerateGeometryError on invalid input.
Mesh build_mesh(std::vector<Vec2> points, std::vector<std::vector<int>> loops);

/// Uniform triangulation of (0,1)^2: n x n squares, each split by the
/// negative-slope diagonal. The conventional study parameter is 1/n (the square
/// side), while element diameters are sqrt(2)/n.
Mesh build_uniform_triangular(int n);

/// Clipped Voronoi partition of (0,1)^2 for explicit seed points, with optional
/// centroidal (Lloyd) relaxation sweeps. Cells are convex.
Mesh build_voronoi(std::vector<Vec2> seeds, int lloyd_iters);

/// Same, with seeds drawn uniformly from a deterministic generator.
Mesh build_polygonal(int seed_count, int lloyd_iters, std::uint64_t rng_seed);

Mesh load_mesh(const std::string& path);
void save_mesh(const Mesh& mesh, const std::string& path);
Mesh parse_mesh(std::istream& in);
void write_mesh(const Mesh& mesh, std::ostream& out);

/// Outward unit normal of an element on one of its edges (edge_sign * n_e).
/// Throws Error if the edge does not belong to the element.
Vec2 outward_normal(const Mesh& mesh, int element, int edge);

/// Empirical shape-regularity constants (assumptions A1-A3).
struct RegularityReport {
  double rho_v = 0.0;       ///< min_T |T| / h_T^2
  double rho_e = 0.0;       ///< min_e |e| / h_e^{d-1}  (identically 1 in 2D)
  double kappa = 0.0;       ///< min over (T,e) of h_e / h_T
  double sigma_star = 0.0;  ///< min over (T,e) of the best inscribed-triangle height ratio
  std::vector<bool> pyramid_ok;  ///< per element: every edge admits height >= sigma_star_target * h_T
  double min_area = 0.0;
  bool all_pyramids_ok() const;
};

/// Audits A1-A3. The pyramid check is sampled: apex candidates are taken on a
/// 5x5 interior grid per element and the best base-e triangle height is kept.
RegularityReport check_shape_regularity(const Mesh& mesh, double sigma_star_target);

}  // namespace wg

#endif
