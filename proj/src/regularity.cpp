#include <algorithm>
#include <cmath>
#include <limits>

#include "wg/mesh.hpp"

namespace wg {

bool RegularityReport::all_pyramids_ok() const {
  return std::all_of(pyramid_ok.begin(), pyramid_ok.end(), [](bool b) { return b; });
}

RegularityReport check_shape_regularity(const Mesh& mesh, double sigma_star_target) {
  RegularityReport rep;
  rep.rho_v = std::numeric_limits<double>::infinity();
  rep.rho_e = std::numeric_limits<double>::infinity();
  rep.kappa = std::numeric_limits<double>::infinity();
  rep.sigma_star = std::numeric_limits<double>::infinity();
  rep.min_area = std::numeric_limits<double>::infinity();
  rep.pyramid_ok.assign(mesh.n_elements(), true);

  if (!mesh.edges.empty()) rep.rho_e = 1.0;  // |e|/h_e^{d-1} is identically 1 in 2D

  for (const Element& el : mesh.elements) {
    rep.min_area = std::min(rep.min_area, el.area);
    rep.rho_v = std::min(rep.rho_v, el.area / (el.diameter * el.diameter));

    const auto corners = mesh.element_corners(el.id);
    double xmin = corners[0].x(), xmax = xmin, ymin = corners[0].y(), ymax = ymin;
    for (const Vec2& p : corners) {
      xmin = std::min(xmin, p.x());
      xmax = std::max(xmax, p.x());
      ymin = std::min(ymin, p.y());
      ymax = std::max(ymax, p.y());
    }
    // apex candidates: 5x5 grid over the bounding box, interior points only
    std::vector<Vec2> apexes;
    for (int i = 1; i <= 5; ++i) {
      for (int j = 1; j <= 5; ++j) {
        const Vec2 a(xmin + (xmax - xmin) * i / 6.0, ymin + (ymax - ymin) * j / 6.0);
        if (point_in_polygon(a, corners)) apexes.push_back(a);
      }
    }
    apexes.push_back(el.centroid);

    const std::size_t m = el.vertices.size();
    for (std::size_t q = 0; q < m; ++q) {
      const Edge& ed = mesh.edges[el.edges[q]];
      rep.kappa = std::min(rep.kappa, ed.length / el.diameter);

      const Vec2 a = mesh.vertex_pos(el.vertices[q]);
      const Vec2 b = mesh.vertex_pos(el.vertices[(q + 1) % m]);
      double best = 0.0;
      for (const Vec2& apex : apexes) {
        const double height = orient2(a, b, apex) / (b - a).norm();  // signed, CCW side is in
        if (height <= 0.0) continue;
        // triangle (a, b, apex) must sit inside the element; sampled containment
        const Vec2 c1 = (a + b + apex) / 3.0;
        const Vec2 c2 = 0.5 * (a + apex);
        const Vec2 c3 = 0.5 * (b + apex);
        if (!point_in_polygon(c1, corners) || !point_in_polygon(c2, corners) ||
            !point_in_polygon(c3, corners))
          continue;
        best = std::max(best, height / el.diameter);
      }
      rep.sigma_star = std::min(rep.sigma_star, best);
      if (best < sigma_star_target) rep.pyramid_ok[el.id] = false;
    }
  }
  return rep;
}

}  // namespace wg
