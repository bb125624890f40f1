// Clipped Voronoi tessellation of the unit square with Lloyd relaxation.
// Cells are built independently by half-plane clipping against bisectors and
// then welded into a conforming mesh.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "wg/mesh.hpp"

namespace wg {

namespace {

constexpr double kWeldTol = 1e-9;

// Keep the side of the bisector closer to `seed` than to `other`.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& seed,
                                 const Vec2& other) {
  const Vec2 dir = other - seed;
  const Vec2 mid = 0.5 * (seed + other);
  std::vector<Vec2> out;
  out.reserve(poly.size() + 1);
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % m];
    const double gp = (p - mid).dot(dir);
    const double gq = (q - mid).dot(dir);
    if (gp <= 0.0) out.push_back(p);
    if ((gp < 0.0 && gq > 0.0) || (gp > 0.0 && gq < 0.0)) {
      const double t = gp / (gp - gq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

std::vector<std::vector<Vec2>> voronoi_cells(const std::vector<Vec2>& seeds) {
  const std::size_t n = seeds.size();
  const std::vector<Vec2> square = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  std::vector<std::vector<Vec2>> cells(n);

  // nearest-first processing lets us stop once 2*R < |p_j - p_i|
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return (seeds[a] - seeds[i]).squaredNorm() < (seeds[b] - seeds[i]).squaredNorm();
    });
    std::vector<Vec2> cell = square;
    for (int j : order) {
      if (j == static_cast<int>(i)) continue;
      double r2 = 0.0;
      for (const Vec2& p : cell) r2 = std::max(r2, (p - seeds[i]).squaredNorm());
      if ((seeds[j] - seeds[i]).squaredNorm() >= 4.0 * r2) break;
      cell = clip_halfplane(cell, seeds[i], seeds[j]);
      if (cell.size() < 3) break;
    }
    if (cell.size() < 3 || polygon_signed_area(cell) < 1e-12)
      throw DegenerateGeometryError("voronoi cell " + std::to_string(i) +
                                    " degenerated (area < 1e-12); reseed");
    cells[i] = std::move(cell);
  }
  return cells;
}

// Welds near-coincident corner points (within kWeldTol) into shared vertex ids.
struct VertexWelder {
  std::unordered_map<std::int64_t, std::vector<int>> grid;
  std::vector<Vec2> points;

  static std::int64_t key(std::int64_t ix, std::int64_t iy) { return (ix << 32) ^ (iy & 0xffffffff); }

  int insert(const Vec2& p) {
    const auto ix = static_cast<std::int64_t>(std::floor(p.x() / kWeldTol));
    const auto iy = static_cast<std::int64_t>(std::floor(p.y() / kWeldTol));
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid.find(key(ix + dx, iy + dy));
        if (it == grid.end()) continue;
        for (int id : it->second)
          if ((points[id] - p).norm() <= kWeldTol) return id;
      }
    }
    const int id = static_cast<int>(points.size());
    points.push_back(p);
    grid[key(ix, iy)].push_back(id);
    return id;
  }
};

// Short Voronoi edges (near-cocircular seed quadruples) break the A2 edge-to-
// diameter bound that the stabilizer weights rely on. Edges shorter than
// kShortEdgeRatio times the smaller adjacent cell diameter are collapsed to
// their midpoint. Boundary vertices only merge along one side of the square,
// and the square's corners never move, so the tiled region is preserved.
constexpr double kShortEdgeRatio = 0.05;

int boundary_side_mask(const Vec2& p) {
  int mask = 0;
  if (std::abs(p.x()) < 1e-12) mask |= 1;
  if (std::abs(p.x() - 1.0) < 1e-12) mask |= 2;
  if (std::abs(p.y()) < 1e-12) mask |= 4;
  if (std::abs(p.y() - 1.0) < 1e-12) mask |= 8;
  return mask;
}

void snap_to_sides(Vec2& p, int mask) {
  if (mask & 1) p.x() = 0.0;
  if (mask & 2) p.x() = 1.0;
  if (mask & 4) p.y() = 0.0;
  if (mask & 8) p.y() = 1.0;
}

bool collapse_short_edges(std::vector<Vec2>& points, std::vector<std::vector<int>>& loops) {
  struct EdgeUse {
    int a, b;
    double len;
    double min_diam;
  };
  std::vector<double> diam(loops.size(), 0.0);
  for (std::size_t i = 0; i < loops.size(); ++i)
    for (std::size_t p = 0; p < loops[i].size(); ++p)
      for (std::size_t q = p + 1; q < loops[i].size(); ++q)
        diam[i] = std::max(diam[i], (points[loops[i][p]] - points[loops[i][q]]).norm());

  std::map<std::pair<int, int>, EdgeUse> edges;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const std::size_t m = loops[i].size();
    for (std::size_t q = 0; q < m; ++q) {
      const int a = loops[i][q];
      const int b = loops[i][(q + 1) % m];
      const auto key = std::minmax(a, b);
      auto [it, fresh] = edges.try_emplace(key, EdgeUse{key.first, key.second,
                                                        (points[a] - points[b]).norm(), diam[i]});
      if (!fresh) it->second.min_diam = std::min(it->second.min_diam, diam[i]);
    }
  }

  std::vector<EdgeUse> shorties;
  for (const auto& [key, e] : edges)
    if (e.len < kShortEdgeRatio * e.min_diam) shorties.push_back(e);
  if (shorties.empty()) return false;
  std::sort(shorties.begin(), shorties.end(),
            [](const EdgeUse& x, const EdgeUse& y) { return x.len < y.len; });

  std::vector<int> remap(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) remap[i] = static_cast<int>(i);
  std::vector<bool> touched(points.size(), false);
  for (const EdgeUse& e : shorties) {
    if (touched[e.a] || touched[e.b]) continue;  // one merge per vertex per pass
    const int ma = boundary_side_mask(points[e.a]);
    const int mb = boundary_side_mask(points[e.b]);
    // corners are pinned; boundary vertices merge only along a shared side
    if (__builtin_popcount(ma) > 1 || __builtin_popcount(mb) > 1) continue;
    if (ma != mb && ma != 0 && mb != 0) continue;
    Vec2 mid = 0.5 * (points[e.a] + points[e.b]);
    snap_to_sides(mid, ma | mb);
    points[e.a] = mid;
    remap[e.b] = e.a;
    touched[e.a] = touched[e.b] = true;
  }

  for (auto& loop : loops) {
    std::vector<int> out;
    out.reserve(loop.size());
    for (int v : loop) {
      const int r = remap[v];
      if (out.empty() || (out.back() != r && out.front() != r)) out.push_back(r);
    }
    loop = std::move(out);
  }
  return true;
}

}  // namespace

Mesh build_voronoi(std::vector<Vec2> seeds, int lloyd_iters) {
  if (seeds.empty()) throw Error("build_voronoi: need at least one seed");
  for (const Vec2& s : seeds)
    if (!(s.x() > 0.0 && s.x() < 1.0 && s.y() > 0.0 && s.y() < 1.0))
      throw Error("build_voronoi: seeds must lie strictly inside (0,1)^2");

  std::vector<std::vector<Vec2>> cells;
  for (int it = 0;; ++it) {
    cells = voronoi_cells(seeds);
    if (it == lloyd_iters) break;
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = polygon_centroid(cells[i]);
  }

  VertexWelder weld;
  std::vector<std::vector<int>> loops(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (const Vec2& p : cells[i]) {
      const int id = weld.insert(p);
      // welding can collapse sliver corners; drop repeats along the loop
      if (loops[i].empty() || (loops[i].back() != id && loops[i].front() != id))
        loops[i].push_back(id);
    }
    if (loops[i].size() < 3)
      throw DegenerateGeometryError("voronoi cell " + std::to_string(i) +
                                    " collapsed during welding");
  }

  std::vector<Vec2> points = std::move(weld.points);
  for (int pass = 0; pass < 10 && collapse_short_edges(points, loops); ++pass) {
  }
  for (const auto& loop : loops)
    if (loop.size() < 3)
      throw DegenerateGeometryError("voronoi cell collapsed during edge cleanup");
  return build_mesh(std::move(points), std::move(loops));
}

Mesh build_polygonal(int seed_count, int lloyd_iters, std::uint64_t rng_seed) {
  if (seed_count < 1) throw Error("build_polygonal: seed_count must be >= 1");
  std::mt19937_64 eng(rng_seed);
  auto uniform01 = [&eng]() {
    // top 53 bits -> [0,1); engine-only mapping keeps runs platform-reproducible
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
  };
  std::vector<Vec2> seeds;
  seeds.reserve(seed_count);
  while (static_cast<int>(seeds.size()) < seed_count) {
    const double x = uniform01();
    const double y = uniform01();
    if (x > 1e-3 && x < 1.0 - 1e-3 && y > 1e-3 && y < 1.0 - 1e-3) seeds.emplace_back(x, y);
  }
  return build_voronoi(std::move(seeds), lloyd_iters);
}

}  // namespace wg
