// biharm: weak Galerkin solver for the biharmonic equation on polygonal meshes.
//
// Subcommands:
//   solve        one boundary-value solve, error report against the projected
//                exact solution, optional CSV / field / matrix outputs
//   convergence  refinement study, prints the (h, error, order) table
//   mesh-check   build or load a mesh and audit its shape-regularity constants
//   ineq-check   empirical trace/inverse inequality constants across meshes

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wg/assembly.hpp"
#include "wg/inequalities.hpp"
#include "wg/mesh.hpp"
#include "wg/norms.hpp"
#include "wg/problems.hpp"
#include "wg/quadrature.hpp"

namespace {

struct MeshSpec {
  int uniform_n = 0;          // > 0: uniform triangular mesh
  int voronoi_seeds = 0;      // > 0: Lloyd-relaxed Voronoi mesh
  int lloyd = 3;
  std::uint64_t seed = 42;
  std::string file;

  bool from_file() const { return !file.empty(); }

  wg::Mesh build() const {
    if (from_file()) return wg::load_mesh(file);
    if (voronoi_seeds > 0) return wg::build_polygonal(voronoi_seeds, lloyd, seed);
    return wg::build_uniform_triangular(uniform_n);
  }

  double reported_h(const wg::Mesh& mesh) const {
    return uniform_n > 0 && !from_file() && voronoi_seeds == 0 ? 1.0 / uniform_n : mesh.h;
  }
};

struct RunConfig {
  std::string case_id = "case1";
  std::string problem_file;
  MeshSpec mesh;
  std::vector<int> n_list;
  std::vector<int> voronoi_list;
  int k = 2;
  std::string flavor_str = "algorithm2";
  std::string solver_str = "direct";
  double tol = 1e-10;
  int elem_exactness = -1;
  int edge_exactness = -1;
  bool orthonormalize = false;
  bool quiet = false;
  std::string csv_path, field_path, matrix_path, save_mesh_path;
  double sigma_star = 0.01;
  double floor = 0.0;
  int samples = 200;
  double p = 2.0, r = 1.0;
  bool do_trace = false, do_inverse = false, do_lp = false, do_domain = false;

  wg::GradTrace flavor() const {
    return flavor_str == "algorithm1" ? wg::GradTrace::full_vector
                                      : wg::GradTrace::normal_only;
  }
  wg::SolverKind solver() const {
    return solver_str == "cg" ? wg::SolverKind::cg : wg::SolverKind::direct;
  }
  wg::Problem problem() const {
    return problem_file.empty() ? wg::make_problem(case_id)
                                : wg::load_polynomial_problem(problem_file);
  }

  void validate() const {
    const int cap = orthonormalize ? 8 : 4;
    if (k > cap)
      throw CLI::ValidationError("--k", "k = " + std::to_string(k) + " exceeds the cap of " +
                                            std::to_string(cap) +
                                            (orthonormalize ? "" : " (use --orthonormalize)"));
    if (orthonormalize) wg::basis_options().orthonormalize_above = 4;
  }
};

void add_mesh_flags(CLI::App* cmd, RunConfig& cfg, bool lists) {
  if (lists) {
    cmd->add_option("--n", cfg.n_list, "uniform mesh levels (e.g. 4,8,16)")->delimiter(',');
    cmd->add_option("--voronoi", cfg.voronoi_list, "Voronoi cell counts (e.g. 64,256)")
        ->delimiter(',');
  } else {
    cmd->add_option("--n", cfg.mesh.uniform_n, "uniform mesh parameter n")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--voronoi", cfg.mesh.voronoi_seeds, "number of Voronoi cells")
        ->check(CLI::PositiveNumber);
  }
  cmd->add_option("--mesh", cfg.mesh.file, "mesh file (polymesh format)");
  cmd->add_option("--lloyd", cfg.mesh.lloyd, "Lloyd relaxation sweeps")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", cfg.mesh.seed, "RNG seed for Voronoi seeding");
}

void add_scheme_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--k", cfg.k, "polynomial degree (>= 2)")->check(CLI::Range(2, 32));
  cmd->add_option("--flavor", cfg.flavor_str, "algorithm1 (vector trace) | algorithm2 (normal trace)")
      ->check(CLI::IsMember({"algorithm1", "algorithm2"}));
  cmd->add_option("--solver", cfg.solver_str, "direct | cg")
      ->check(CLI::IsMember({"direct", "cg"}));
  cmd->add_option("--tol", cfg.tol, "linear solver residual tolerance")
      ->check(CLI::Range(1e-300, 1.0 - 1e-12));
  cmd->add_option("--elem-exactness", cfg.elem_exactness, "element quadrature exactness override");
  cmd->add_option("--edge-exactness", cfg.edge_exactness, "edge quadrature exactness override");
  cmd->add_flag("--orthonormalize", cfg.orthonormalize,
                "orthonormalize element bases; lifts the degree cap to 8");
  cmd->add_option("--case", cfg.case_id, "built-in problem: case1 | case2 | poly2 | poly3")
      ->check(CLI::IsMember({"case1", "case2", "poly2", "poly3"}));
  cmd->add_option("--problem-file", cfg.problem_file,
                  "polynomial problem file (lines 'c a b' for c x^a y^b)");
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

// Samples v0 on a raster grid (about three points per typical edge length).
void export_field(const wg::Mesh& mesh, const wg::DofMap& dm, const Eigen::VectorXd& u_h,
                  const std::string& path) {
  std::vector<double> lens;
  lens.reserve(mesh.edges.size());
  for (const auto& e : mesh.edges) lens.push_back(e.length);
  std::nth_element(lens.begin(), lens.begin() + lens.size() / 2, lens.end());
  const double step = std::max(lens[lens.size() / 2] / 3.0, 1e-4);

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& v : mesh.vertices) {
    xmin = std::min(xmin, v.x); xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y); ymax = std::max(ymax, v.y);
  }
  const int nx = std::min(2000, static_cast<int>((xmax - xmin) / step) + 1);
  const int ny = std::min(2000, static_cast<int>((ymax - ymin) / step) + 1);

  // bucket elements by bounding box for point location
  const int bx = std::max(1, static_cast<int>(std::sqrt(mesh.n_elements())));
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(bx) * bx);
  auto bucket_of = [&](double x, double y) {
    int i = std::clamp(static_cast<int>((x - xmin) / (xmax - xmin) * bx), 0, bx - 1);
    int j = std::clamp(static_cast<int>((y - ymin) / (ymax - ymin) * bx), 0, bx - 1);
    return j * bx + i;
  };
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const auto corners = mesh.element_corners(t);
    double exmin = 1e300, exmax = -1e300, eymin = 1e300, eymax = -1e300;
    for (const auto& c : corners) {
      exmin = std::min(exmin, c.x()); exmax = std::max(exmax, c.x());
      eymin = std::min(eymin, c.y()); eymax = std::max(eymax, c.y());
    }
    const int b0 = bucket_of(exmin, eymin), b1 = bucket_of(exmax, eymax);
    for (int j = b0 / bx; j <= b1 / bx; ++j)
      for (int i = b0 % bx; i <= b1 % bx; ++i) buckets[static_cast<std::size_t>(j) * bx + i].push_back(t);
  }

  std::ofstream out(path);
  if (!out) throw wg::Error("cannot write field file: " + path);
  out << "x,y,u\n";
  char buf[96];
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const wg::Vec2 x(xmin + i * step, ymin + j * step);
      if (x.x() > xmax || x.y() > ymax) continue;
      for (int t : buckets[static_cast<std::size_t>(bucket_of(x.x(), x.y()))]) {
        if (!wg::point_in_polygon(x, mesh.element_corners(t))) continue;
        const wg::ElementBasis basis(mesh, t, dm.k);
        const double val = basis.eval(x).dot(u_h.segment(dm.v0_offset(t), dm.nk));
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g", x.x(), x.y(), val);
        out << buf << "\n";
        break;
      }
    }
  }
}

int cmd_solve(RunConfig& cfg) {
  cfg.validate();
  if (cfg.mesh.uniform_n == 0 && cfg.mesh.voronoi_seeds == 0 && !cfg.mesh.from_file())
    cfg.mesh.uniform_n = 4;
  const wg::Mesh mesh = cfg.mesh.build();
  const wg::Problem prob = cfg.problem();

  wg::AssemblyOptions aopt;
  aopt.elem_exactness = cfg.elem_exactness;
  aopt.edge_exactness = cfg.edge_exactness;
  wg::SparseSystem sys =
      wg::assemble(mesh, cfg.k, cfg.flavor(), prob.f, prob.dirichlet(), prob.neumann(), aopt);
  if (!cfg.matrix_path.empty()) wg::write_matrix_market(sys.A, cfg.matrix_path);

  wg::SolveInfo info;
  const Eigen::VectorXd u_h = wg::solve(sys, cfg.solver(), cfg.tol, &info);
  const wg::ErrorReport rep =
      wg::error_vs_projection(mesh, sys.dofmap, u_h, prob, cfg.mesh.reported_h(mesh),
                              cfg.elem_exactness, cfg.edge_exactness);

  if (!cfg.quiet) {
    std::cout << "problem " << prob.name << ", k=" << cfg.k << ", " << cfg.flavor_str << ", "
              << mesh.n_elements() << " elements, " << sys.dofmap.total << " DOFs ("
              << sys.dofmap.n_free() << " free)\n";
    std::cout << "h       = " << sci(rep.h) << "\n";
    std::cout << "err_h2  = " << sci(rep.err_h2) << "\n";
    std::cout << "err_l2  = " << sci(rep.err_l2) << "\n";
    std::cout << "residual= " << sci(info.relative_residual) << "\n";
  }
  if (!cfg.csv_path.empty()) {
    std::ofstream out(cfg.csv_path);
    if (!out) throw wg::Error("cannot write csv: " + cfg.csv_path);
    out << "h,err_h2,err_l2\n"
        << sci(rep.h) << "," << sci(rep.err_h2) << "," << sci(rep.err_l2) << "\n";
  }
  if (!cfg.field_path.empty()) export_field(mesh, sys.dofmap, u_h, cfg.field_path);
  return 0;
}

int cmd_convergence(RunConfig& cfg) {
  cfg.validate();
  if (cfg.n_list.empty() && cfg.voronoi_list.empty())
    throw CLI::ValidationError("convergence", "need --n or --voronoi levels");
  const wg::Problem prob = cfg.problem();

  std::vector<wg::MeshLevel> levels;
  for (int n : cfg.n_list) {
    wg::MeshLevel lvl{wg::build_uniform_triangular(n), 1.0 / n};
    levels.push_back(std::move(lvl));
  }
  for (int cells : cfg.voronoi_list) {
    wg::Mesh m = wg::build_polygonal(cells, cfg.mesh.lloyd, cfg.mesh.seed);
    const double h = m.h;
    levels.push_back(wg::MeshLevel{std::move(m), h});
  }

  wg::StudyOptions sopt;
  sopt.solver = cfg.solver();
  sopt.tol = cfg.tol;
  sopt.elem_exactness = cfg.elem_exactness;
  sopt.edge_exactness = cfg.edge_exactness;
  const wg::ConvergenceTable table = wg::convergence_study(prob, cfg.k, cfg.flavor(), levels, sopt);

  if (!cfg.quiet) {
    std::cout << "problem " << prob.name << ", k=" << cfg.k << ", " << cfg.flavor_str << "\n";
    table.print(std::cout);
  }
  if (!cfg.csv_path.empty()) {
    std::ofstream out(cfg.csv_path);
    if (!out) throw wg::Error("cannot write csv: " + cfg.csv_path);
    table.write_csv(out);
  }
  return 0;
}

int cmd_mesh_check(RunConfig& cfg) {
  if (cfg.mesh.uniform_n == 0 && cfg.mesh.voronoi_seeds == 0 && !cfg.mesh.from_file())
    throw CLI::ValidationError("mesh-check", "need --uniform, --voronoi, or --mesh");
  const wg::Mesh mesh = cfg.mesh.build();
  const wg::RegularityReport rep = wg::check_shape_regularity(mesh, cfg.sigma_star);
  if (!cfg.save_mesh_path.empty()) wg::save_mesh(mesh, cfg.save_mesh_path);

  const int bad =
      static_cast<int>(std::count(rep.pyramid_ok.begin(), rep.pyramid_ok.end(), false));
  if (!cfg.quiet) {
    std::cout << mesh.n_vertices() << " vertices, " << mesh.n_edges() << " edges, "
              << mesh.n_elements() << " elements, h = " << sci(mesh.h) << "\n";
    std::cout << "rho_v      = " << sci(rep.rho_v) << "   (min |T|/h_T^2)\n";
    std::cout << "rho_e      = " << sci(rep.rho_e) << "   (min |e|/h_e^{d-1})\n";
    std::cout << "kappa      = " << sci(rep.kappa) << "   (min h_e/h_T)\n";
    std::cout << "sigma_star = " << sci(rep.sigma_star) << "   (min inscribed-triangle height ratio)\n";
    std::cout << "min_area   = " << sci(rep.min_area) << "\n";
    std::cout << "pyramid_ok = " << (mesh.n_elements() - bad) << "/" << mesh.n_elements()
              << " elements at target " << sci(cfg.sigma_star) << "\n";
  }
  const double worst = std::min({rep.rho_v, rep.rho_e, rep.kappa, rep.sigma_star});
  if (worst < cfg.floor) {
    if (!cfg.quiet)
      std::cout << "FAIL: constant " << sci(worst) << " below floor " << sci(cfg.floor) << "\n";
    return 1;
  }
  return 0;
}

int cmd_ineq_check(RunConfig& cfg) {
  if (!cfg.do_trace && !cfg.do_inverse && !cfg.do_lp && !cfg.do_domain)
    cfg.do_trace = cfg.do_inverse = cfg.do_lp = cfg.do_domain = true;
  if (cfg.n_list.empty() && cfg.voronoi_list.empty() && (cfg.do_trace || cfg.do_inverse || cfg.do_lp))
    throw CLI::ValidationError("ineq-check", "need --uniform or --voronoi mesh levels");

  std::vector<std::pair<std::string, wg::Mesh>> meshes;
  for (int n : cfg.n_list)
    meshes.emplace_back("uniform " + std::to_string(n), wg::build_uniform_triangular(n));
  for (int cells : cfg.voronoi_list)
    meshes.emplace_back("voronoi " + std::to_string(cells),
                        wg::build_polygonal(cells, cfg.mesh.lloyd, cfg.mesh.seed));

  char line[160];
  for (const auto& [name, mesh] : meshes) {
    std::vector<wg::InequalityEstimate> ests;
    if (cfg.do_trace)
      ests.push_back(wg::estimate_trace_constant(mesh, cfg.k, cfg.p, cfg.samples, cfg.mesh.seed));
    if (cfg.do_inverse)
      ests.push_back(wg::estimate_inverse_constant(mesh, cfg.k, cfg.samples, cfg.mesh.seed));
    if (cfg.do_lp)
      ests.push_back(wg::estimate_lp_inverse(mesh, cfg.k, cfg.p, cfg.r, cfg.samples, cfg.mesh.seed));
    if (!cfg.quiet) {
      for (const auto& est : ests) {
        std::snprintf(line, sizeof line, "%-14s %-16s constant = %s  (samples=%d seed=%llu)",
                      name.c_str(), est.id.c_str(), sci(est.constant).c_str(), est.samples,
                      static_cast<unsigned long long>(est.seed));
        std::cout << line << "\n";
      }
    }
  }
  if (cfg.do_domain) {
    const wg::Triangle K{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    const wg::Disk S{{0.3, 0.3}, 0.2};
    const auto est = wg::estimate_domain_inverse(K, S, cfg.k, cfg.samples, cfg.mesh.seed);
    const wg::Triangle K2{{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}};
    const wg::Disk S2{{0.6, 0.6}, 0.4};
    const auto est2 = wg::estimate_domain_inverse(K2, S2, cfg.k, cfg.samples, cfg.mesh.seed);
    if (!cfg.quiet) {
      std::snprintf(line, sizeof line,
                    "simplex+ball   %-16s constant = %s  (dilated pair: %s)", est.id.c_str(),
                    sci(est.constant).c_str(), sci(est2.constant).c_str());
      std::cout << line << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak Galerkin biharmonic solver on polygonal meshes"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a key = value file");
  app.get_config_formatter_base()->valueSeparator('=');

  RunConfig cfg;

  CLI::App* solve = app.add_subcommand("solve", "solve one problem and report errors");
  add_scheme_flags(solve, cfg);
  add_mesh_flags(solve, cfg, false);
  solve->add_option("--csv", cfg.csv_path, "write the error report as CSV");
  solve->add_option("--field", cfg.field_path, "write a raster sample of v0 as CSV x,y,u");
  solve->add_option("--matrix", cfg.matrix_path, "dump the reduced matrix (MatrixMarket)");
  solve->add_flag("--quiet", cfg.quiet, "suppress tables, keep file outputs");

  CLI::App* conv = app.add_subcommand("convergence", "run a refinement study");
  add_scheme_flags(conv, cfg);
  add_mesh_flags(conv, cfg, true);
  conv->add_option("--csv", cfg.csv_path, "write the convergence table as CSV");
  conv->add_flag("--quiet", cfg.quiet, "suppress tables, keep file outputs");

  CLI::App* mc = app.add_subcommand("mesh-check", "audit mesh shape regularity");
  mc->add_option("--uniform", cfg.mesh.uniform_n, "uniform mesh parameter n")
      ->check(CLI::PositiveNumber);
  mc->add_option("--voronoi", cfg.mesh.voronoi_seeds, "number of Voronoi cells")
      ->check(CLI::PositiveNumber);
  mc->add_option("--mesh", cfg.mesh.file, "mesh file to load");
  mc->add_option("--lloyd", cfg.mesh.lloyd, "Lloyd sweeps")->check(CLI::NonNegativeNumber);
  mc->add_option("--seed", cfg.mesh.seed, "RNG seed");
  mc->add_option("--sigma-star", cfg.sigma_star, "pyramid height ratio target");
  mc->add_option("--floor", cfg.floor, "fail (exit 1) if any constant drops below this");
  mc->add_option("--save", cfg.save_mesh_path, "write the mesh to a file");
  mc->add_flag("--quiet", cfg.quiet, "suppress report");

  CLI::App* iq = app.add_subcommand("ineq-check", "estimate inequality constants");
  iq->add_option("--uniform", cfg.n_list, "uniform mesh levels (e.g. 2,4,8)")->delimiter(',');
  iq->add_option("--voronoi", cfg.voronoi_list, "Voronoi cell counts")->delimiter(',');
  iq->add_option("--k", cfg.k, "polynomial degree")->check(CLI::Range(1, 8));
  iq->add_option("--samples", cfg.samples, "random polynomials per estimator")
      ->check(CLI::PositiveNumber);
  iq->add_option("--seed", cfg.mesh.seed, "sampling seed");
  iq->add_option("--p", cfg.p, "Lp exponent");
  iq->add_option("--r", cfg.r, "Lr exponent (p >= r >= 1)");
  iq->add_option("--lloyd", cfg.mesh.lloyd, "Lloyd sweeps")->check(CLI::NonNegativeNumber);
  iq->add_flag("--trace", cfg.do_trace, "trace inequality");
  iq->add_flag("--inverse", cfg.do_inverse, "H1 inverse inequality");
  iq->add_flag("--lp", cfg.do_lp, "Lp-Lr inverse inequality");
  iq->add_flag("--domain", cfg.do_domain, "domain inverse inequality (simplex/ball)");
  iq->add_flag("--quiet", cfg.quiet, "suppress report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, usage errors exit 2
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg);
    if (conv->parsed()) return cmd_convergence(cfg);
    if (mc->parsed()) return cmd_mesh_check(cfg);
    if (iq->parsed()) return cmd_ineq_check(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
