// Discrete error norms, error reports against the projected exact solution,
// and manufactured-solution convergence studies.
//
// The discrete H^2 norm matches the assembled bilinear form:
//   |||v|||^2 = sum_T ( int_T |Lap_w v|^2
//                     + sum_{e in dT} |e|^{-1} int_e |grad v0 . n_e - v_g|^2
//                     + sum_{e in dT} |e|^{-3} int_e (v0 - vb)^2 )
// (full-vector flavor: both frame components of grad v0 - v_g are penalized),
// evaluated here by pointwise quadrature, independently of the sparse matrix.

#ifndef WG_NORMS_HPP
#define WG_NORMS_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "wg/assembly.hpp"
#include "wg/problems.hpp"

namespace wg {

struct ErrorReport {
  double h = 0.0;       ///< study parameter of the mesh level
  double err_h2 = 0.0;  ///< |||u_h - Q_h u|||
  double err_l2 = 0.0;  ///< ||u0 - Q_0 u||
};

double triple_bar_norm(const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& v,
                       int elem_exactness = -1, int edge_exactness = -1);

/// Element L2 norm of the v0 block.
double l2_norm_element(const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& v,
                       int elem_exactness = -1);

ErrorReport error_vs_projection(const Mesh& mesh, const DofMap& dm, const Eigen::VectorXd& u_h,
                                const Problem& problem, double reported_h,
                                int elem_exactness = -1, int edge_exactness = -1);

struct ConvergenceTable {
  struct Row {
    double h = 0.0;
    double err_h2 = 0.0;
    std::optional<double> order_h2;
    double err_l2 = 0.0;
    std::optional<double> order_l2;
  };
  std::vector<Row> rows;

  void append(const ErrorReport& report);
  void print(std::ostream& out) const;       ///< aligned text, one row per level
  void write_csv(std::ostream& out) const;   ///< h,err_h2,order_h2,err_l2,order_l2
};

/// One mesh level of a convergence study.
struct MeshLevel {
  Mesh mesh;
  double reported_h = 0.0;  ///< 1/n for uniform meshes, max diameter otherwise
};

struct StudyOptions {
  SolverKind solver = SolverKind::direct;
  double tol = 1e-10;
  int elem_exactness = -1;
  int edge_exactness = -1;
};

ConvergenceTable convergence_study(const Problem& problem, int k, GradTrace flavor,
                                   const std::vector<MeshLevel>& levels,
                                   const StudyOptions& options = {});

}  // namespace wg

#endif
