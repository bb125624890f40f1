// Global DOF numbering for the weak finite element spaces.
//
// A weak function carries, per element, interior coefficients v0 (degree k), and
// per edge boundary-value coefficients vb (degree k) plus gradient-trace
// coefficients vg (degree k-1). The gradient trace comes in two flavors:
// the full vector in [P_{k-1}(e)]^2, stored componentwise in the edge frame
// (n_e, t_e) with the normal block first, or the normal component alone.
//
// Global ordering: all element v0 blocks (by element id), then all edge vb
// blocks, then all edge vg blocks. Boundary conditions fix vb and the normal
// vg block on boundary edges; tangential vg stays free in the full-vector flavor.

#ifndef WG_DOFMAP_HPP
#define WG_DOFMAP_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "wg/basis.hpp"
#include "wg/mesh.hpp"

namespace wg {

enum class GradTrace {
  full_vector,  ///< v_g in [P_{k-1}(e)]^2  (scheme with the vector stabilizer)
  normal_only,  ///< v_g in P_{k-1}(e), representing grad v . n_e
};

std::string to_string(GradTrace flavor);

/// Block sizes for one element with ne edges; local layout is
/// [v0 | vb edge 0 .. edge ne-1 | vg edge 0 .. edge ne-1].
struct LocalBlocks {
  int k = 0;
  GradTrace flavor = GradTrace::normal_only;
  int n_edges = 0;
  int nk = 0;  ///< v0 block size, dim P_k
  int nb = 0;  ///< vb block size per edge, k+1
  int ng = 0;  ///< vg block size per edge, 2k (full_vector) or k (normal_only)

  LocalBlocks() = default;
  LocalBlocks(int k_, GradTrace flavor_, int n_edges_)
      : k(k_),
        flavor(flavor_),
        n_edges(n_edges_),
        nk(poly_dim_2d(k_)),
        nb(k_ + 1),
        ng(flavor_ == GradTrace::full_vector ? 2 * k_ : k_) {}

  int v0_offset() const { return 0; }
  int vb_offset(int j) const { return nk + j * nb; }
  int vg_offset(int j) const { return nk + n_edges * nb + j * ng; }
  int size() const { return nk + n_edges * (nb + ng); }
};

/// Element-local restriction of a weak function.
struct LocalWeakFunction {
  LocalBlocks blocks;
  Eigen::VectorXd dofs;  ///< flat, laid out per LocalBlocks

  Eigen::VectorBlock<Eigen::VectorXd> v0() { return dofs.segment(0, blocks.nk); }
  Eigen::VectorBlock<Eigen::VectorXd> vb(int j) { return dofs.segment(blocks.vb_offset(j), blocks.nb); }
  Eigen::VectorBlock<Eigen::VectorXd> vg(int j) { return dofs.segment(blocks.vg_offset(j), blocks.ng); }
};

struct DofMap {
  int k = 0;
  GradTrace flavor = GradTrace::normal_only;
  int nk = 0, nb = 0, ng = 0;
  int n_elements = 0, n_edges = 0;
  int vb_start = 0, vg_start = 0;
  int total = 0;

  std::vector<bool> fixed;          ///< boundary mask over global DOFs
  std::vector<int> free_of_global;  ///< -1 where fixed
  std::vector<int> global_of_free;

  int n_free() const { return static_cast<int>(global_of_free.size()); }
  int v0_offset(int element) const { return element * nk; }
  int vb_offset(int edge) const { return vb_start + edge * nb; }
  int vg_offset(int edge) const { return vg_start + edge * ng; }

  LocalBlocks local_blocks(const Mesh& mesh, int element) const {
    return LocalBlocks(k, flavor, static_cast<int>(mesh.elements[element].edges.size()));
  }

  /// Global indices of an element's local DOFs, in local layout order.
  std::vector<int> local_to_global(const Mesh& mesh, int element) const;

  /// Element-local restriction of a global coefficient vector.
  LocalWeakFunction gather(const Mesh& mesh, int element, const Eigen::VectorXd& global) const;
};

DofMap build_dof_map(const Mesh& mesh, int k, GradTrace flavor);

}  // namespace wg

#endif
