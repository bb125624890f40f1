#include "wg/dofmap.hpp"

#include "wg/errors.hpp"

namespace wg {

std::string to_string(GradTrace flavor) {
  return flavor == GradTrace::full_vector ? "algorithm1" : "algorithm2";
}

std::vector<int> DofMap::local_to_global(const Mesh& mesh, int element) const {
  const Element& el = mesh.elements[element];
  const int ne = static_cast<int>(el.edges.size());
  std::vector<int> idx;
  idx.reserve(nk + ne * (nb + ng));
  for (int i = 0; i < nk; ++i) idx.push_back(v0_offset(element) + i);
  for (int e : el.edges)
    for (int i = 0; i < nb; ++i) idx.push_back(vb_offset(e) + i);
  for (int e : el.edges)
    for (int i = 0; i < ng; ++i) idx.push_back(vg_offset(e) + i);
  return idx;
}

LocalWeakFunction DofMap::gather(const Mesh& mesh, int element,
                                 const Eigen::VectorXd& global) const {
  if (global.size() != total) throw DimensionError("gather: global vector size mismatch");
  LocalWeakFunction lf;
  lf.blocks = local_blocks(mesh, element);
  const auto idx = local_to_global(mesh, element);
  lf.dofs.resize(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) lf.dofs[static_cast<Eigen::Index>(i)] = global[idx[i]];
  return lf;
}

DofMap build_dof_map(const Mesh& mesh, int k, GradTrace flavor) {
  if (k < 2) throw Error("build_dof_map: k must be >= 2");
  DofMap dm;
  dm.k = k;
  dm.flavor = flavor;
  dm.nk = poly_dim_2d(k);
  dm.nb = k + 1;
  dm.ng = flavor == GradTrace::full_vector ? 2 * k : k;
  dm.n_elements = mesh.n_elements();
  dm.n_edges = mesh.n_edges();
  dm.vb_start = dm.n_elements * dm.nk;
  dm.vg_start = dm.vb_start + dm.n_edges * dm.nb;
  dm.total = dm.vg_start + dm.n_edges * dm.ng;

  dm.fixed.assign(dm.total, false);
  for (const Edge& ed : mesh.edges) {
    if (!ed.boundary) continue;
    for (int i = 0; i < dm.nb; ++i) dm.fixed[dm.vb_offset(ed.id) + i] = true;
    // full_vector: only the leading (normal-component) half of the vg block is
    // constrained on the boundary; the tangential half stays free.
    const int n_fixed_g = k;
    for (int i = 0; i < n_fixed_g; ++i) dm.fixed[dm.vg_offset(ed.id) + i] = true;
  }

  dm.free_of_global.assign(dm.total, -1);
  for (int i = 0; i < dm.total; ++i) {
    if (!dm.fixed[i]) {
      dm.free_of_global[i] = static_cast<int>(dm.global_of_free.size());
      dm.global_of_free.push_back(i);
    }
  }
  return dm;
}

}  // namespace wg
