// Empirical best-constant estimators for the trace and inverse inequalities
// that underpin the convergence analysis on polytopal meshes.
//
// Sampling design: one stream of random coefficient vectors (uniform in [-1,1]
// in the scaled element basis, fixed seed) is drawn up front and reused for
// every element/edge pair. On meshes of similar elements the quotients are
// dilation-invariant, so estimates agree across refinement levels to roundoff.

#ifndef WG_INEQUALITIES_HPP
#define WG_INEQUALITIES_HPP

#include <cstdint>
#include <string>

#include "wg/mesh.hpp"

namespace wg {

struct InequalityEstimate {
  std::string id;          ///< "trace" | "inverse" | "lp-inverse" | "domain-inverse"
  double constant = 0.0;   ///< max sampled left/right quotient
  int samples = 0;
  std::uint64_t seed = 0;
};

/// Trace inequality: max over theta in P_k(T), edges e of T, of
///   ||theta||_{L^p(e)}^p / ( h_T^{-1} ( ||theta||_{L^p(T)}^p + h_T^p ||grad theta||_{L^p(T)}^p ) ).
InequalityEstimate estimate_trace_constant(const Mesh& mesh, int k, double p, int samples,
                                           std::uint64_t seed);

/// Inverse inequality: max over phi in P_k(T) of h_T ||grad phi||_T / ||phi||_T.
InequalityEstimate estimate_inverse_constant(const Mesh& mesh, int k, int samples,
                                             std::uint64_t seed);

/// Lp-Lr inverse inequality on piecewise polynomials:
///   max of ||phi||_{L^p(Omega)} / ( h^{d/p - d/r} ||phi||_{L^r(Omega)} ), p >= r >= 1.
/// Samples both globally supported and single-element-supported candidates (the
/// extremal family concentrates on one element).
InequalityEstimate estimate_lp_inverse(const Mesh& mesh, int k, double p, double r, int samples,
                                       std::uint64_t seed);

struct Disk {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
};

struct Triangle {
  Vec2 a, b, c;
  double diameter() const;
  /// True when the disk lies inside the (closed) triangle.
  bool contains(const Disk& s) const;
};

/// Domain inverse inequality on a simplex K with inner ball S:
///   max over v in P_k of ||v||_{L^2(K)} / ||v||_{L^2(S)}.
/// Throws Error if S is not contained in K.
InequalityEstimate estimate_domain_inverse(const Triangle& K, const Disk& S, int k, int samples,
                                           std::uint64_t seed);

}  // namespace wg

#endif
