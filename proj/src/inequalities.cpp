#include "wg/inequalities.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "wg/basis.hpp"
#include "wg/errors.hpp"
#include "wg/quadrature.hpp"

namespace wg {

namespace {

// Coefficient streams depend only on (seed, sample index): the same polynomials
// are tested on every element, which is what makes the estimates exactly
// scale-invariant on similar-element meshes.
std::vector<Eigen::VectorXd> draw_samples(int dim, int samples, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  auto uniform_pm1 = [&eng]() {
    return 2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0;
  };
  std::vector<Eigen::VectorXd> out(samples);
  for (int s = 0; s < samples; ++s) {
    out[s].resize(dim);
    for (int i = 0; i < dim; ++i) out[s][i] = uniform_pm1();
    if (out[s].lpNorm<Eigen::Infinity>() < 1e-8) out[s][0] = 1.0;  // guard the 0/0 case
  }
  return out;
}

double lp_integral(const QuadratureRule& rule, const ElementBasis& basis,
                   const Eigen::VectorXd& coeffs, double p) {
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q)
    acc += rule.weights[q] * std::pow(std::abs(basis.eval(rule.points[q]).dot(coeffs)), p);
  return acc;
}

double lp_gradient_integral(const QuadratureRule& rule, const ElementBasis& basis,
                            const Eigen::VectorXd& coeffs, double p) {
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto g = basis.eval_gradient(rule.points[q]);
    const Vec2 gv(coeffs.dot(g.col(0)), coeffs.dot(g.col(1)));
    acc += rule.weights[q] * std::pow(gv.norm(), p);
  }
  return acc;
}

}  // namespace

InequalityEstimate estimate_trace_constant(const Mesh& mesh, int k, double p, int samples,
                                           std::uint64_t seed) {
  if (samples < 1) throw Error("estimate_trace_constant: samples must be >= 1");
  const auto coeffs = draw_samples(poly_dim_2d(k), samples, seed);
  const int ex = 2 * k + 2;
  double best = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const Element& el = mesh.elements[t];
    const ElementBasis basis(mesh, t, k);
    const QuadratureRule elem_rule = element_quadrature(mesh, t, ex);
    const double hT = el.diameter;
    for (int e : el.edges) {
      const QuadratureRule edge_rule = edge_quadrature(mesh, e, ex);
      for (const Eigen::VectorXd& c : coeffs) {
        const double num = lp_integral(edge_rule, basis, c, p);
        const double den =
            (lp_integral(elem_rule, basis, c, p) +
             std::pow(hT, p) * lp_gradient_integral(elem_rule, basis, c, p)) / hT;
        best = std::max(best, num / den);
      }
    }
  }
  return {"trace", best, samples, seed};
}

InequalityEstimate estimate_inverse_constant(const Mesh& mesh, int k, int samples,
                                             std::uint64_t seed) {
  if (samples < 1) throw Error("estimate_inverse_constant: samples must be >= 1");
  const auto coeffs = draw_samples(poly_dim_2d(k), samples, seed);
  const int ex = 2 * k + 2;
  double best = 0.0;
  for (int t = 0; t < mesh.n_elements(); ++t) {
    const ElementBasis basis(mesh, t, k);
    const QuadratureRule rule = element_quadrature(mesh, t, ex);
    const double hT = mesh.elements[t].diameter;
    for (const Eigen::VectorXd& c : coeffs) {
      const double num = std::sqrt(lp_gradient_integral(rule, basis, c, 2.0));
      const double den = std::sqrt(lp_integral(rule, basis, c, 2.0));
      if (den > 0.0) best = std::max(best, hT * num / den);
    }
  }
  return {"inverse", best, samples, seed};
}

InequalityEstimate estimate_lp_inverse(const Mesh& mesh, int k, double p, double r, int samples,
                                       std::uint64_t seed) {
  if (!(p >= r && r >= 1.0)) throw Error("estimate_lp_inverse: need p >= r >= 1");
  const int dim = poly_dim_2d(k);
  const auto coeffs = draw_samples(dim, samples, seed);
  const int ex = 2 * k + 2;
  const double hfac = std::pow(mesh.h, 2.0 / p - 2.0 / r);

  std::vector<QuadratureRule> rules;
  std::vector<ElementBasis> bases;
  rules.reserve(mesh.n_elements());
  bases.reserve(mesh.n_elements());
  for (int t = 0; t < mesh.n_elements(); ++t) {
    rules.push_back(element_quadrature(mesh, t, ex));
    bases.emplace_back(mesh, t, k);
  }

  double best = 0.0;
  // concentrated candidates: supported on a single element
  for (int t = 0; t < mesh.n_elements(); ++t) {
    for (const Eigen::VectorXd& c : coeffs) {
      const double np = std::pow(lp_integral(rules[t], bases[t], c, p), 1.0 / p);
      const double nr = std::pow(lp_integral(rules[t], bases[t], c, r), 1.0 / r);
      if (nr > 0.0) best = std::max(best, np / (hfac * nr));
    }
  }
  // globally supported candidates: per-element coefficients drawn from the stream
  std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int s = 0; s < samples; ++s) {
    double accp = 0.0, accr = 0.0;
    for (int t = 0; t < mesh.n_elements(); ++t) {
      const Eigen::VectorXd& c = coeffs[eng() % coeffs.size()];
      accp += lp_integral(rules[t], bases[t], c, p);
      accr += lp_integral(rules[t], bases[t], c, r);
    }
    const double np = std::pow(accp, 1.0 / p);
    const double nr = std::pow(accr, 1.0 / r);
    if (nr > 0.0) best = std::max(best, np / (hfac * nr));
  }
  return {"lp-inverse", best, samples, seed};
}

double Triangle::diameter() const {
  return std::max({(a - b).norm(), (b - c).norm(), (c - a).norm()});
}

bool Triangle::contains(const Disk& s) const {
  const Vec2 pts[3] = {a, b, c};
  for (int i = 0; i < 3; ++i) {
    const Vec2& p = pts[i];
    const Vec2& q = pts[(i + 1) % 3];
    const double dist = orient2(p, q, s.center) / (q - p).norm();  // signed, CCW inside > 0
    if (dist < s.radius) return false;
  }
  return true;
}

InequalityEstimate estimate_domain_inverse(const Triangle& K, const Disk& S, int k, int samples,
                                           std::uint64_t seed) {
  if (!K.contains(S)) throw Error("estimate_domain_inverse: ball not contained in simplex");
  const auto coeffs = draw_samples(poly_dim_2d(k), samples, seed);
  const int ex = 2 * k + 2;
  const Vec2 center = (K.a + K.b + K.c) / 3.0;
  const ElementBasis basis(center, K.diameter(), k);
  const QuadratureRule rule_K = triangle_quadrature(K.a, K.b, K.c, ex);
  const QuadratureRule rule_S = disk_quadrature(S.center, S.radius, ex);
  double best = 0.0;
  for (const Eigen::VectorXd& c : coeffs) {
    const double nk = std::sqrt(lp_integral(rule_K, basis, c, 2.0));
    const double ns = std::sqrt(lp_integral(rule_S, basis, c, 2.0));
    if (ns > 0.0) best = std::max(best, nk / ns);
  }
  return {"domain-inverse", best, samples, seed};
}

}  // namespace wg
