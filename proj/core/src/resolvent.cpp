#include "nlpm/resolvent.hpp"

#include <cmath>
#include <stdexcept>

namespace nlpm {

namespace {

double sup_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// One sweep of the contraction map T[v] = (S v + g)/(eps + W), where S is the
// off-diagonal part of the stencil (the absorbed tail has no neighbors, so it
// only contributes to W).
GridFunction sweep(const GridFunction& v, const GridFunction& g,
                   const StencilWeights& w, double eps) {
  const double denom = eps + w.effective_weight();
  GridFunction out(v.h(), v.box(), v.boundary());
  for (std::int64_t i = 0; i < v.size(); ++i) {
    CompensatedSum acc;
    for (const auto& e : w.entries())
      acc.add(e.weight * v.shifted_value(i, e.offset));
    acc.add(g[i]);
    out[i] = acc.value() / denom;
  }
  return out;
}

}  // namespace

int iteration_bound(double eps, double total_weight, double tol, double g_norm) {
  if (!(eps > 0.0)) throw std::domain_error("iteration_bound: eps must be > 0");
  if (!(tol > 0.0)) throw std::domain_error("iteration_bound: tol must be > 0");
  if (total_weight < 0.0)
    throw std::domain_error("iteration_bound: negative weight");
  if (total_weight == 0.0 || g_norm == 0.0) return 1;
  const double q = total_weight / (eps + total_weight);
  const double target = tol * (1.0 - q) / g_norm;
  if (target >= 1.0) return 1;
  return std::max(1, static_cast<int>(std::ceil(std::log(target) / std::log(q))));
}

ResolventResult solve_resolvent(const GridFunction& g, const StencilWeights& weights,
                                double eps, double tol) {
  if (!(eps > 0.0)) throw std::domain_error("solve_resolvent: eps must be > 0");
  if (!(tol > 0.0)) throw std::domain_error("solve_resolvent: tol must be > 0");
  if (weights.dim() != g.dim() || weights.h() != g.h())
    throw std::invalid_argument("solve_resolvent: stencil/grid mismatch");

  const double w = weights.effective_weight();
  const double q = w / (eps + w);
  const int cap = iteration_bound(eps, w, tol, g.linf_norm());

  ResolventResult result{GridFunction(g.h(), g.box(), g.boundary())};
  if (w == 0.0) {
    for (std::int64_t i = 0; i < g.size(); ++i) result.v[i] = g[i] / eps;
    result.iterations = 1;
  } else {
    const double stop = tol * (1.0 - q) / q;
    GridFunction v = result.v;  // v0 = 0
    for (int k = 1; k <= cap; ++k) {
      GridFunction next = sweep(v, g, weights, eps);
      const double delta = sup_diff(next, v);
      v = std::move(next);
      result.iterations = k;
      if (delta <= stop) break;
      if (k == cap) result.hit_iteration_cap = true;
    }
    result.v = std::move(v);
  }

  // Measured residual eps v - L_h v - g.
  GridFunction lv = apply(weights, result.v);
  double res = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    res = std::max(res, std::abs(eps * result.v[i] - lv[i] - g[i]));
  result.residual_linf = res;
  return result;
}

double verify_selfadjoint(const StencilWeights& weights, double eps,
                          const GridFunction& f, const GridFunction& g) {
  if (f.boundary() != Boundary::kPeriodic || g.boundary() != Boundary::kPeriodic)
    throw std::invalid_argument("verify_selfadjoint: periodic boundary required");
  if (!f.compatible_with(g))
    throw std::invalid_argument("verify_selfadjoint: grids differ");
  constexpr double kTol = 1e-13;
  const GridFunction vg = solve_resolvent(g, weights, eps, kTol).v;
  const GridFunction vf = solve_resolvent(f, weights, eps, kTol).v;
  CompensatedSum left, right;
  for (std::int64_t i = 0; i < f.size(); ++i) {
    left.add(f[i] * vg[i]);
    right.add(g[i] * vf[i]);
  }
  const double hn = std::pow(f.h(), f.dim());
  return std::abs(left.value() * hn - right.value() * hn);
}

}  // namespace nlpm
