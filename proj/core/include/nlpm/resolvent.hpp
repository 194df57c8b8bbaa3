#pragma once

#include "nlpm/grid_function.hpp"
#include "nlpm/stencil.hpp"

namespace nlpm {

struct ResolventResult {
  GridFunction v;
  int iterations = 0;
  double residual_linf = 0.0;  // ||eps v - L_h v - g||_inf, measured
  bool hit_iteration_cap = false;
};

// Solves eps v - L_h v = g by the contraction iteration
//   v <- (sum_a w_a v(. + a h) + g) / (eps + W),   W = effective weight,
// from v = 0, stopping once ||v_{k+1} - v_k||_inf <= tol (1-q)/q with
// q = W/(eps+W). The returned residual satisfies
// ||eps v - L_h v - g||_inf <= eps tol (1 + 2q/(1-q)).
ResolventResult solve_resolvent(const GridFunction& g, const StencilWeights& weights,
                                double eps, double tol);

// Iteration count within which solve_resolvent terminates:
// ceil(log(tol (1-q)/g_norm) / log q).
int iteration_bound(double eps, double total_weight, double tol, double g_norm);

// |h^N sum f solve(g) - h^N sum g solve(f)| on a periodic grid, with the
// solves run at tol = 1e-13.
double verify_selfadjoint(const StencilWeights& weights, double eps,
                          const GridFunction& f, const GridFunction& g);

}  // namespace nlpm
