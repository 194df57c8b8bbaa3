#pragma once

#include <functional>
#include <vector>

namespace nlpm {

using Integrand = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
  bool converged = false;
};

// Adaptive Gauss-Kronrod (7,15) on the finite interval [a, b]. Stops when the
// accumulated error estimate drops below rel_tol*|value| + abs_tol.
QuadResult integrate(const Integrand& f, double a, double b, double rel_tol,
                     double abs_tol = 0.0, int max_subdivisions = 2000);

// Integral of f over (0, b], where f may be singular at 0. Dyadic panels
// [b/2^{k+1}, b/2^k] are summed until their contributions are negligible;
// if they fail to decay the integral is declared divergent.
QuadResult integrate_to_zero(const Integrand& f, double b, double rel_tol);

// Integral of f over [a, inf), a > 0. Dyadic panels [a*2^k, a*2^{k+1}].
QuadResult integrate_to_infinity(const Integrand& f, double a, double rel_tol);

// Integral of f over an axis-aligned box in R^N (tensorized adaptive rule,
// innermost axis first). lo/hi must have equal size >= 1.
QuadResult integrate_box(const std::function<double(const std::vector<double>&)>& f,
                         const std::vector<double>& lo, const std::vector<double>& hi,
                         double rel_tol);

}  // namespace nlpm
