#pragma once

#include "nlpm/stencil.hpp"

namespace nlpm {

// Smooth test functions with known operator images, for consistency
// measurements against the assembled stencils.
struct TestProfile {
  ScalarField value;      // psi
  ScalarField laplacian;  // Delta psi, analytic
  double reach;           // |y| beyond which psi is numerically zero
};

TestProfile gaussian_profile(int dim, double width);
// Compactly supported bump exp(-1/(1 - |x/radius|^2)) on |x| < radius.
TestProfile bump_profile(int dim, double radius);

// Pointwise -(-Delta)^{s/2} psi (x) in one dimension via the symmetrized
// principal-value quadrature
//   c_{1,s} int_0^inf (psi(x+z) + psi(x-z) - 2 psi(x)) z^{-1-s} dz,
// with the far tail integrated analytically against -2 psi(x).
double fractional_image_1d(const TestProfile& psi, double order, double x,
                           double rel_tol = 1e-9);

}  // namespace nlpm
