#pragma once

namespace nlpm {

// Exact self-similar source solution of the 1-D porous medium equation
// u_t = (u^m)_xx, m > 1, normalized to unit mass:
//   U(x,t) = t^{-b} (C - k x^2 t^{-2b})_+^{1/(m-1)},
//   b = 1/(m+1), k = (m-1) b / (2m).
// Throws std::domain_error for m <= 1 or t <= 0. Used purely as an accuracy
// oracle for the local limit of the scheme.
double barenblatt(double m, double t, double x);

// The constant C fixing unit mass.
double barenblatt_constant(double m);

// Support endpoint: U(.,t) vanishes for |x| >= radius.
double barenblatt_support_radius(double m, double t);

}  // namespace nlpm
