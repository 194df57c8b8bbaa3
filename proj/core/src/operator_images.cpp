#include "nlpm/operator_images.hpp"

#include <cmath>
#include <stdexcept>

#include "nlpm/levy_measure.hpp"
#include "nlpm/quadrature.hpp"

namespace nlpm {

namespace {

double sq_norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

TestProfile gaussian_profile(int dim, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_profile: width > 0");
  const double w2 = width * width;
  TestProfile p;
  p.value = [w2](const std::vector<double>& x) {
    return std::exp(-0.5 * sq_norm(x) / w2);
  };
  p.laplacian = [dim, w2](const std::vector<double>& x) {
    const double r2 = sq_norm(x);
    return (r2 / (w2 * w2) - dim / w2) * std::exp(-0.5 * r2 / w2);
  };
  p.reach = 14.0 * width;
  return p;
}

TestProfile bump_profile(int dim, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump_profile: radius > 0");
  const double r2inv = 1.0 / (radius * radius);
  TestProfile p;
  p.value = [r2inv](const std::vector<double>& x) {
    const double t = sq_norm(x) * r2inv;
    return t < 1.0 ? std::exp(-1.0 / (1.0 - t)) : 0.0;
  };
  p.laplacian = [dim, r2inv](const std::vector<double>& x) {
    const double t = sq_norm(x) * r2inv;
    if (t >= 1.0) return 0.0;
    const double f = std::exp(-1.0 / (1.0 - t));
    const double g = 1.0 - t;
    const double ft = -f / (g * g);
    const double ftt = f * (1.0 / (g * g * g * g) - 2.0 / (g * g * g));
    return ftt * 4.0 * t * r2inv + ft * 2.0 * dim * r2inv;
  };
  p.reach = radius;
  return p;
}

double fractional_image_1d(const TestProfile& psi, double order, double x,
                           double rel_tol) {
  if (!(order > 0.0 && order < 2.0))
    throw std::domain_error("fractional_image_1d: order must lie in (0,2)");
  const double c = fractional_constant(1, order);
  const double center = psi.value({x});
  auto second_diff = [&](double z) {
    return (psi.value({x + z}) + psi.value({x - z}) - 2.0 * center) *
           std::pow(z, -1.0 - order);
  };
  // Inside [0, delta] the raw second difference cancels catastrophically
  // against the z^{-1-s} weight (worst as s -> 2), so that range uses the
  // Taylor form psi'' z^2 + psi'''' z^4/12 instead. psi'''' comes from a
  // central difference of the analytic psi''.
  const double delta = 1e-3;
  const double d4step = 1e-3;
  const double psi2 = psi.laplacian({x});
  const double psi4 = (psi.laplacian({x + d4step}) + psi.laplacian({x - d4step}) -
                       2.0 * psi2) /
                      (d4step * d4step);
  const double near = psi2 * std::pow(delta, 2.0 - order) / (2.0 - order) +
                      psi4 * std::pow(delta, 4.0 - order) / (12.0 * (4.0 - order));
  const double far = std::abs(x) + psi.reach + 1.0;
  QuadResult mid = integrate(second_diff, delta, far, rel_tol, 0.0, 6000);
  if (!mid.converged)
    throw std::runtime_error("fractional_image_1d: quadrature failed");
  // Beyond `far` the shifted values vanish, leaving the power tail of the
  // -2 psi(x) term.
  const double tail = -2.0 * center * std::pow(far, -order) / order;
  return c * (near + mid.value + tail);
}

}  // namespace nlpm
