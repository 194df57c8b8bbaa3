#include "nlpm/barenblatt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlpm {

namespace {

void check(double m, double t) {
  if (!(m > 1.0)) throw std::domain_error("barenblatt: m must be > 1");
  if (!(t > 0.0)) throw std::domain_error("barenblatt: t must be > 0");
}

}  // namespace

double barenblatt_constant(double m) {
  if (!(m > 1.0)) throw std::domain_error("barenblatt: m must be > 1");
  const double p = 1.0 / (m - 1.0);
  const double b = 1.0 / (m + 1.0);
  const double k = (m - 1.0) * b / (2.0 * m);
  // Unit mass: C^{p+1/2} sqrt(1/k) * sqrt(pi) Gamma(p+1)/Gamma(p+3/2) = 1.
  const double log_c = (std::lgamma(p + 1.5) - std::lgamma(p + 1.0) +
                        0.5 * std::log(k) - 0.5 * std::log(std::numbers::pi)) /
                       (p + 0.5);
  return std::exp(log_c);
}

double barenblatt(double m, double t, double x) {
  check(m, t);
  const double b = 1.0 / (m + 1.0);
  const double k = (m - 1.0) * b / (2.0 * m);
  const double c = barenblatt_constant(m);
  const double tb = std::pow(t, -b);
  const double core = c - k * x * x * tb * tb;
  if (core <= 0.0) return 0.0;
  return tb * std::pow(core, 1.0 / (m - 1.0));
}

double barenblatt_support_radius(double m, double t) {
  check(m, t);
  const double b = 1.0 / (m + 1.0);
  const double k = (m - 1.0) * b / (2.0 * m);
  return std::sqrt(barenblatt_constant(m) / k) * std::pow(t, b);
}

}  // namespace nlpm
