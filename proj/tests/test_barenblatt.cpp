#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlpm/barenblatt.hpp"
#include "nlpm/quadrature.hpp"

using namespace nlpm;

TEST_CASE("unit mass at every time") {
  for (double m : {1.5, 2.0, 3.0}) {
    for (double t : {0.1, 0.5, 2.0}) {
      const double radius = barenblatt_support_radius(m, t);
      QuadResult q = integrate([m, t](double x) { return barenblatt(m, t, x); },
                               -radius, radius, 1e-9);
      CHECK(q.value == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("self-similarity U(x,t) = t^{-b} U(x t^{-b}, 1)") {
  const double m = 2.0;
  const double b = 1.0 / (m + 1.0);
  for (double t : {0.2, 0.7, 3.0}) {
    for (double x : {0.0, 0.3, 0.9, 1.4}) {
      const double lhs = barenblatt(m, t, x);
      const double scale = std::pow(t, -b);
      CHECK(lhs == doctest::Approx(scale * barenblatt(m, 1.0, x * scale))
                       .epsilon(1e-12));
    }
  }
}

TEST_CASE("closed form satisfies the PDE under finite differences") {
  // Residual of u_t = (u^m)_xx at interior points of the support, measured
  // with central differences; must shrink at second order in the step.
  const double m = 2.0;
  const double t = 0.5;
  auto residual = [&](double x, double d) {
    const double ut =
        (barenblatt(m, t + d, x) - barenblatt(m, t - d, x)) / (2.0 * d);
    auto um = [&](double y) { return std::pow(barenblatt(m, t, y), m); };
    const double uxx = (um(x + d) + um(x - d) - 2.0 * um(x)) / (d * d);
    return std::abs(ut - uxx);
  };
  const double inside = 0.4 * barenblatt_support_radius(m, t);
  for (double x : {0.0, inside}) {
    const double r1 = residual(x, 1e-2);
    const double r2 = residual(x, 5e-3);
    CHECK(r1 < 1e-2);
    CHECK(r2 < r1 * 0.3 + 1e-10);  // roughly O(d^2)
  }
}

TEST_CASE("support radius and domain errors") {
  const double m = 2.0, t = 0.5;
  const double r = barenblatt_support_radius(m, t);
  CHECK(barenblatt(m, t, r * 1.0001) == 0.0);
  CHECK(barenblatt(m, t, r * 0.999) > 0.0);
  CHECK_THROWS_AS(barenblatt(1.0, 0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(barenblatt(0.8, 0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(barenblatt(2.0, 0.0, 0.0), std::domain_error);
}
