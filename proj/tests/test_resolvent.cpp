#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlpm/resolvent.hpp"

using namespace nlpm;

namespace {

StencilWeights laplacian_1d(double h) {
  Matrix sigma(1, 1);
  sigma(0, 0) = 1.0;
  return assemble_local(sigma, h);
}

GridFunction random_periodic(std::mt19937_64& gen, double h, int n) {
  GridFunction u(h, GridBox::interval(0, n - 1), Boundary::kPeriodic);
  for (std::int64_t i = 0; i < u.size(); ++i)
    u[i] = 2.0 * ((gen() >> 11) * 0x1.0p-53) - 1.0;
  return u;
}

}  // namespace

TEST_CASE("constants solve the resolvent equation exactly") {
  const double h = 0.1;
  StencilWeights w = laplacian_1d(h);
  GridFunction g(h, GridBox::interval(0, 31), Boundary::kPeriodic);
  for (std::int64_t i = 0; i < g.size(); ++i) g[i] = 2.5;
  const double eps = 0.7;
  ResolventResult r = solve_resolvent(g, w, eps, 1e-12);
  for (std::int64_t i = 0; i < g.size(); ++i)
    CHECK(r.v[i] == doctest::Approx(2.5 / eps).epsilon(1e-10));
  CHECK(r.residual_linf <= eps * 1e-12 * 10);
}

TEST_CASE("sup and L1 bounds of the resolvent") {
  std::mt19937_64 gen(3);
  const double h = 0.1;
  StencilWeights w = laplacian_1d(h);
  for (int rep = 0; rep < 25; ++rep) {
    GridFunction g = random_periodic(gen, h, 64);
    const double eps = 0.1 + 3.0 * ((gen() >> 11) * 0x1.0p-53);
    ResolventResult r = solve_resolvent(g, w, eps, 1e-11);
    CHECK(eps * r.v.linf_norm() <= g.linf_norm() * (1.0 + 1e-12) + eps * 1e-11);
    CHECK(eps * r.v.l1_norm() <= g.l1_norm() * (1.0 + 1e-12) + eps * 1e-9);
  }
}

TEST_CASE("iteration_bound: empty stencil solves in one sweep") {
  CHECK(iteration_bound(2.0, 0.0, 1e-10, 1.0) == 1);
  const double h = 0.5;
  StencilWeights empty(1, h, {});
  GridFunction g(h, GridBox::interval(0, 7), Boundary::kPeriodic);
  for (std::int64_t i = 0; i < g.size(); ++i) g[i] = 1.0 + i;
  ResolventResult r = solve_resolvent(g, empty, 2.0, 1e-10);
  CHECK(r.iterations == 1);
  for (std::int64_t i = 0; i < g.size(); ++i)
    CHECK(r.v[i] == doctest::Approx(g[i] / 2.0));
}

TEST_CASE("iteration_bound: eps = W halves the error per sweep") {
  // q = 1/2: count = ceil(log2(g_norm / (tol/2))).
  const double tol = 1e-8, g_norm = 1.0;
  const int bound = iteration_bound(1.0, 1.0, tol, g_norm);
  CHECK(bound == static_cast<int>(std::ceil(std::log2(g_norm / (tol / 2.0)))));
}

TEST_CASE("measured iterations never exceed the prediction") {
  std::mt19937_64 gen(7);
  auto u = [&](double a, double b) {
    return a + (b - a) * ((gen() >> 11) * 0x1.0p-53);
  };
  for (int rep = 0; rep < 100; ++rep) {
    const double h = u(0.05, 0.3);
    StencilWeights w = laplacian_1d(h);
    GridFunction g = random_periodic(gen, h, 32);
    const double eps = u(0.05, 10.0);
    const double tol = std::pow(10.0, -u(6.0, 12.0));
    ResolventResult r = solve_resolvent(g, w, eps, tol);
    CHECK(r.iterations <=
          iteration_bound(eps, w.effective_weight(), tol, g.linf_norm()));
    const double q = w.effective_weight() / (eps + w.effective_weight());
    CHECK(r.residual_linf <= eps * tol * (1.0 + 2.0 * q / (1.0 - q)) + 1e-16);
  }
}

TEST_CASE("self-adjointness gap vanishes for f = g and stays tiny in general") {
  std::mt19937_64 gen(11);
  const double h = 2.0 * 3.141592653589793 / 64.0;
  StencilWeights w = laplacian_1d(h);
  GridFunction f = random_periodic(gen, h, 64);
  CHECK(verify_selfadjoint(w, 1.0, f, f) == 0.0);
  for (int rep = 0; rep < 10; ++rep) {
    GridFunction a = random_periodic(gen, h, 64);
    GridFunction b = random_periodic(gen, h, 64);
    const double gap = verify_selfadjoint(w, 0.8, a, b);
    CHECK(gap <= 1e-10 * a.linf_norm() * b.linf_norm() * 64.0 * h + 1e-12);
  }
}

TEST_CASE("nonnegative data give nonnegative resolvents") {
  std::mt19937_64 gen(13);
  const double h = 0.1;
  StencilWeights w = laplacian_1d(h);
  const double tol = 1e-12, eps = 0.5;
  for (int rep = 0; rep < 10; ++rep) {
    GridFunction g(h, GridBox::interval(0, 63), Boundary::kPeriodic);
    for (std::int64_t i = 0; i < g.size(); ++i)
      g[i] = (gen() >> 11) * 0x1.0p-53;
    ResolventResult r = solve_resolvent(g, w, eps, tol);
    for (std::int64_t i = 0; i < g.size(); ++i)
      CHECK(r.v[i] >= -tol / eps);
  }
}

TEST_CASE("contraction factor of one sweep") {
  std::mt19937_64 gen(17);
  const double h = 0.1;
  StencilWeights w = laplacian_1d(h);
  GridFunction g = random_periodic(gen, h, 48);
  const double eps = 1.3;
  const double weff = w.effective_weight();
  const double q = weff / (eps + weff);
  auto sweep = [&](const GridFunction& v) {
    GridFunction out(h, v.box(), v.boundary());
    for (std::int64_t i = 0; i < v.size(); ++i) {
      double acc = g[i];
      for (const auto& e : w.entries())
        acc += e.weight * v.shifted_value(i, e.offset);
      out[i] = acc / (eps + weff);
    }
    return out;
  };
  for (int rep = 0; rep < 20; ++rep) {
    GridFunction v1 = random_periodic(gen, h, 48);
    GridFunction v2 = random_periodic(gen, h, 48);
    GridFunction t1 = sweep(v1), t2 = sweep(v2);
    double num = 0.0, den = 0.0;
    for (std::int64_t i = 0; i < v1.size(); ++i) {
      num = std::max(num, std::abs(t1[i] - t2[i]));
      den = std::max(den, std::abs(v1[i] - v2[i]));
    }
    CHECK(num <= q * den * (1.0 + 1e-12));
  }
}

TEST_CASE("resolvent is homogeneous and order preserving") {
  std::mt19937_64 gen(19);
  const double h = 0.1;
  StencilWeights w = laplacian_1d(h);
  GridFunction g = random_periodic(gen, h, 64);
  const double eps = 0.9, tol = 1e-12;
  GridFunction v = solve_resolvent(g, w, eps, tol).v;

  GridFunction g3(h, g.box(), g.boundary());
  for (std::int64_t i = 0; i < g.size(); ++i) g3[i] = 3.0 * g[i];
  GridFunction v3 = solve_resolvent(g3, w, eps, tol).v;
  for (std::int64_t i = 0; i < g.size(); ++i)
    CHECK(v3[i] == doctest::Approx(3.0 * v[i]).epsilon(1e-10));

  GridFunction ghat = g;
  for (std::int64_t i = 0; i < g.size(); ++i)
    ghat[i] += (gen() >> 11) * 0x1.0p-53;
  GridFunction vhat = solve_resolvent(ghat, w, eps, tol).v;
  for (std::int64_t i = 0; i < g.size(); ++i)
    CHECK(v[i] <= vhat[i] + 2.0 * tol / eps);
}

TEST_CASE("domain errors") {
  const double h = 0.1;
  StencilWeights w = laplacian_1d(h);
  GridFunction g(h, GridBox::interval(0, 7), Boundary::kPeriodic);
  CHECK_THROWS_AS(solve_resolvent(g, w, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(solve_resolvent(g, w, 0.0, 1e-10), std::domain_error);
}
