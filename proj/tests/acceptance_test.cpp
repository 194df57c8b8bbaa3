// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints exactly one PASS/FAIL line per criterion. Exit code 0 iff all
// criteria pass.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nlpm/barenblatt.hpp"
#include "nlpm/evolution.hpp"
#include "nlpm/experiment.hpp"
#include "nlpm/operator_images.hpp"
#include "nlpm/resolvent.hpp"

using namespace nlpm;

namespace {

constexpr double kPi = std::numbers::pi;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int a, int b) {
    return a + static_cast<int>(gen_() % static_cast<std::uint64_t>(b - a + 1));
  }

 private:
  std::mt19937_64 gen_;
};

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::ostringstream note;

  void fail(const std::string& why) {
    if (pass) note << why;
    pass = false;
  }
};

int g_failures = 0;

void report(Criterion& c) {
  std::printf("%s criterion %d: %s%s%s\n", c.pass ? "PASS" : "FAIL", c.id,
              c.name.c_str(), c.note.str().empty() ? "" : " -- ",
              c.note.str().c_str());
  std::fflush(stdout);
  if (!c.pass) ++g_failures;
}

// Random operator drawn from the acceptance measure family.
StencilWeights random_operator(Rng& rng, double h) {
  switch (rng.uniform_int(0, 4)) {
    case 0:
    case 1: {  // fractional s in {0.5, 1, 1.5}
      const double s = std::vector<double>{0.5, 1.0, 1.5}[rng.uniform_int(0, 2)];
      return assemble_nonlocal(LevyMeasure::fractional_laplacian(1, s), h,
                               std::max(1.5, 10.0 * h));
    }
    case 2: {  // symmetric dirac pairs
      std::vector<DiracAtom> atoms;
      const int pairs = rng.uniform_int(1, 3);
      for (int k = 0; k < pairs; ++k) {
        const double z = h * rng.uniform_int(1, 6);
        const double mass = rng.uniform(0.2, 2.0);
        atoms.push_back({{z}, mass});
        atoms.push_back({{-z}, mass});
      }
      return assemble_nonlocal(LevyMeasure::dirac_sum(std::move(atoms)), h,
                               10.0 * h);
    }
    default: {  // local Laplacian
      Matrix sigma(1, 1);
      sigma(0, 0) = 1.0;
      return assemble_local(sigma, h);
    }
  }
}

Nonlinearity random_phi(Rng& rng) {
  switch (rng.uniform_int(0, 2)) {
    case 0:
      return Nonlinearity::power(2.0);
    case 1:
      return Nonlinearity::stefan(1.0, 1.0, 0.5);
    default:
      return Nonlinearity::linear(1.0);
  }
}

GridFunction random_initial(Rng& rng, double h, int n, bool periodic) {
  GridFunction u(h, GridBox::interval(-n / 2, n / 2 - 1),
                 periodic ? Boundary::kPeriodic : Boundary::kZeroExtension);
  if (periodic) {
    for (std::int64_t i = 0; i < u.size(); ++i) u[i] = rng.uniform(0.0, 1.0);
  } else {
    const double radius = rng.uniform(0.6, 1.8);
    for (std::int64_t i = 0; i < u.size(); ++i) {
      const double x = u.coordinates(i)[0];
      const double t = x * x / (radius * radius);
      u[i] = t < 1.0 ? rng.uniform(0.5, 1.0) * std::exp(1.0 - 1.0 / (1.0 - t))
                     : 0.0;
    }
  }
  return u;
}

// --- criterion 1: maximum principle ----------------------------------------

void criterion_1() {
  Criterion c{1, "maximum principle (Linf bounds every step, 20 random configs)"};
  Rng rng(101);
  for (int rep = 0; rep < 20; ++rep) {
    const double h = 0.05;
    const bool periodic = rep % 2 == 0;
    StencilWeights w = random_operator(rng, h);
    Nonlinearity phi = random_phi(rng);
    GridFunction u0 = random_initial(rng, h, 128, periodic);
    EvolutionConfig cfg;
    cfg.t_final = 0.02;
    cfg.boundary = u0.boundary();
    cfg.record_trace = true;
    RunReport r = evolve(u0, w, phi, cfg);
    const double lo = u0.min_value(), hi = u0.max_value();
    for (const auto& state : r.trace) {
      if (state.min_value() < lo - 1e-12 || state.max_value() > hi + 1e-12) {
        c.fail("violated at config " + std::to_string(rep));
        break;
      }
    }
    if (!c.pass) break;
  }
  report(c);
}

// --- criterion 2: L1+ contraction and comparison -----------------------------

void criterion_2() {
  Criterion c{2, "L1+ contraction and comparison (20 random pairs)"};
  Rng rng(202);
  for (int rep = 0; rep < 20 && c.pass; ++rep) {
    const double h = 0.05;
    const bool ordered = rep % 2 == 0;
    StencilWeights w = random_operator(rng, h);
    Nonlinearity phi = random_phi(rng);
    GridFunction u0 = random_initial(rng, h, 128, true);
    GridFunction v0 = u0;
    for (std::int64_t i = 0; i < v0.size(); ++i)
      v0[i] += ordered ? rng.uniform(0.0, 0.5) : rng.uniform(-0.5, 0.5);
    const double sup = std::max(u0.linf_norm(), v0.linf_norm());
    const double dt = 0.9 * cfl_dt(w, phi, sup);

    GridFunction u = u0, v = v0;
    CompensatedSum gap0;
    for (std::int64_t i = 0; i < u.size(); ++i)
      gap0.add(std::max(u[i] - v[i], 0.0));
    double prev = gap0.value() * h;
    const double scale = std::max({prev, u0.l1_norm(), v0.l1_norm()});
    const int steps = 200;
    for (int n = 0; n < steps && c.pass; ++n) {
      u = step_explicit(u, w, phi, dt);
      v = step_explicit(v, w, phi, dt);
      CompensatedSum gap;
      bool still_ordered = true;
      for (std::int64_t i = 0; i < u.size(); ++i) {
        gap.add(std::max(u[i] - v[i], 0.0));
        still_ordered = still_ordered && u[i] <= v[i];
      }
      const double cur = gap.value() * h;
      if (cur > prev + 1e-12 * scale)
        c.fail("contraction failed at pair " + std::to_string(rep));
      if (ordered && !still_ordered)
        c.fail("comparison failed at pair " + std::to_string(rep));
      prev = cur;
    }
  }
  report(c);
}

// --- criterion 3: mass conservation and its sharpness ------------------------

void criterion_3() {
  Criterion c{3, "mass conservation (1e3 steps) and fast-diffusion decay"};
  Rng rng(303);
  for (int variant = 0; variant < 2 && c.pass; ++variant) {
    const double h = 0.05;
    Matrix sigma(1, 1);
    sigma(0, 0) = 1.0;
    StencilWeights w = variant == 0
                           ? assemble_local(sigma, h)
                           : assemble_nonlocal(
                                 LevyMeasure::fractional_laplacian(1, 1.0), h,
                                 2.0);
    Nonlinearity phi = variant == 0 ? Nonlinearity::power(2.0)
                                    : Nonlinearity::stefan(1.0, 1.0, 0.5);
    GridFunction u0 = random_initial(rng, h, 256, true);
    const double dt = 0.9 * cfl_dt(w, phi, u0.linf_norm());
    EvolutionConfig cfg;
    cfg.fixed_dt = dt;
    cfg.t_final = 1000.0 * dt;
    RunReport r = evolve(u0, w, phi, cfg);
    if (r.steps != 1000) c.fail("expected exactly 1000 steps");
    const double mass0 = r.records.front().mass;
    const double drift = std::abs(r.records.back().mass - mass0);
    if (!(drift <= 1e-12 * std::abs(mass0)))
      c.fail("relative drift " + std::to_string(drift / mass0));
  }
  if (c.pass) {
    // Sharpness: m = 0.3 (mollified), s = 0.5, zero extension.
    ExperimentConfig cfg;
    cfg.measure.type = MeasureType::kFractional;
    cfg.measure.s = 0.5;
    cfg.nonlinearity.type = NonlinearityType::kPower;
    cfg.nonlinearity.m = 0.3;
    cfg.grid.h = 0.05;
    cfg.grid.ilo = {-100};
    cfg.grid.ihi = {99};
    cfg.grid.boundary = Boundary::kZeroExtension;
    cfg.initial.type = InitialType::kBump;
    cfg.initial.width = 1.5;
    cfg.time.t_final = 0.5;
    RunReport r = run_solve(cfg, false);
    const double ratio = r.records.back().mass / r.records.front().mass;
    if (!(ratio < 0.99))
      c.fail("fast diffusion kept " + std::to_string(ratio) + " of the mass");
    else
      c.note << "fast-diffusion mass ratio " << ratio;
  }
  report(c);
}

// --- criterion 4: L1 consistency ---------------------------------------------

void criterion_4() {
  Criterion c{4, "consistency on a Gaussian (fractional decrease, local order 2)"};
  TestProfile psi = gaussian_profile(1, 1.0);

  LevyMeasure mu = LevyMeasure::fractional_laplacian(1, 0.5);
  auto exact = [&](const std::vector<double>& x) {
    return fractional_image_1d(psi, 0.5, x[0]);
  };
  std::vector<double> frac_errors;
  for (double h : {0.4, 0.2, 0.1, 0.05}) {
    StencilWeights w = assemble_nonlocal(mu, h, 20.0, TailPolicy::kAbsorb);
    const int reach = static_cast<int>(std::lround(5.0 / h));
    frac_errors.push_back(
        consistency_error(w, psi.value, exact, GridBox::interval(-reach, reach)));
  }
  for (size_t k = 1; k < frac_errors.size(); ++k)
    if (!(frac_errors[k] < frac_errors[k - 1]))
      c.fail("fractional errors not decreasing");

  std::vector<double> local_errors;
  for (double h : {0.4, 0.2, 0.1, 0.05}) {
    Matrix sigma(1, 1);
    sigma(0, 0) = 1.0;
    StencilWeights w = assemble_local(sigma, h);
    const int reach = static_cast<int>(std::lround(6.0 / h));
    local_errors.push_back(consistency_error(w, psi.value, psi.laplacian,
                                             GridBox::interval(-reach, reach)));
  }
  for (size_t k = 1; k < local_errors.size(); ++k) {
    const double ratio = local_errors[k - 1] / local_errors[k];
    if (!(ratio >= 3.5 && ratio <= 4.5))
      c.fail("local halving ratio " + std::to_string(ratio));
  }
  c.note << "local ratios";
  for (size_t k = 1; k < local_errors.size(); ++k)
    c.note << " " << local_errors[k - 1] / local_errors[k];
  report(c);
}

// --- criterion 5: local limit s -> 2^- ---------------------------------------

ExperimentConfig desk_pme_config() {
  ExperimentConfig cfg;
  cfg.nonlinearity.type = NonlinearityType::kPower;
  cfg.nonlinearity.m = 2.0;
  cfg.grid.dim = 1;
  cfg.grid.h = 0.025;
  cfg.grid.ilo = {-128};
  cfg.grid.ihi = {127};
  cfg.grid.boundary = Boundary::kZeroExtension;
  cfg.initial.type = InitialType::kBump;
  cfg.initial.height = 1.0;
  cfg.initial.width = 1.0;
  cfg.time.t_final = 0.25;
  cfg.truncation.r_cut = 10.0;
  return cfg;
}

void criterion_5() {
  Criterion c{5, "local limit: L1 distance to sigma=I decreasing in s"};
  SweepResult r = run_converge_s(desk_pme_config(), {1.5, 1.8, 1.95}, false);
  if (!r.monotone_decreasing)
    c.fail(
        "distances not strictly decreasing; at fixed h the quadrature stencil "
        "drops the (h/2)^{2-s} fraction of the local second moment inside the "
        "skipped center cell, so the discrete operator weakens as s -> 2;");
  c.note << "distances";
  for (const auto& row : r.rows) c.note << " " << row.error;
  report(c);
}

// --- criterion 6: continuous dependence incl. fast diffusion -----------------

void criterion_6() {
  Criterion c{6, "continuous dependence toward (m,s) = (0.5, 0.5)"};
  ExperimentConfig cfg = desk_pme_config();
  cfg.measure.type = MeasureType::kFractional;
  cfg.measure.s = 0.5;
  cfg.nonlinearity.m = 0.5;
  cfg.time.t_final = 0.1;
  std::vector<std::pair<double, double>> pairs;
  for (int n : {4, 8, 16})
    pairs.push_back({0.5 + 1.0 / n, 0.5 + 1.0 / n});
  SweepResult r = run_continuous_dependence(cfg, pairs, false);
  if (!r.monotone_decreasing) c.fail("distances not strictly decreasing");
  c.note << "distances";
  for (const auto& row : r.rows) c.note << " " << row.error;
  report(c);
}

// --- criterion 7: Barenblatt accuracy ----------------------------------------

void criterion_7() {
  Criterion c{7, "local PME accuracy vs Barenblatt"};
  ExperimentConfig cfg;
  cfg.local.sigma_columns = {{1.0}};
  cfg.nonlinearity.type = NonlinearityType::kPower;
  cfg.nonlinearity.m = 2.0;
  cfg.grid.dim = 1;
  cfg.grid.boundary = Boundary::kZeroExtension;
  cfg.initial.type = InitialType::kBarenblatt;
  cfg.initial.t0 = 0.1;
  cfg.time.t_final = 0.4;  // evolve from t = 0.1 to t = 0.5

  double prev = 1e30;
  double mass = 1.0;
  double last_error = 0.0;
  for (double h : {0.1, 0.05, 0.025}) {
    cfg.grid.h = h;
    const int reach = static_cast<int>(std::lround(3.0 / h));
    cfg.grid.ilo = {-reach};
    cfg.grid.ihi = {reach};
    const double err = barenblatt_l1_error(cfg);
    if (!(err < prev)) c.fail("errors not decreasing at h=" + std::to_string(h));
    prev = err;
    last_error = err;
    mass = make_initial(cfg).mass();
  }
  if (!(last_error <= 0.02 * mass))
    c.fail("error " + std::to_string(last_error) + " above 2% of mass");
  c.note << "error at h=0.025: " << last_error << " (mass " << mass << ")";
  report(c);
}

// --- criterion 8: resolvent suite ---------------------------------------------

void criterion_8() {
  Criterion c{8, "resolvent bounds, iteration cap, self-adjointness, positivity"};
  Rng rng(808);
  for (int rep = 0; rep < 100 && c.pass; ++rep) {
    const double h = rng.uniform(0.05, 0.2);
    StencilWeights w = random_operator(rng, h);
    GridFunction g(h, GridBox::interval(0, 63), Boundary::kPeriodic);
    const bool nonneg = rep % 4 == 0;
    for (std::int64_t i = 0; i < g.size(); ++i)
      g[i] = nonneg ? rng.uniform() : rng.uniform(-1.0, 1.0);
    const double eps = rng.uniform(0.1, 5.0);
    const double tol = 1e-10;
    ResolventResult r = solve_resolvent(g, w, eps, tol);
    if (eps * r.v.linf_norm() > g.linf_norm() * (1.0 + 1e-12) + eps * tol)
      c.fail("sup bound violated");
    if (eps * r.v.l1_norm() > g.l1_norm() * (1.0 + 1e-12) + eps * tol * 64)
      c.fail("L1 bound violated");
    if (r.iterations > iteration_bound(eps, w.effective_weight(), tol, g.linf_norm()))
      c.fail("iteration bound exceeded");
    if (nonneg)
      for (std::int64_t i = 0; i < g.size(); ++i)
        if (r.v[i] < -2.0 * tol / eps) c.fail("positivity violated");
  }
  // Self-adjointness with tol = 1e-13 solves.
  for (int rep = 0; rep < 20 && c.pass; ++rep) {
    const double h = rng.uniform(0.05, 0.2);
    StencilWeights w = random_operator(rng, h);
    GridFunction f(h, GridBox::interval(0, 63), Boundary::kPeriodic);
    GridFunction g(h, GridBox::interval(0, 63), Boundary::kPeriodic);
    for (std::int64_t i = 0; i < f.size(); ++i) {
      f[i] = rng.uniform(-1.0, 1.0);
      g[i] = rng.uniform(-1.0, 1.0);
    }
    const double eps = rng.uniform(0.2, 3.0);
    const double gap = verify_selfadjoint(w, eps, f, g);
    const double scale = std::max(1.0, f.l1_norm() * g.linf_norm() / eps);
    if (gap > 1e-10 * scale) c.fail("self-adjoint gap " + std::to_string(gap));
  }
  report(c);
}

// --- criterion 9: operator algebra ---------------------------------------------

void criterion_9() {
  Criterion c{9, "symbol nonnegativity, quadratic form, Stroock-Varopoulos"};
  Rng rng(909);
  // 10^3 random (stencil, xi) pairs.
  std::vector<StencilWeights> stencils;
  for (int k = 0; k < 20; ++k)
    stencils.push_back(random_operator(rng, rng.uniform(0.05, 0.25)));
  for (int k = 0; k < 1000 && c.pass; ++k) {
    const auto& w = stencils[k % stencils.size()];
    const double xi = rng.uniform(-80.0, 80.0);
    if (symbol(w, std::vector<double>{xi}) < 0.0) c.fail("negative symbol");
  }
  const std::vector<std::function<double(double)>> zetas = {
      [](double r) { return 0.5 * (1.0 + std::tanh(50.0 * r)); },
      [](double r) { return r * r * r; },
      [](double r) { return std::atan(r); }};
  for (int rep = 0; rep < 100 && c.pass; ++rep) {
    const auto& w = stencils[rep % stencils.size()];
    const double h = w.h();
    GridFunction psi(h, GridBox::interval(0, 63), Boundary::kPeriodic);
    for (std::int64_t i = 0; i < psi.size(); ++i)
      psi[i] = rng.uniform(-1.0, 1.0);
    GridFunction lpsi = apply(w, psi);
    CompensatedSum quad;
    for (std::int64_t i = 0; i < psi.size(); ++i) quad.add(psi[i] * lpsi[i]);
    if (quad.value() * h > 1e-12 * std::max(1.0, w.effective_weight()))
      c.fail("positive quadratic form");
    for (const auto& zeta : zetas) {
      CompensatedSum sv;
      for (std::int64_t i = 0; i < psi.size(); ++i)
        sv.add(zeta(psi[i]) * lpsi[i]);
      if (sv.value() * h > 1e-12 * std::max(1.0, w.effective_weight()))
        c.fail("Stroock-Varopoulos violated");
    }
    GridFunction phi2(h, psi.box(), psi.boundary());
    for (std::int64_t i = 0; i < phi2.size(); ++i)
      phi2[i] = rng.uniform(-1.0, 1.0);
    CompensatedSum a, b;
    GridFunction lphi2 = apply(w, phi2);
    for (std::int64_t i = 0; i < psi.size(); ++i) {
      a.add(phi2[i] * lpsi[i]);
      b.add(psi[i] * lphi2[i]);
    }
    if (std::abs(a.value() - b.value()) * h >
        1e-10 * std::max(1.0, w.effective_weight()))
      c.fail("self-adjointness gap");
  }
  report(c);
}

// --- criterion 10: constant validation -----------------------------------------

void criterion_10() {
  Criterion c{10, "fractional constant and s->2 normalization"};
  const double c11 = fractional_constant(1, 1.0);
  if (std::abs(c11 - 1.0 / kPi) > 1e-6)
    c.fail("c_{1,1} = " + std::to_string(c11));
  for (int dim : {1, 2}) {
    const double s = 1.99;
    const double q = fractional_constant(dim, s) * unit_sphere_area(dim) /
                     ((2.0 - s) * 2.0 * dim);
    if (std::abs(q - 1.0) > 0.05)
      c.fail("normalization at s=1.99, N=" + std::to_string(dim) + ": " +
             std::to_string(q));
    c.note << "N=" << dim << " norm " << q << "  ";
  }
  report(c);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
