#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlpm/levy_measure.hpp"
#include "nlpm/stencil.hpp"

using namespace nlpm;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed form of the defining-integral inverse, used purely as a test oracle:
// c_{N,s} = s 2^{s-1} Gamma((N+s)/2) / (pi^{N/2} Gamma(1-s/2)).
double fractional_constant_closed_form(int dim, double s) {
  return s * std::pow(2.0, s - 1.0) * std::tgamma(0.5 * (dim + s)) /
         (std::pow(kPi, 0.5 * dim) * std::tgamma(1.0 - 0.5 * s));
}

}  // namespace

TEST_CASE("fractional constant matches 1/pi at (1,1)") {
  CHECK(fractional_constant(1, 1.0) == doctest::Approx(1.0 / kPi).epsilon(1e-8));
}

TEST_CASE("fractional constant matches 1/(2 pi) at (2,1)") {
  CHECK(fractional_constant(2, 1.0) ==
        doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-8));
}

TEST_CASE("fractional constant agrees with the closed form across (N,s)") {
  for (int dim : {1, 2, 3}) {
    for (double s : {0.3, 0.5, 1.0, 1.5, 1.9}) {
      CHECK(fractional_constant(dim, s) ==
            doctest::Approx(fractional_constant_closed_form(dim, s)).epsilon(1e-8));
    }
  }
}

TEST_CASE("fractional constant vanishes as s approaches 2") {
  double prev = fractional_constant(1, 1.5);
  for (double s : {1.9, 1.99, 1.999}) {
    const double c = fractional_constant(1, s);
    CHECK(c < prev);
    prev = c;
  }
  CHECK(fractional_constant(1, 1.999) < 2e-3);
  CHECK_THROWS_AS(fractional_constant(1, 2.0), std::domain_error);
  CHECK_THROWS_AS(fractional_constant(1, -0.5), std::domain_error);
}

TEST_CASE("dirac cell mass is exact atom lookup with half-open cells") {
  LevyMeasure mu =
      LevyMeasure::dirac_sum({{{2.0 * kPi}, 1.0}, {{-2.0 * kPi}, 1.0}});
  // 2 pi - 6 = 0.283... lies in 6 + [-0.5, 0.5).
  CHECK(mu.cell_mass(Cell::centered({6.0}, 1.0)) == 1.0);
  CHECK(mu.cell_mass(Cell::centered({-6.0}, 1.0)) == 1.0);
  CHECK(mu.cell_mass(Cell::centered({5.0}, 1.0)) == 0.0);
  // Half-open convention: an atom exactly on the left face belongs to the cell.
  LevyMeasure face = LevyMeasure::dirac_sum({{{0.5}, 2.0}, {{-0.5}, 2.0}});
  CHECK(face.cell_mass(Cell({0.5}, {1.5})) == 2.0);
  CHECK(face.cell_mass(Cell({-0.5}, {0.5})) == 2.0);
}

TEST_CASE("fractional cell mass matches the closed-form cell integral") {
  // c_{1,1/2} * int_{1/4}^{3/4} z^{-3/2} dz = c * 2 (1/sqrt(.25) - 1/sqrt(.75))
  LevyMeasure mu = LevyMeasure::fractional_laplacian(1, 0.5);
  const double expected = fractional_constant(1, 0.5) * 2.0 *
                          (1.0 / std::sqrt(0.25) - 1.0 / std::sqrt(0.75));
  CHECK(mu.cell_mass(Cell({0.25}, {0.75})) ==
        doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("singular cells are rejected") {
  LevyMeasure mu = LevyMeasure::fractional_laplacian(1, 0.5);
  CHECK_THROWS_WITH_AS(mu.cell_mass(Cell({-0.25}, {0.25})), "singular cell",
                       std::invalid_argument);
  CHECK_THROWS_AS(mu.cell_mass(Cell({0.0}, {0.5})), std::invalid_argument);
  // Truncation makes the same cell legal.
  LevyMeasure mur = LevyMeasure::truncated(mu, 0.1);
  CHECK(mur.cell_mass(Cell({-0.25}, {0.25})) > 0.0);
}

TEST_CASE("cell mass symmetry on random cells") {
  std::mt19937_64 gen(42);
  auto uniform = [&](double a, double b) {
    return a + (b - a) * ((gen() >> 11) * 0x1.0p-53);
  };
  LevyMeasure frac = LevyMeasure::fractional_laplacian(1, 0.8);
  LevyMeasure frac2 = LevyMeasure::fractional_laplacian(2, 1.2);
  for (int k = 0; k < 1000; ++k) {
    if (k % 2 == 0) {
      const double c = uniform(0.3, 3.0) * (k % 4 == 0 ? 1.0 : -1.0);
      const double w = uniform(0.05, 0.5);
      const Cell cell = Cell::centered({c}, w);
      const double direct = frac.cell_mass(cell);
      CHECK(frac.cell_mass(cell.negated()) ==
            doctest::Approx(direct).epsilon(2e-9));
    } else {
      const double cx = uniform(0.3, 2.0), cy = uniform(0.3, 2.0);
      const Cell cell = Cell::centered({cx, cy}, uniform(0.1, 0.4));
      const double direct = frac2.cell_mass(cell);
      CHECK(frac2.cell_mass(cell.negated()) ==
            doctest::Approx(direct).epsilon(2e-9));
    }
  }
}

TEST_CASE("levy functional evaluates the (A_mu) integrand") {
  // Both atoms beyond |z| = 1 contribute min(|z|^2, 1) = 1.
  LevyMeasure mu =
      LevyMeasure::dirac_sum({{{2.0 * kPi}, 1.0}, {{-2.0 * kPi}, 1.0}});
  CHECK(mu.levy_functional() == doctest::Approx(2.0));

  // Fractional: c S_{N-1} (1/(2-s) + 1/s), finite for every s in (0,2).
  for (double s : {0.2, 0.5, 1.0, 1.7}) {
    LevyMeasure frac = LevyMeasure::fractional_laplacian(1, s);
    const double expected =
        fractional_constant(1, s) * 2.0 * (1.0 / (2.0 - s) + 1.0 / s);
    CHECK(frac.levy_functional() == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("truncation only decreases the levy functional") {
  LevyMeasure base = LevyMeasure::fractional_laplacian(1, 0.6);
  const double full = base.levy_functional();
  for (double r : {0.1, 0.5, 2.0}) {
    LevyMeasure cut = LevyMeasure::truncated(base, r);
    CHECK(cut.levy_functional() <= full * (1.0 + 1e-12));
  }
}

TEST_CASE("too-singular radial densities are rejected") {
  CHECK_THROWS_WITH_AS(
      LevyMeasure::radial_density(
          1, [](double r) { return std::pow(r, -3.5) * std::exp(-r); }, false),
      "not a Levy measure", std::invalid_argument);
  // Just integrable is accepted.
  LevyMeasure ok = LevyMeasure::radial_density(
      1, [](double r) { return std::pow(r, -2.5) * std::exp(-r); }, false);
  CHECK(std::isfinite(ok.levy_functional()));
}

TEST_CASE("asymmetric atom sets are rejected") {
  CHECK_THROWS_AS(LevyMeasure::dirac_sum({{{1.0}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(LevyMeasure::dirac_sum({{{1.0}, 1.0}, {{-1.0}, 0.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(LevyMeasure::dirac_sum({{{0.0}, 1.0}}), std::invalid_argument);
}

TEST_CASE("partial second moments against the radial power integral") {
  // int_{a<|z|<=b} |z|^2 dmu = 2c (b^{2-s} - a^{2-s})/(2-s) in one dimension.
  LevyMeasure mu = LevyMeasure::fractional_laplacian(1, 0.5);
  const double c = fractional_constant(1, 0.5);
  auto closed = [c](double a, double b) {
    return 2.0 * c * (std::pow(b, 1.5) - std::pow(a, 1.5)) / 1.5;
  };
  CHECK(mu.second_moment(0.25, 1.0) ==
        doctest::Approx(closed(0.25, 1.0)).epsilon(1e-9));
  CHECK(mu.second_moment(0.0, 0.5) ==
        doctest::Approx(closed(0.0, 0.5)).epsilon(1e-8));
  LevyMeasure atoms = LevyMeasure::dirac_sum({{{0.5}, 2.0}, {{-0.5}, 2.0}});
  CHECK(atoms.second_moment(0.25, 1.0) == doctest::Approx(4.0 * 0.25));
  CHECK(atoms.second_moment(0.5, 1.0) == 0.0);  // (a, b] convention
}

TEST_CASE("mass outside a radius") {
  LevyMeasure mu = LevyMeasure::fractional_laplacian(1, 0.5);
  // c * 2 * R^{-s}/s
  const double c = fractional_constant(1, 0.5);
  CHECK(mu.mass_outside(4.0) ==
        doctest::Approx(c * 2.0 * std::pow(4.0, -0.5) / 0.5).epsilon(1e-10));
  LevyMeasure atoms =
      LevyMeasure::dirac_sum({{{2.0 * kPi}, 1.0}, {{-2.0 * kPi}, 1.0}});
  CHECK(atoms.mass_outside(6.0) == 2.0);
  CHECK(atoms.mass_outside(7.0) == 0.0);
}

TEST_CASE("symbol of the discrete Laplacian stencil is (2 - 2 cos(h xi))/h^2") {
  const double h = 0.25;
  Matrix sigma(1, 1);
  sigma(0, 0) = 1.0;
  StencilWeights w = assemble_local(sigma, h);
  for (double xi : {-7.0, -1.0, 0.0, 0.3, 2.0, 11.0}) {
    const double expected = (2.0 - 2.0 * std::cos(h * xi)) / (h * h);
    CHECK(symbol(w, std::vector<double>{xi}) ==
          doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(symbol(w, std::vector<double>{0.0}) == 0.0);
}

TEST_CASE("symbol of delta_{2pi} + delta_{-2pi} has a nontrivial zero at xi=1") {
  // h = pi/3 puts the atoms exactly on the lattice at alpha = +-6, so the
  // discrete measure reproduces the bounded symbol 2(1 - cos(2 pi xi)) with
  // its infinitely many zeros.
  LevyMeasure mu =
      LevyMeasure::dirac_sum({{{2.0 * kPi}, 1.0}, {{-2.0 * kPi}, 1.0}});
  StencilWeights w = assemble_nonlocal(mu, kPi / 3.0, 8.0);
  CHECK(std::abs(symbol(w, std::vector<double>{1.0})) < 1e-12);
  CHECK(std::abs(symbol(w, std::vector<double>{2.0})) < 1e-12);
  CHECK(symbol(w, std::vector<double>{0.5}) > 0.1);
}

TEST_CASE("normalized second moment approaches 1 as s -> 2^-") {
  for (int dim : {1, 2}) {
    double prev_gap = 1.0;
    for (double s : {1.9, 1.95, 1.99}) {
      const double c = fractional_constant(dim, s);
      const double second_moment = c * unit_sphere_area(dim) / (2.0 - s);
      const double normalized = second_moment / (2.0 * dim);
      const double gap = std::abs(normalized - 1.0);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap < 0.05);
  }
}
