#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace nlpm {

// Axis-aligned cell in R^N with the half-open convention [lo, hi), matching
// the lattice cells z_alpha + (h/2)[-1,1)^N.
struct Cell {
  std::vector<double> lo;
  std::vector<double> hi;

  Cell() = default;
  Cell(std::vector<double> lo_, std::vector<double> hi_);
  static Cell centered(const std::vector<double>& center, double width);

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const std::vector<double>& z) const;
  // Distance from the origin to the cell closure in the sup norm.
  double sup_distance_to_origin() const;
  Cell negated() const;  // the mirrored cell -C, again half-open
};

struct DiracAtom {
  std::vector<double> offset;  // z_k, nonzero
  double mass;                 // > 0
};

// Radial profile f(r) of an absolutely continuous measure d(mu) = f(|z|) dz.
using RadialProfile = std::function<double(double)>;

// Symmetric Levy measure on R^N \ {0} with finite ∫ min(|z|^2, 1) dmu.
// Immutable after construction; construction verifies the Levy condition and
// throws std::invalid_argument "not a Levy measure" if it fails.
class LevyMeasure {
 public:
  // Truncation composes onto a base kind: kind() stays the base and
  // truncation_radius() > 0 marks the inner cutoff mu_r = 1_{|z|>r} mu.
  enum class Kind { kFractional, kDiracSum, kRadialDensity };

  // (-Laplace)^{s/2} generator: density c_{N,s} |z|^{-N-s}, s in (0,2).
  static LevyMeasure fractional_laplacian(int dim, double order);
  // Finite sum of Dirac atoms; the set must be closed under z -> -z with
  // equal masses.
  static LevyMeasure dirac_sum(std::vector<DiracAtom> atoms);
  // d(mu) = f(|z|) dz. finite_near_origin declares ∫_{|z|<=1} f(|z|) dz < inf,
  // which permits cells touching the origin.
  static LevyMeasure radial_density(int dim, RadialProfile profile,
                                    bool finite_near_origin);
  // Outer survivor of the inner truncation mu_r := 1_{|z|>r} mu.
  static LevyMeasure truncated(LevyMeasure base, double radius);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool finite_near_origin() const { return finite_near_origin_; }
  double order() const;  // fractional order s; throws for other kinds
  double truncation_radius() const { return trunc_radius_; }
  const std::vector<DiracAtom>& atoms() const { return atoms_; }

  // mu(cell). Exact atom lookup for DiracSum; adaptive quadrature with
  // relative tolerance cell_mass_tol() otherwise, refined toward the
  // origin-facing corner. Throws "singular cell" if the cell closure touches
  // the origin and the measure is not finite near 0.
  double cell_mass(const Cell& cell) const;

  // ∫ min(|z|^2, 1) dmu, the quantity assumption (A_mu) requires finite.
  double levy_functional() const;

  // mu({|z| > radius}), used for stencil tail masses.
  double mass_outside(double radius) const;

  // ∫_{a < |z| <= b} |z|^2 dmu.
  double second_moment(double a, double b) const;

  static constexpr double cell_mass_tol() { return 1e-10; }

 private:
  LevyMeasure() = default;
  double density_at(const std::vector<double>& z) const;
  double radial_density_at(double r) const;
  void validate_levy_condition();

  Kind kind_ = Kind::kDiracSum;
  int dim_ = 1;
  bool finite_near_origin_ = true;
  double order_ = 0.0;           // fractional only
  double normalization_ = 0.0;   // c_{N,s} for fractional
  double trunc_radius_ = 0.0;    // 0 = untruncated
  std::vector<DiracAtom> atoms_;
  RadialProfile profile_;
  double levy_functional_ = 0.0;
};

// Normalization constant c_{N,s} of the fractional Laplacian, computed by
// quadrature of its defining integral (1 - cos z_1)/|z|^{N+s} over R^N, to
// relative accuracy 1e-8. Throws std::domain_error for s outside (0,2).
double fractional_constant(int dim, double order);

// Surface area of the unit sphere S^{n-1} in R^n.
double unit_sphere_area(int n);

}  // namespace nlpm
