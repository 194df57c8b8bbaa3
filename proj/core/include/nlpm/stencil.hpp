#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nlpm/grid_function.hpp"
#include "nlpm/levy_measure.hpp"

namespace nlpm {

// Dense row-major matrix, just large enough for sigma columns and the grid
// transform (N <= 4 in practice).
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
  static Matrix identity(int n);

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

enum class TailPolicy { kDrop, kAbsorb };

struct StencilEntry {
  std::vector<int> offset;  // alpha != 0
  double weight;            // >= 0
};

// Discrete measure nu_h = sum_alpha w_alpha delta_{h alpha}: the weight table
// of L_h^sigma, L_h^mu, or their sum. Immutable after construction.
class StencilWeights {
 public:
  StencilWeights(int dim, double h, std::vector<StencilEntry> entries,
                 double tail_mass = 0.0, TailPolicy policy = TailPolicy::kDrop);

  int dim() const { return dim_; }
  double h() const { return h_; }
  const std::vector<StencilEntry>& entries() const { return entries_; }
  double tail_mass() const { return tail_mass_; }
  TailPolicy tail_policy() const { return tail_policy_; }

  double total_weight() const { return total_weight_; }  // W = sum w_alpha
  // W plus the absorbed tail; the row sum the CFL bound and the resolvent
  // contraction factor are built from.
  double effective_weight() const;

  // Sum of two stencils on the same lattice (L_h^sigma + L_h^mu).
  static StencilWeights sum(const StencilWeights& a, const StencilWeights& b);

 private:
  int dim_;
  double h_;
  std::vector<StencilEntry> entries_;
  double tail_mass_;
  TailPolicy tail_policy_;
  double total_weight_;
};

// Finite-difference atoms of L^sigma: weight 1/h^2 at +-h sigma_i for each
// column sigma_i (integer entries required; weights accumulate when columns
// coincide). Throws "not grid-compatible; apply grid_normalize" otherwise.
StencilWeights assemble_local(const Matrix& sigma, double h);

struct GridTransform {
  Matrix transform;         // A with A sigma sigma^T A^T = I0
  std::vector<int> i0_diag; // diagonal of I0 (leading 1s, then 0s)
  int rank = 0;
};

// Coordinate normalization A = QJ of remark "defining the scheme on a grid":
// eigen-decompose sigma sigma^T and rescale the positive-eigenvalue axes so
// the local operator becomes axis-aligned unit second differences.
GridTransform grid_normalize(const Matrix& sigma);

// Quadrature atoms of L_h^mu: w_alpha = mu(z_alpha + R_h) for
// 0 < |z_alpha| <= r_cut (alpha = 0 is deliberately skipped), tail_mass =
// mu({|z| > r_cut + h/2}).
StencilWeights assemble_nonlocal(const LevyMeasure& measure, double h,
                                 double r_cut,
                                 TailPolicy policy = TailPolicy::kDrop);

// (L_h u)_i = sum_alpha w_alpha (u_{i+alpha} - u_i) - [absorb] tail * u_i.
GridFunction apply(const StencilWeights& weights, const GridFunction& u);

// Fourier symbol of the discrete operator: sum_alpha w_alpha (1-cos(z_alpha.xi)).
double symbol(const StencilWeights& weights, std::span<const double> xi);

using ScalarField = std::function<double(const std::vector<double>&)>;

// L1 error h^N sum_i |(L_h psi)(x_i) - (L psi)(x_i)| over the lattice points
// of eval_box; psi and its analytic operator image are evaluated pointwise.
double consistency_error(const StencilWeights& weights, const ScalarField& psi,
                         const ScalarField& exact_image, const GridBox& eval_box);

}  // namespace nlpm
