#pragma once

#include <limits>
#include <string>
#include <vector>

namespace nlpm {

// Continuous nondecreasing phi with phi(0) = 0: the diffusion nonlinearity.
// Variants: Power  phi(r) = r|r|^{m-1}, m > 0
//           Stefan phi(r) = c2 r for r < 0, c1 (r - T)^+ for r >= 0
//           Linear phi(r) = a r
//           MonotoneTable: breakpoints with linear interpolation
// Immutable after construction; eval is pure.
class Nonlinearity {
 public:
  enum class Kind { kPower, kStefan, kLinear, kTable };

  static Nonlinearity power(double exponent);
  static Nonlinearity stefan(double c1, double c2, double latent_heat);
  static Nonlinearity linear(double slope);
  // Breakpoints must be strictly increasing in x, nondecreasing in value,
  // bracket 0, and interpolate to 0 at 0; violations are rejected.
  static Nonlinearity monotone_table(std::vector<double> x, std::vector<double> value);

  Kind kind() const { return kind_; }
  double power_exponent() const { return m_; }

  double eval(double r) const;

  // Smallest computable upper bound for the slope over [-M, M]; +inf signals
  // that mollification is required before explicit time stepping.
  double lipschitz_on(double bound) const;

  // Tabulated phi_eta = phi * omega_eta - (phi * omega_eta)(0) on a uniform
  // abscissa grid of step eta/8 covering [range_lo, range_hi]. The mollifier
  // omega is a fixed smooth even bump supported in [-1,1] with integral 1,
  // discretized by a positive symmetric rule, so the result is exactly
  // nondecreasing with phi_eta(0) = 0.
  Nonlinearity mollify(double eta, double range_lo, double range_hi) const;

  static constexpr double infinity() { return std::numeric_limits<double>::infinity(); }

 private:
  Nonlinearity() = default;

  Kind kind_ = Kind::kLinear;
  double m_ = 0.0;        // power exponent
  double c1_ = 0.0, c2_ = 0.0, latent_ = 0.0;
  double slope_ = 0.0;    // linear
  std::vector<double> tx_, tv_;
};

}  // namespace nlpm
