#include "nlpm/levy_measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "nlpm/quadrature.hpp"

namespace nlpm {

namespace {

constexpr double kPi = std::numbers::pi;

double sq_norm(const std::vector<double>& z) {
  double s = 0.0;
  for (double v : z) s += v * v;
  return s;
}

// Gamma(n/2) for integer n >= 1, by the half-integer recursion.
double gamma_half(int n) {
  if (n == 1) return std::sqrt(kPi);
  if (n == 2) return 1.0;
  return (0.5 * (n - 2)) * gamma_half(n - 2);
}

// Tail of int_Y^inf cos(z) z^{-a} dz by repeated integration by parts; interior
// part is left to the caller. Valid for a > 1, Y >> 1.
double cosine_tail(double y, double a) {
  // T(Y,a) = -sin(Y) Y^-a + a cos(Y) Y^-(a+1) + a(a+1) sin(Y) Y^-(a+2) + R,
  // |R| <= a(a+1)(a+2) Y^-(a+3).
  const double ya = std::pow(y, -a);
  return -std::sin(y) * ya + a * std::cos(y) * ya / y +
         a * (a + 1.0) * std::sin(y) * ya / (y * y);
}

// int_1^inf cos(z) z^{-1-s} dz to absolute accuracy ~1e-11. Two analytic
// integrations by parts tame the oscillation before quadrature takes over.
double cosine_moment(double s) {
  const double a = 1.0 + s;
  const double b = a + 2.0;
  const double y = 300.0;
  QuadResult q = integrate([b](double z) { return std::cos(z) * std::pow(z, -b); },
                           1.0, y, 1e-12, 1e-14, 20000);
  const double i2 = q.value + cosine_tail(y, b);
  return -std::sin(1.0) + a * std::cos(1.0) - a * (a + 1.0) * i2;
}

// int_{R^N} (1 - cos z_1)/|z|^{N+s} dz. Reduces exactly to the 1-D integral
// against |t|^{-1-s} times the cross-sectional factor
// K_N(s) = int_{R^{N-1}} (1+|w|^2)^{-(N+s)/2} dw.
double defining_integral(int dim, double s) {
  // 1-D part, split at |z| = 1. The inner part uses the Taylor series of
  // 1 - cos z termwise (fully convergent); the outer part integrates the
  // power tail analytically and the cosine part as an oscillatory moment.
  double inner = 0.0;
  double factorial = 2.0;  // (2k)!
  double sign = 1.0;
  for (int k = 1; k <= 24; ++k) {
    inner += sign / (factorial * (2.0 * k - s));
    sign = -sign;
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  const double one_d = 2.0 * inner + 2.0 / s - 2.0 * cosine_moment(s);
  if (dim == 1) return one_d;

  // K_N(s) = S_{N-2} * int_0^{pi/2} sin^{N-2}t cos^s t dt.
  QuadResult k = integrate(
      [dim, s](double t) {
        return std::pow(std::sin(t), dim - 2) * std::pow(std::cos(t), s);
      },
      0.0, 0.5 * kPi, 1e-11);
  return unit_sphere_area(dim - 1) * k.value * one_d;
}

}  // namespace

double unit_sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("unit_sphere_area: n must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / gamma_half(n);
}

double fractional_constant(int dim, double order) {
  if (dim < 1) throw std::domain_error("fractional_constant: dim must be >= 1");
  if (!(order > 0.0 && order < 2.0))
    throw std::domain_error("fractional_constant: order must lie in (0,2)");
  static std::mutex mutex;
  static std::map<std::pair<int, double>, double> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({dim, order});
    if (it != cache.end()) return it->second;
  }
  const double value = 1.0 / defining_integral(dim, order);
  std::lock_guard<std::mutex> lock(mutex);
  cache.insert({{dim, order}, value});
  return value;
}

Cell::Cell(std::vector<double> lo_, std::vector<double> hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size() || lo.empty())
    throw std::invalid_argument("Cell: inconsistent bounds");
  for (size_t k = 0; k < lo.size(); ++k)
    if (!(lo[k] < hi[k])) throw std::invalid_argument("Cell: empty extent");
}

Cell Cell::centered(const std::vector<double>& center, double width) {
  std::vector<double> lo(center.size()), hi(center.size());
  for (size_t k = 0; k < center.size(); ++k) {
    lo[k] = center[k] - 0.5 * width;
    hi[k] = center[k] + 0.5 * width;
  }
  return Cell(std::move(lo), std::move(hi));
}

bool Cell::contains(const std::vector<double>& z) const {
  if (z.size() != lo.size()) return false;
  for (size_t k = 0; k < lo.size(); ++k)
    if (!(z[k] >= lo[k] && z[k] < hi[k])) return false;
  return true;
}

double Cell::sup_distance_to_origin() const {
  double d = 0.0;
  for (size_t k = 0; k < lo.size(); ++k) {
    double dk = 0.0;
    if (lo[k] > 0.0) dk = lo[k];
    else if (hi[k] < 0.0) dk = -hi[k];
    d = std::max(d, dk);
  }
  return d;
}

Cell Cell::negated() const {
  Cell c;
  c.lo.resize(lo.size());
  c.hi.resize(hi.size());
  for (size_t k = 0; k < lo.size(); ++k) {
    c.lo[k] = -hi[k];
    c.hi[k] = -lo[k];
  }
  return c;
}

LevyMeasure LevyMeasure::fractional_laplacian(int dim, double order) {
  if (dim < 1) throw std::invalid_argument("fractional_laplacian: dim must be >= 1");
  if (!(order > 0.0 && order < 2.0))
    throw std::domain_error("fractional_laplacian: order must lie in (0,2)");
  LevyMeasure m;
  m.kind_ = Kind::kFractional;
  m.dim_ = dim;
  m.order_ = order;
  m.normalization_ = fractional_constant(dim, order);
  m.finite_near_origin_ = false;
  m.validate_levy_condition();
  return m;
}

LevyMeasure LevyMeasure::dirac_sum(std::vector<DiracAtom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("dirac_sum: no atoms");
  const size_t dim = atoms.front().offset.size();
  for (const auto& a : atoms) {
    if (a.offset.size() != dim)
      throw std::invalid_argument("dirac_sum: mixed dimensions");
    if (!(a.mass > 0.0)) throw std::invalid_argument("dirac_sum: mass must be > 0");
    if (sq_norm(a.offset) == 0.0)
      throw std::invalid_argument("dirac_sum: atom at the origin");
  }
  // Symmetry under z -> -z with equal masses.
  for (const auto& a : atoms) {
    double mirrored = 0.0, direct = 0.0;
    for (const auto& b : atoms) {
      bool eq = true, neg = true;
      for (size_t k = 0; k < dim; ++k) {
        eq = eq && b.offset[k] == a.offset[k];
        neg = neg && b.offset[k] == -a.offset[k];
      }
      if (eq) direct += b.mass;
      if (neg) mirrored += b.mass;
    }
    if (std::abs(direct - mirrored) > 1e-12 * direct)
      throw std::invalid_argument("dirac_sum: atom set is not symmetric");
  }
  LevyMeasure m;
  m.kind_ = Kind::kDiracSum;
  m.dim_ = static_cast<int>(dim);
  m.atoms_ = std::move(atoms);
  m.finite_near_origin_ = true;
  m.validate_levy_condition();
  return m;
}

LevyMeasure LevyMeasure::radial_density(int dim, RadialProfile profile,
                                        bool finite_near_origin) {
  if (dim < 1) throw std::invalid_argument("radial_density: dim must be >= 1");
  if (!profile) throw std::invalid_argument("radial_density: empty profile");
  LevyMeasure m;
  m.kind_ = Kind::kRadialDensity;
  m.dim_ = dim;
  m.profile_ = std::move(profile);
  m.finite_near_origin_ = finite_near_origin;
  m.validate_levy_condition();
  return m;
}

LevyMeasure LevyMeasure::truncated(LevyMeasure base, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("truncated: radius must be > 0");
  LevyMeasure m = std::move(base);
  if (m.kind_ == Kind::kDiracSum) {
    std::vector<DiracAtom> kept;
    for (auto& a : m.atoms_)
      if (std::sqrt(sq_norm(a.offset)) > radius) kept.push_back(std::move(a));
    m.atoms_ = std::move(kept);
  }
  m.trunc_radius_ = std::max(m.trunc_radius_, radius);
  m.finite_near_origin_ = true;
  m.validate_levy_condition();
  return m;
}

double LevyMeasure::order() const {
  if (kind_ != Kind::kFractional)
    throw std::logic_error("order() is defined for fractional measures only");
  return order_;
}

double LevyMeasure::density_at(const std::vector<double>& z) const {
  return radial_density_at(std::sqrt(sq_norm(z)));
}

double LevyMeasure::radial_density_at(double r) const {
  if (r == 0.0) return 0.0;
  if (trunc_radius_ > 0.0 && r <= trunc_radius_) return 0.0;
  switch (kind_) {
    case Kind::kFractional:
      return normalization_ * std::pow(r, -(dim_ + order_));
    case Kind::kRadialDensity:
      return profile_(r);
    default:
      return 0.0;
  }
}

double LevyMeasure::cell_mass(const Cell& cell) const {
  if (cell.dim() != dim_)
    throw std::invalid_argument("cell_mass: dimension mismatch");
  if (kind_ == Kind::kDiracSum) {
    double mass = 0.0;
    for (const auto& a : atoms_)
      if (cell.contains(a.offset)) mass += a.mass;
    return mass;
  }
  if (!finite_near_origin_ && cell.sup_distance_to_origin() == 0.0)
    throw std::invalid_argument("singular cell");
  QuadResult q = integrate_box(
      [this](const std::vector<double>& z) { return density_at(z); },
      cell.lo, cell.hi, cell_mass_tol());
  if (!q.converged)
    throw std::runtime_error("cell_mass: quadrature did not reach tolerance " +
                             std::to_string(cell_mass_tol()));
  return std::max(q.value, 0.0);
}

void LevyMeasure::validate_levy_condition() {
  if (kind_ == Kind::kDiracSum) {
    double v = 0.0;
    for (const auto& a : atoms_) v += a.mass * std::min(sq_norm(a.offset), 1.0);
    levy_functional_ = v;
    return;
  }
  if (kind_ == Kind::kFractional && trunc_radius_ == 0.0) {
    // Radial power integrals are elementary: r^{1-s} near 0, r^{-1-s} at inf.
    const double s = order_;
    levy_functional_ =
        normalization_ * unit_sphere_area(dim_) * (1.0 / (2.0 - s) + 1.0 / s);
    return;
  }
  // General radial case: quadrature with divergence detection.
  const double r0 = std::max(trunc_radius_, 0.0);
  auto second = [this](double r) {
    return radial_density_at(r) * std::pow(r, dim_ + 1);  // |z|^2 r^{N-1}
  };
  auto tail = [this](double r) {
    return radial_density_at(r) * std::pow(r, dim_ - 1);
  };
  double near = 0.0;
  if (r0 < 1.0) {
    QuadResult q = r0 == 0.0 ? integrate_to_zero(second, 1.0, 1e-9)
                             : integrate(second, r0, 1.0, 1e-9);
    if (!q.converged) throw std::invalid_argument("not a Levy measure");
    near = q.value;
  }
  QuadResult far = integrate_to_infinity(tail, std::max(1.0, r0), 1e-9);
  if (!far.converged) throw std::invalid_argument("not a Levy measure");
  levy_functional_ = unit_sphere_area(dim_) * (near + far.value);
}

double LevyMeasure::levy_functional() const { return levy_functional_; }

double LevyMeasure::mass_outside(double radius) const {
  if (!(radius > 0.0))
    throw std::invalid_argument("mass_outside: radius must be > 0");
  const double r = std::max(radius, trunc_radius_);
  switch (kind_) {
    case Kind::kDiracSum: {
      double mass = 0.0;
      for (const auto& a : atoms_)
        if (std::sqrt(sq_norm(a.offset)) > r) mass += a.mass;
      return mass;
    }
    case Kind::kFractional:
      return normalization_ * unit_sphere_area(dim_) * std::pow(r, -order_) /
             order_;
    default: {
      auto tail = [this](double t) {
        return radial_density_at(t) * std::pow(t, dim_ - 1);
      };
      QuadResult q = integrate_to_infinity(tail, r, 1e-10);
      if (!q.converged) throw std::runtime_error("mass_outside: divergent tail");
      return unit_sphere_area(dim_) * q.value;
    }
  }
}

double LevyMeasure::second_moment(double a, double b) const {
  if (!(a >= 0.0 && b > a)) throw std::invalid_argument("second_moment: bad range");
  switch (kind_) {
    case Kind::kDiracSum: {
      double v = 0.0;
      for (const auto& atom : atoms_) {
        const double r = std::sqrt(sq_norm(atom.offset));
        if (r > a && r <= b) v += atom.mass * r * r;
      }
      return v;
    }
    default: {
      const double lo = std::max(a, trunc_radius_);
      if (lo >= b) return 0.0;
      auto f = [this](double r) {
        return radial_density_at(r) * std::pow(r, dim_ + 1);
      };
      QuadResult q = lo == 0.0 ? integrate_to_zero(f, b, 1e-10)
                               : integrate(f, lo, b, 1e-10);
      if (!q.converged) throw std::runtime_error("second_moment: divergent");
      return unit_sphere_area(dim_) * q.value;
    }
  }
}

}  // namespace nlpm
