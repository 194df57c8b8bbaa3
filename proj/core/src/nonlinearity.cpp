#include "nlpm/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlpm {

namespace {

// Fixed mollifier: the normalized bump exp(-1/(1-t^2)) on (-1,1), sampled by
// composite Simpson with positive weights and renormalized to sum 1. The
// samples define a convex combination of shifts, so mollification preserves
// monotonicity and affine functions exactly.
struct MollifierRule {
  std::vector<double> node;
  std::vector<double> weight;
};

const MollifierRule& mollifier_rule() {
  static const MollifierRule rule = [] {
    constexpr int kPanels = 256;  // Simpson over 2*kPanels subintervals
    MollifierRule r;
    const int n = 2 * kPanels + 1;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = -1.0 + 2.0 * i / (n - 1);
      const double bump = (std::abs(t) < 1.0) ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
      w[i] *= bump;
      total += w[i];
    }
    for (int i = 0; i < n; ++i) {
      if (w[i] == 0.0) continue;
      r.node.push_back(-1.0 + 2.0 * i / (n - 1));
      r.weight.push_back(w[i] / total);
    }
    return r;
  }();
  return rule;
}

}  // namespace

Nonlinearity Nonlinearity::power(double exponent) {
  if (!(exponent > 0.0))
    throw std::invalid_argument("Nonlinearity::power: exponent must be > 0");
  Nonlinearity phi;
  phi.kind_ = Kind::kPower;
  phi.m_ = exponent;
  return phi;
}

Nonlinearity Nonlinearity::stefan(double c1, double c2, double latent_heat) {
  if (!(c1 > 0.0 && c2 > 0.0 && latent_heat > 0.0))
    throw std::invalid_argument("Nonlinearity::stefan: parameters must be > 0");
  Nonlinearity phi;
  phi.kind_ = Kind::kStefan;
  phi.c1_ = c1;
  phi.c2_ = c2;
  phi.latent_ = latent_heat;
  return phi;
}

Nonlinearity Nonlinearity::linear(double slope) {
  if (!(slope >= 0.0))
    throw std::invalid_argument("Nonlinearity::linear: slope must be >= 0");
  Nonlinearity phi;
  phi.kind_ = Kind::kLinear;
  phi.slope_ = slope;
  return phi;
}

Nonlinearity Nonlinearity::monotone_table(std::vector<double> x,
                                          std::vector<double> value) {
  if (x.size() != value.size() || x.size() < 2)
    throw std::invalid_argument("monotone_table: need >= 2 breakpoints");
  for (size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1]))
      throw std::invalid_argument("monotone_table: abscissae must increase");
    if (value[i] < value[i - 1])
      throw std::invalid_argument("monotone_table: values must be nondecreasing");
  }
  if (!(x.front() <= 0.0 && x.back() >= 0.0))
    throw std::invalid_argument("monotone_table: range must bracket 0");
  Nonlinearity phi;
  phi.kind_ = Kind::kTable;
  phi.tx_ = std::move(x);
  phi.tv_ = std::move(value);
  if (std::abs(phi.eval(0.0)) > 1e-12)
    throw std::invalid_argument("monotone_table: phi(0) must be 0");
  return phi;
}

double Nonlinearity::eval(double r) const {
  switch (kind_) {
    case Kind::kPower:
      if (r == 0.0) return 0.0;
      return std::copysign(std::pow(std::abs(r), m_), r);
    case Kind::kStefan:
      return r < 0.0 ? c2_ * r : c1_ * std::max(r - latent_, 0.0);
    case Kind::kLinear:
      return slope_ * r;
    case Kind::kTable: {
      // Linear interpolation; end-segment slopes extrapolate beyond the range.
      auto it = std::upper_bound(tx_.begin(), tx_.end(), r);
      size_t j = it - tx_.begin();
      if (j == 0) j = 1;
      if (j == tx_.size()) j = tx_.size() - 1;
      const double t = (r - tx_[j - 1]) / (tx_[j] - tx_[j - 1]);
      return tv_[j - 1] + t * (tv_[j] - tv_[j - 1]);
    }
  }
  return 0.0;
}

double Nonlinearity::lipschitz_on(double bound) const {
  if (!(bound > 0.0))
    throw std::invalid_argument("lipschitz_on: bound must be > 0");
  switch (kind_) {
    case Kind::kPower:
      if (m_ >= 1.0) return m_ * std::pow(bound, m_ - 1.0);
      return infinity();  // cusp at 0
    case Kind::kStefan:
      return std::max(c1_, c2_);
    case Kind::kLinear:
      return slope_;
    case Kind::kTable: {
      double lip = 0.0;
      for (size_t j = 1; j < tx_.size(); ++j) {
        if (tx_[j] <= -bound || tx_[j - 1] >= bound) {
          // Outside segments still matter when [-M, M] sticks out of the
          // table range (end-slope extrapolation).
          if (!((j == 1 && -bound < tx_.front()) ||
                (j + 1 == tx_.size() && bound > tx_.back())))
            continue;
        }
        lip = std::max(lip, (tv_[j] - tv_[j - 1]) / (tx_[j] - tx_[j - 1]));
      }
      return lip;
    }
  }
  return 0.0;
}

Nonlinearity Nonlinearity::mollify(double eta, double range_lo,
                                   double range_hi) const {
  if (!(eta > 0.0)) throw std::domain_error("mollify: eta must be > 0");
  if (!(range_lo < 0.0 && range_hi > 0.0))
    throw std::invalid_argument("mollify: range must bracket 0");
  const MollifierRule& rule = mollifier_rule();

  auto smoothed = [&](double x) {
    double acc = 0.0;
    for (size_t j = 0; j < rule.node.size(); ++j)
      acc += rule.weight[j] * eval(x - eta * rule.node[j]);
    return acc;
  };

  const double step = eta / 8.0;
  const long n_lo = static_cast<long>(std::ceil(-range_lo / step));
  const long n_hi = static_cast<long>(std::ceil(range_hi / step));
  const double at_zero = smoothed(0.0);

  std::vector<double> xs, vs;
  xs.reserve(n_lo + n_hi + 1);
  vs.reserve(n_lo + n_hi + 1);
  for (long i = -n_lo; i <= n_hi; ++i) {
    xs.push_back(i * step);
    vs.push_back(i == 0 ? 0.0 : smoothed(i * step) - at_zero);
  }
  // The convex-combination construction is nondecreasing up to roundoff;
  // equalize ulp-level inversions so the table constructor accepts it.
  for (size_t i = 1; i < vs.size(); ++i)
    if (vs[i] < vs[i - 1]) {
      if (vs[i - 1] - vs[i] > 1e-12 * std::max(1.0, std::abs(vs[i])))
        throw std::logic_error("mollify: smoothing lost monotonicity");
      vs[i] = vs[i - 1];
    }
  return monotone_table(std::move(xs), std::move(vs));
}

}  // namespace nlpm
