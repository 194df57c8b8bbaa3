#include "nlpm/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlpm {

GridBox::GridBox(std::vector<int> lo_, std::vector<int> hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size() || lo.empty())
    throw std::invalid_argument("GridBox: inconsistent bounds");
  for (size_t k = 0; k < lo.size(); ++k)
    if (hi[k] < lo[k]) throw std::invalid_argument("GridBox: empty extent");
}

std::int64_t GridBox::volume() const {
  std::int64_t v = 1;
  for (int k = 0; k < dim(); ++k) v *= extent(k);
  return v;
}

GridFunction::GridFunction(double h, GridBox box, Boundary boundary)
    : h_(h), box_(std::move(box)), boundary_(boundary) {
  if (!(h > 0.0)) throw std::invalid_argument("GridFunction: h must be > 0");
  strides_.assign(box_.dim(), 1);
  for (int k = box_.dim() - 2; k >= 0; --k)
    strides_[k] = strides_[k + 1] * box_.extent(k + 1);
  values_.assign(static_cast<size_t>(box_.volume()), 0.0);
}

GridFunction GridFunction::from_function(
    double h, const GridBox& box, Boundary boundary,
    const std::function<double(const std::vector<double>&)>& f) {
  GridFunction u(h, box, boundary);
  std::vector<int> idx = box.lo;
  std::vector<double> x(box.dim());
  for (std::int64_t flat = 0; flat < u.size(); ++flat) {
    for (int k = 0; k < box.dim(); ++k) x[k] = h * idx[k];
    u.values_[static_cast<size_t>(flat)] = f(x);
    for (int k = box.dim() - 1; k >= 0; --k) {
      if (++idx[k] <= box.hi[k]) break;
      idx[k] = box.lo[k];
    }
  }
  return u;
}

std::int64_t GridFunction::flat_index(const std::vector<int>& idx) const {
  std::int64_t flat = 0;
  for (int k = 0; k < dim(); ++k)
    flat += static_cast<std::int64_t>(idx[k] - box_.lo[k]) * strides_[k];
  return flat;
}

std::vector<int> GridFunction::multi_index(std::int64_t flat) const {
  std::vector<int> idx(dim());
  for (int k = 0; k < dim(); ++k) {
    idx[k] = box_.lo[k] + static_cast<int>(flat / strides_[k]);
    flat %= strides_[k];
  }
  return idx;
}

std::vector<double> GridFunction::coordinates(std::int64_t flat) const {
  std::vector<int> idx = multi_index(flat);
  std::vector<double> x(dim());
  for (int k = 0; k < dim(); ++k) x[k] = h_ * idx[k];
  return x;
}

double GridFunction::shifted_value(std::int64_t flat,
                                   const std::vector<int>& offset) const {
  std::int64_t out = 0;
  std::int64_t rem = flat;
  for (int k = 0; k < dim(); ++k) {
    int rel = static_cast<int>(rem / strides_[k]);
    rem %= strides_[k];
    const int n = box_.extent(k);
    std::int64_t shifted = static_cast<std::int64_t>(rel) + offset[k];
    if (shifted < 0 || shifted >= n) {
      if (boundary_ == Boundary::kZeroExtension) return 0.0;
      shifted %= n;
      if (shifted < 0) shifted += n;
    }
    out += shifted * strides_[k];
  }
  return values_[static_cast<size_t>(out)];
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

double GridFunction::mass() const {
  CompensatedSum s;
  for (double v : values_) s.add(v);
  return s.value() * std::pow(h_, dim());
}

double GridFunction::l1_norm() const {
  CompensatedSum s;
  for (double v : values_) s.add(std::abs(v));
  return s.value() * std::pow(h_, dim());
}

double GridFunction::linf_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : values_) m = std::min(m, v);
  return m;
}

double GridFunction::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : values_) m = std::max(m, v);
  return m;
}

bool GridFunction::compatible_with(const GridFunction& other) const {
  return h_ == other.h_ && boundary_ == other.boundary_ &&
         box_.lo == other.box_.lo && box_.hi == other.box_.hi;
}

}  // namespace nlpm
