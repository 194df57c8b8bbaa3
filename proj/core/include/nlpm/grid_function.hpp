#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace nlpm {

enum class Boundary { kPeriodic, kZeroExtension };

// Inclusive index box lo..hi per axis; lattice point i has coordinate h*i.
struct GridBox {
  std::vector<int> lo;
  std::vector<int> hi;

  GridBox() = default;
  GridBox(std::vector<int> lo_, std::vector<int> hi_);
  static GridBox interval(int lo, int hi) { return GridBox({lo}, {hi}); }

  int dim() const { return static_cast<int>(lo.size()); }
  int extent(int axis) const { return hi[axis] - lo[axis] + 1; }
  std::int64_t volume() const;
};

// Values of a function on a uniform lattice patch with spacing h.
// Immutable in spirit: solvers produce new GridFunctions rather than
// mutating inputs.
class GridFunction {
 public:
  GridFunction(double h, GridBox box, Boundary boundary);
  static GridFunction from_function(
      double h, const GridBox& box, Boundary boundary,
      const std::function<double(const std::vector<double>&)>& f);

  int dim() const { return box_.dim(); }
  double h() const { return h_; }
  const GridBox& box() const { return box_; }
  Boundary boundary() const { return boundary_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  double operator[](std::int64_t flat) const { return values_[flat]; }
  double& operator[](std::int64_t flat) { return values_[flat]; }

  // Multi-index <-> flat conversions (row-major over the index box).
  std::int64_t flat_index(const std::vector<int>& idx) const;
  std::vector<int> multi_index(std::int64_t flat) const;
  std::vector<double> coordinates(std::int64_t flat) const;

  // Value at idx + offset honoring the boundary policy: periodic wrap or
  // zero outside the box.
  double shifted_value(std::int64_t flat, const std::vector<int>& offset) const;

  bool all_finite() const;

  // Discrete norms; sums use compensated accumulation.
  double mass() const;  // h^N * sum u_i
  double l1_norm() const;
  double linf_norm() const;
  double min_value() const;
  double max_value() const;

  bool compatible_with(const GridFunction& other) const;

 private:
  double h_;
  GridBox box_;
  Boundary boundary_;
  std::vector<int> strides_;
  std::vector<double> values_;
};

// Compensated (Neumaier) summation over a sequence of doubles.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace nlpm
