#include "nlpm/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace nlpm {

namespace {

bool is_zero(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int c) { return c == 0; });
}

std::vector<int> negate(const std::vector<int>& v) {
  std::vector<int> out(v.size());
  for (size_t k = 0; k < v.size(); ++k) out[k] = -v[k];
  return out;
}

// Cyclic Jacobi eigensolver for a symmetric matrix. Returns eigenvectors as
// columns of q.
void jacobi_eigen(Matrix m, Matrix& q, std::vector<double>& lambda) {
  const int n = m.rows;
  q = Matrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int r = p + 1; r < n; ++r) {
        if (m(p, r) == 0.0) continue;
        const double theta = 0.5 * (m(r, r) - m(p, p)) / m(p, r);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkr = m(k, r);
          m(k, p) = c * mkp - s * mkr;
          m(k, r) = s * mkp + c * mkr;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = m(p, k), mrk = m(r, k);
          m(p, k) = c * mpk - s * mrk;
          m(r, k) = s * mpk + c * mrk;
        }
        for (int k = 0; k < n; ++k) {
          const double qkp = q(k, p), qkr = q(k, r);
          q(k, p) = c * qkp - s * qkr;
          q(k, r) = s * qkp + c * qkr;
        }
      }
    }
  }
  lambda.resize(n);
  for (int i = 0; i < n; ++i) lambda[i] = m(i, i);
}

}  // namespace

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

StencilWeights::StencilWeights(int dim, double h,
                               std::vector<StencilEntry> entries,
                               double tail_mass, TailPolicy policy)
    : dim_(dim), h_(h), entries_(std::move(entries)), tail_mass_(tail_mass),
      tail_policy_(policy) {
  if (dim_ < 1) throw std::invalid_argument("StencilWeights: dim must be >= 1");
  if (!(h_ > 0.0)) throw std::invalid_argument("StencilWeights: h must be > 0");
  if (tail_mass_ < 0.0)
    throw std::invalid_argument("StencilWeights: negative tail mass");

  std::map<std::vector<int>, double> table;
  for (auto& e : entries_) {
    if (static_cast<int>(e.offset.size()) != dim_)
      throw std::invalid_argument("StencilWeights: offset dimension mismatch");
    if (is_zero(e.offset))
      throw std::invalid_argument("StencilWeights: zero offset not allowed");
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument("StencilWeights: weights must be finite and >= 0");
    table[e.offset] += e.weight;
  }
  for (const auto& [off, w] : table) {
    auto it = table.find(negate(off));
    if (it == table.end() || it->second != w)
      throw std::invalid_argument("StencilWeights: weight table is not symmetric");
  }
  entries_.clear();
  entries_.reserve(table.size());
  CompensatedSum total;
  for (auto& [off, w] : table) {
    if (w == 0.0) continue;
    entries_.push_back({off, w});
    total.add(w);
  }
  total_weight_ = total.value();
  if (!std::isfinite(total_weight_))
    throw std::invalid_argument("StencilWeights: infinite total weight");
}

double StencilWeights::effective_weight() const {
  return tail_policy_ == TailPolicy::kAbsorb ? total_weight_ + tail_mass_
                                             : total_weight_;
}

StencilWeights StencilWeights::sum(const StencilWeights& a, const StencilWeights& b) {
  if (a.dim_ != b.dim_ || a.h_ != b.h_)
    throw std::invalid_argument("StencilWeights::sum: lattice mismatch");
  if (a.tail_policy_ != b.tail_policy_)
    throw std::invalid_argument("StencilWeights::sum: tail policy mismatch");
  std::vector<StencilEntry> entries = a.entries_;
  entries.insert(entries.end(), b.entries_.begin(), b.entries_.end());
  return StencilWeights(a.dim_, a.h_, std::move(entries),
                        a.tail_mass_ + b.tail_mass_, a.tail_policy_);
}

StencilWeights assemble_local(const Matrix& sigma, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("assemble_local: h must be > 0");
  const int dim = sigma.rows;
  std::vector<StencilEntry> entries;
  const double w = 1.0 / (h * h);
  for (int j = 0; j < sigma.cols; ++j) {
    std::vector<int> off(dim);
    for (int i = 0; i < dim; ++i) {
      const double v = sigma(i, j);
      const double r = std::round(v);
      if (std::abs(v - r) > 1e-9)
        throw std::invalid_argument("not grid-compatible; apply grid_normalize");
      off[i] = static_cast<int>(r);
    }
    if (is_zero(off)) continue;  // degenerate column, operator contribution 0
    entries.push_back({off, w});
    entries.push_back({negate(off), w});
  }
  return StencilWeights(dim, h, std::move(entries));
}

GridTransform grid_normalize(const Matrix& sigma) {
  const int n = sigma.rows;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < sigma.cols; ++k) s += sigma(i, k) * sigma(j, k);
      m(i, j) = s;
    }
  Matrix q;
  std::vector<double> lambda;
  jacobi_eigen(m, q, lambda);

  // Sort eigenpairs descending so the positive block leads.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lambda[a] > lambda[b]; });

  GridTransform t;
  t.transform = Matrix(n, n);
  t.i0_diag.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const double lam = lambda[order[i]];
    const bool positive = lam > 1e-12;
    if (positive) {
      t.i0_diag[i] = 1;
      ++t.rank;
    }
    const double scale = positive ? 1.0 / std::sqrt(lam) : 1.0;
    // Row i of A is the (scaled) eigenvector: A = J Q^T.
    for (int j = 0; j < n; ++j) t.transform(i, j) = scale * q(j, order[i]);
  }
  return t;
}

StencilWeights assemble_nonlocal(const LevyMeasure& measure, double h,
                                 double r_cut, TailPolicy policy) {
  if (!(h > 0.0)) throw std::invalid_argument("assemble_nonlocal: h must be > 0");
  if (r_cut < h)
    throw std::invalid_argument("assemble_nonlocal: r_cut must be >= h");
  const int dim = measure.dim();
  const int reach = static_cast<int>(std::floor(r_cut / h + 1e-12));
  const double r2_cut = (r_cut / h) * (r_cut / h) * (1.0 + 1e-14);

  std::vector<StencilEntry> entries;
  std::vector<int> alpha(dim, -reach);
  std::vector<double> center(dim);
  while (true) {
    // Evaluate only the lexicographically positive half and mirror, so the
    // symmetry w_alpha = w_{-alpha} holds bit-exactly.
    bool positive = false;
    double a2 = 0.0;
    for (int k = 0; k < dim; ++k) a2 += double(alpha[k]) * alpha[k];
    for (int k = 0; k < dim; ++k) {
      if (alpha[k] > 0) { positive = true; break; }
      if (alpha[k] < 0) break;
    }
    if (positive && a2 <= r2_cut) {
      for (int k = 0; k < dim; ++k) center[k] = h * alpha[k];
      const double w = measure.cell_mass(Cell::centered(center, h));
      if (w > 0.0) {
        entries.push_back({alpha, w});
        entries.push_back({negate(alpha), w});
      }
    }
    int k = dim - 1;
    for (; k >= 0; --k) {
      if (++alpha[k] <= reach) break;
      alpha[k] = -reach;
    }
    if (k < 0) break;
  }
  const double tail = measure.mass_outside(r_cut + 0.5 * h);
  return StencilWeights(dim, h, std::move(entries), tail, policy);
}

GridFunction apply(const StencilWeights& weights, const GridFunction& u) {
  if (weights.dim() != u.dim() || weights.h() != u.h())
    throw std::invalid_argument("apply: stencil/grid mismatch");
  GridFunction out(u.h(), u.box(), u.boundary());
  const double absorb = weights.tail_policy() == TailPolicy::kAbsorb
                            ? weights.tail_mass()
                            : 0.0;
  const std::int64_t n = u.size();
  for (std::int64_t i = 0; i < n; ++i) {
    CompensatedSum acc;
    const double ui = u[i];
    for (const auto& e : weights.entries())
      acc.add(e.weight * (u.shifted_value(i, e.offset) - ui));
    if (absorb != 0.0) acc.add(-absorb * ui);
    out[i] = acc.value();
  }
  return out;
}

double symbol(const StencilWeights& weights, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != weights.dim())
    throw std::invalid_argument("symbol: frequency dimension mismatch");
  const double h = weights.h();
  double s = 0.0;
  for (const auto& e : weights.entries()) {
    double phase = 0.0;
    for (int k = 0; k < weights.dim(); ++k) phase += h * e.offset[k] * xi[k];
    s += e.weight * (1.0 - std::cos(phase));
  }
  return s;
}

double consistency_error(const StencilWeights& weights, const ScalarField& psi,
                         const ScalarField& exact_image, const GridBox& eval_box) {
  if (eval_box.dim() != weights.dim())
    throw std::invalid_argument("consistency_error: dimension mismatch");
  const double h = weights.h();
  const double absorb = weights.tail_policy() == TailPolicy::kAbsorb
                            ? weights.tail_mass()
                            : 0.0;
  std::vector<int> idx = eval_box.lo;
  std::vector<double> x(eval_box.dim()), y(eval_box.dim());
  CompensatedSum err;
  for (std::int64_t count = eval_box.volume(); count > 0; --count) {
    for (int k = 0; k < eval_box.dim(); ++k) x[k] = h * idx[k];
    const double center = psi(x);
    CompensatedSum lh;
    for (const auto& e : weights.entries()) {
      for (int k = 0; k < eval_box.dim(); ++k) y[k] = x[k] + h * e.offset[k];
      lh.add(e.weight * (psi(y) - center));
    }
    if (absorb != 0.0) lh.add(-absorb * center);
    err.add(std::abs(lh.value() - exact_image(x)));
    for (int k = eval_box.dim() - 1; k >= 0; --k) {
      if (++idx[k] <= eval_box.hi[k]) break;
      idx[k] = eval_box.lo[k];
    }
  }
  return err.value() * std::pow(h, eval_box.dim());
}

}  // namespace nlpm
