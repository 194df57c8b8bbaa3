#include "nlpm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace nlpm {
namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1,1]; nodes are the
// nonnegative half, symmetric completion is done in the evaluation loop.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
// 7-point Gauss weights matching nodes 1,3,5,7 above.
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0, gauss = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double dx = half * kXgk[j];
    const double fl = f(c - dx);
    const double fr = (j == 7) ? fl : f(c + dx);
    const double fsum = (j == 7) ? fl : fl + fr;
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;  // j==7 is the shared center
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod * half;
  const double diff = std::abs(kronrod - gauss) * half;
  // Standard QUADPACK-style error sharpening.
  p.error = diff;
  return p;
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, double rel_tol,
                     double abs_tol, int max_subdivisions) {
  QuadResult r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  std::priority_queue<Panel> queue;
  Panel p0 = evaluate_panel(f, a, b);
  double total = p0.value;
  double err = p0.error;
  queue.push(p0);
  int n = 1;
  while (err > rel_tol * std::abs(total) + abs_tol && n < max_subdivisions) {
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval exhausted by fp
      queue.push(Panel{worst.a, worst.b, worst.value, 0.0});
      continue;
    }
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++n;
  }
  r.value = total;
  r.error = err;
  r.converged = err <= rel_tol * std::abs(total) + abs_tol ||
                err <= 1e-15 * std::abs(total);
  return r;
}

QuadResult integrate_to_zero(const Integrand& f, double b, double rel_tol) {
  QuadResult r;
  if (b <= 0.0) throw std::invalid_argument("integrate_to_zero: b must be positive");
  double hi = b;
  double total = 0.0;
  double err = 0.0;
  for (int k = 0; k < 900; ++k) {
    const double lo = hi * 0.5;
    QuadResult panel = integrate(f, lo, hi, 0.1 * rel_tol, 0.0, 200);
    total += panel.value;
    err += panel.error;
    if (!std::isfinite(panel.value) || !std::isfinite(total)) break;
    const double scale = std::min(std::max(std::abs(total), 1e-300), 1e300);
    if (std::abs(panel.value) <= 0.25 * rel_tol * scale && k >= 8) {
      // Remaining panels are bounded by a geometric tail of the last one as
      // soon as contributions decay; require two consecutive small panels.
      const double lo2 = lo * 0.5;
      QuadResult next = integrate(f, lo2, lo, 0.1 * rel_tol, 0.0, 200);
      total += next.value;
      err += next.error;
      if (std::abs(next.value) <= 0.25 * rel_tol * scale &&
          std::isfinite(total)) {
        r.value = total;
        r.error = err + std::abs(next.value);
        r.converged = true;
        return r;
      }
    }
    hi = lo;
  }
  r.value = total;
  r.error = INFINITY;
  r.converged = false;  // divergent or pathologically slow
  return r;
}

QuadResult integrate_to_infinity(const Integrand& f, double a, double rel_tol) {
  QuadResult r;
  if (a <= 0.0) throw std::invalid_argument("integrate_to_infinity: a must be positive");
  double lo = a;
  double total = 0.0;
  double err = 0.0;
  for (int k = 0; k < 900; ++k) {
    const double hi = lo * 2.0;
    QuadResult panel = integrate(f, lo, hi, 0.1 * rel_tol, 0.0, 200);
    total += panel.value;
    err += panel.error;
    if (!std::isfinite(panel.value) || !std::isfinite(total)) break;
    const double scale = std::min(std::max(std::abs(total), 1e-300), 1e300);
    if (std::abs(panel.value) <= 0.25 * rel_tol * scale && k >= 8) {
      const double hi2 = hi * 2.0;
      QuadResult next = integrate(f, hi, hi2, 0.1 * rel_tol, 0.0, 200);
      total += next.value;
      err += next.error;
      if (std::abs(next.value) <= 0.25 * rel_tol * scale &&
          std::isfinite(total)) {
        r.value = total;
        r.error = err + std::abs(next.value);
        r.converged = true;
        return r;
      }
      lo = hi2;
      continue;
    }
    lo = hi;
  }
  r.value = total;
  r.error = INFINITY;
  r.converged = false;
  return r;
}

QuadResult integrate_box(const std::function<double(const std::vector<double>&)>& f,
                         const std::vector<double>& lo, const std::vector<double>& hi,
                         double rel_tol) {
  if (lo.size() != hi.size() || lo.empty())
    throw std::invalid_argument("integrate_box: inconsistent bounds");
  const int dim = static_cast<int>(lo.size());
  std::vector<double> point(dim, 0.0);
  bool ok = true;

  // Recursive tensorization: axis k integrates the (k+1..N-1) inner integral.
  std::function<double(int)> inner = [&](int axis) -> double {
    if (axis == dim) return f(point);
    Integrand g = [&, axis](double t) {
      point[axis] = t;
      return inner(axis + 1);
    };
    // Inner integrals get a slightly tighter tolerance.
    const double tol = rel_tol * (axis == 0 ? 1.0 : 0.3);
    QuadResult q = integrate(g, lo[axis], hi[axis], tol);
    ok = ok && q.converged;
    return q.value;
  };

  QuadResult r;
  r.value = inner(0);
  r.converged = ok;
  r.error = std::abs(r.value) * rel_tol;
  return r;
}

}  // namespace nlpm
