#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "levyq/core.hpp"

namespace levyq {

struct QuadResult {
  double value = 0;
  double error = 0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b, int& evals) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  evals += 15;
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 7/15 on a finite interval. Subdivides the panel
/// with the largest error estimate until the total estimate drops below
/// max(abs_tol, rel_tol * |value|) or the panel budget runs out.
template <class F>
QuadResult integrate(F f, double a, double b, double abs_tol = 1e-13, double rel_tol = 1e-12,
                     int max_panels = 20000) {
  QuadResult r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  std::priority_queue<detail::Panel> heap;
  auto first = detail::gk15(f, a, b, r.evaluations);
  double value = first.value, error = first.error;
  heap.push(first);
  int panels = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) && panels < max_panels) {
    auto worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {
      // Cannot split further; accept the panel as is.
      heap.push({worst.a, worst.b, worst.value, 0.0});
      error -= worst.error;
      continue;
    }
    auto left = detail::gk15(f, worst.a, m, r.evaluations);
    auto right = detail::gk15(f, m, worst.b, r.evaluations);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to shed accumulated rounding from the incremental updates.
  double v = 0, e = 0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  r.value = v;
  r.error = e;
  r.converged = e <= std::max(abs_tol, rel_tol * std::abs(v)) * 10;
  return r;
}

/// Integral over [c, +inf) via x = c - 1 + w^{-4}, w in (0, 1]. The quartic
/// map keeps algebraically decaying tails smooth near w = 0.
template <class F>
QuadResult integrate_upper(F f, double c, double abs_tol = 1e-13, double rel_tol = 1e-12) {
  auto g = [&](double w) {
    if (w <= 0) return 0.0;
    const double w2 = w * w;
    const double x = c - 1 + 1 / (w2 * w2);
    const double v = f(x);
    return v == 0 ? 0.0 : v * 4 / (w2 * w2 * w);
  };
  return integrate(g, 0.0, 1.0, abs_tol, rel_tol);
}

/// Integral over (-inf, c] by reflection.
template <class F>
QuadResult integrate_lower(F f, double c, double abs_tol = 1e-13, double rel_tol = 1e-12) {
  return integrate_upper([&](double x) { return f(-x); }, -c, abs_tol, rel_tol);
}

/// Sum of integrals over consecutive breakpoints (which may include +/-inf).
template <class F>
QuadResult integrate_pieces(F f, const std::vector<double>& breaks, double abs_tol = 1e-13,
                            double rel_tol = 1e-12) {
  QuadResult total;
  total.converged = true;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    if (!(a < b)) continue;
    QuadResult r;
    if (a == -kInf && b == kInf) {
      auto lo = integrate_lower(f, 0.0, abs_tol, rel_tol);
      auto hi = integrate_upper(f, 0.0, abs_tol, rel_tol);
      r = {lo.value + hi.value, lo.error + hi.error, lo.evaluations + hi.evaluations,
           lo.converged && hi.converged};
    } else if (a == -kInf) {
      r = integrate_lower(f, b, abs_tol, rel_tol);
    } else if (b == kInf) {
      r = integrate_upper(f, a, abs_tol, rel_tol);
    } else {
      r = integrate(f, a, b, abs_tol, rel_tol);
    }
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  return total;
}

}  // namespace levyq
