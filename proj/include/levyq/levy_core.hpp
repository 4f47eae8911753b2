#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "levyq/core.hpp"
#include "levyq/distributions.hpp"
#include "levyq/monotone_map.hpp"

namespace levyq {

/// Interval [lower, upper] of the extended real line.
struct IntervalX {
  double lower;
  double upper;
};

/// n-atom measure: locations x (non-decreasing), weights p, cumulative P
/// with P[0] = 0 and P[n] = 1 exactly.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;

  /// Weights must sum to 1 within `tol`; they are renormalized.
  static AtomicMeasure from_weights(std::vector<double> x, std::vector<double> p, double tol = 1e-9) {
    if (x.empty() || x.size() != p.size()) throw std::invalid_argument("AtomicMeasure: size mismatch");
    double total = 0;
    for (double w : p) {
      if (!(w >= 0) || !std::isfinite(w)) throw std::invalid_argument("AtomicMeasure: negative weight");
      total += w;
    }
    if (std::abs(total - 1) > tol) throw std::invalid_argument("AtomicMeasure: weights must sum to 1");
    std::vector<double> P(p.size() + 1, 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) P[j + 1] = std::min(1.0, P[j] + p[j] / total);
    P.back() = 1;
    return from_cumulative(std::move(x), std::move(P));
  }

  /// P has n + 1 entries, non-decreasing from 0 to 1.
  static AtomicMeasure from_cumulative(std::vector<double> x, std::vector<double> P) {
    if (x.empty() || P.size() != x.size() + 1) throw std::invalid_argument("AtomicMeasure: size mismatch");
    if (P.front() != 0 || P.back() != 1) throw std::invalid_argument("AtomicMeasure: P must run from 0 to 1");
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!std::isfinite(x[j])) throw std::invalid_argument("AtomicMeasure: locations must be finite");
      if (j > 0 && x[j] < x[j - 1]) throw std::invalid_argument("AtomicMeasure: locations must be sorted");
      if (P[j + 1] < P[j]) throw std::invalid_argument("AtomicMeasure: P must be non-decreasing");
    }
    AtomicMeasure m;
    m.x_ = std::move(x);
    m.P_ = std::move(P);
    return m;
  }

  /// Equal weights 1/n with P_j = j/n computed directly.
  static AtomicMeasure uniform_weights(std::vector<double> x) {
    const std::size_t n = x.size();
    std::vector<double> P(n + 1);
    for (std::size_t j = 0; j <= n; ++j) P[j] = static_cast<double>(j) / static_cast<double>(n);
    return from_cumulative(std::move(x), std::move(P));
  }

  std::size_t n() const { return x_.size(); }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& P() const { return P_; }
  std::vector<double> p() const {
    std::vector<double> w(n());
    for (std::size_t j = 0; j < n(); ++j) w[j] = P_[j + 1] - P_[j];
    return w;
  }

  AtomicMeasure dilate(double eps) const {
    AtomicMeasure m = *this;
    for (double& v : m.x_) v *= eps;
    return m;
  }

  /// Right-continuous step CDF.
  MonotoneMap cdf_map() const {
    std::vector<std::pair<double, double>> breaks;
    for (std::size_t j = 0; j < n(); ++j) breaks.push_back({x_[j], P_[j + 1]});
    return MonotoneMap::step(0.0, std::move(breaks));
  }

 private:
  std::vector<double> x_;
  std::vector<double> P_;
};

/// f / c for a CDF: the map x -> F(x) / eps.
struct ScaledCdf {
  const Distribution* dist;
  double factor;
  double operator()(double x) const { return factor * dist->cdf(x); }
  double left(double x) const { return factor * dist->cdf_left(x); }
};

/// eps * quantile.
struct ScaledQuantile {
  const Distribution* dist;
  double factor;
  double operator()(double t) const { return factor * dist->quantile(t); }
  double left(double t) const { return factor * dist->quantile_left(t); }
};

namespace detail {

// inf{y >= 0 : pred(y)} for a predicate that is monotone in y.
template <class Pred>
double bisect_feasible(Pred pred, double tol) {
  if (pred(0.0)) return 0;
  double lo = 0, hi = 1;
  int doublings = 0;
  while (!pred(hi)) {
    lo = hi;
    hi *= 2;
    if (++doublings > 1100) throw IntegrityError("ell: predicate never becomes feasible");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace detail

/// inf{y >= 0 : f_-(sup I - y) - y <= x <= f(inf I + y) + y}.
template <class F>
double ell(const F& f, IntervalX I, double x, double tol = 1e-12) {
  auto pred = [&](double y) { return f.left(I.upper - y) - y <= x && x <= f(I.lower + y) + y; };
  return detail::bisect_feasible(pred, tol);
}

/// inf{y >= 0 : f_-(sup I - y) - y <= f(inf I + y) + y}.
template <class F>
double ell_star(const F& f, IntervalX I, double tol = 1e-12) {
  auto pred = [&](double y) { return f.left(I.upper - y) - y <= f(I.lower + y) + y; };
  return detail::bisect_feasible(pred, tol);
}

struct EllStarInfo {
  double value;
  // The x-window at the returned level; min over x of ell is attained
  // (and equals ell_star) only if the window contains a real number.
  double window_lo;
  double window_hi;
  bool attained;
};

template <class F>
EllStarInfo ell_star_info(const F& f, IntervalX I, double tol = 1e-12) {
  const double y = ell_star(f, I, tol);
  const double a = f.left(I.upper - y) - y;
  const double b = f(I.lower + y) + y;
  const bool attained = a <= b && !(a == kInf) && !(b == -kInf);
  return {y, a, b, attained};
}

struct DistanceReport {
  double value;  // primal form
  double primal;
  double dual;
};

/// Exact distance between the measure and an atomic measure, by both the
/// CDF-side and quantile-side formulas; they must agree.
inline DistanceReport distance_to_atomic_report(const Distribution& mu, const AtomicMeasure& nu, double eps,
                                                double consistency = 1e-9) {
  if (!(eps > 0)) throw std::invalid_argument("distance_to_atomic: eps must be positive");
  const std::size_t n = nu.n();
  const auto& x = nu.x();
  const auto& P = nu.P();
  const ScaledCdf Fe{&mu, 1 / eps};
  double primal = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double a = j == 0 ? -kInf : x[j - 1];
    const double b = j == n ? kInf : x[j];
    primal = std::max(primal, eps * ell(Fe, {a, b}, P[j] / eps));
  }
  const ScaledQuantile ge{&mu, eps};
  double dual = 0;
  for (std::size_t j = 1; j <= n; ++j) dual = std::max(dual, ell(ge, {P[j - 1], P[j]}, eps * x[j - 1]));
  if (std::abs(primal - dual) > consistency)
    throw IntegrityError("distance_to_atomic: primal " + std::to_string(primal) + " and dual " +
                         std::to_string(dual) + " disagree");
  return {primal, primal, dual};
}

inline double distance_to_atomic(const Distribution& mu, const AtomicMeasure& nu, double eps) {
  return distance_to_atomic_report(mu, nu, eps).value;
}

namespace detail {

// Range outside of which a bounded monotone map is within `slack` of its
// limits; used only to place the fallback grid.
inline std::pair<double, double> active_range(const MonotoneMap& f) {
  double lo = -1, hi = 1;
  const double a = f.at_minus_inf(), b = f.at_plus_inf();
  auto near = [](double v, double lim) {
    return std::isinf(lim) ? false : std::abs(v - lim) <= 1e-12 * std::max(1.0, std::abs(lim));
  };
  for (int k = 0; k < 80 && !near(f(lo), a); ++k) lo *= 2;
  for (int k = 0; k < 80 && !near(f(hi), b); ++k) hi *= 2;
  return {lo, hi};
}

}  // namespace detail

/// Definition-level distance inf{y >= 0 : F_-(t - y/eps) - y <= G(t) <=
/// F(t + y/eps) + y for all t}. Exact when F or G is a step map; otherwise
/// the condition is checked on a grid of about 10^4 points as well.
inline double distance_general(const MonotoneMap& F, const MonotoneMap& G, double eps, double tol = 1e-13) {
  if (!(eps > 0)) throw std::invalid_argument("distance_general: eps must be positive");
  std::vector<double> fixed{-kInf, kInf};
  for (const auto& j : G.jumps()) fixed.push_back(j.at);
  std::vector<double> f_jumps;
  for (const auto& j : F.jumps()) f_jumps.push_back(j.at);
  if (!F.is_step() && !G.is_step()) {
    for (const auto& j : f_jumps) fixed.push_back(j);
    auto [lo1, hi1] = detail::active_range(F);
    auto [lo2, hi2] = detail::active_range(G);
    const double lo = std::min(lo1, lo2), hi = std::max(hi1, hi2);
    const int m = 10000;
    for (int i = 0; i <= m; ++i) fixed.push_back(lo + (hi - lo) * i / m);
  }
  auto feasible = [&](double y) {
    const double s = y / eps;
    auto check = [&](double t) {
      const double g = G(t), gl = G.left(t);
      return F.left(t - s) - y <= g && F(t - s) - y <= g && g <= F(t + s) + y && F.left(t - s) - y <= gl &&
             gl <= F.left(t + s) + y;
    };
    for (double t : fixed)
      if (!check(t)) return false;
    for (double a : f_jumps)
      if (!check(a + s) || !check(a - s)) return false;
    return true;
  };
  if (feasible(0)) return 0;
  double lo = 0, hi = 1;
  for (int k = 0; !feasible(hi); ++k) {
    lo = hi;
    hi *= 2;
    if (k > 200) return kInf;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace levyq
