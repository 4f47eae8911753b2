#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "levyq/core.hpp"
#include "levyq/distributions.hpp"
#include "levyq/levy_core.hpp"

namespace levyq {

struct Certificate {
  bool weights_optimal = false;    // every CDF-side ell within the level
  bool locations_optimal = false;  // every quantile-side ell within the level
};

struct SolverStats {
  int bisection_iterations = 0;
  int feasibility_calls = 0;
};

struct ApproxResult {
  AtomicMeasure measure;
  double error = 0;
  double epsilon = 1;
  Certificate certificate;
  SolverStats stats;
};

struct SolverOptions {
  Tolerances tol;
  // Replay the optimality conditions and recompute the distance from
  // scratch before returning. Sweeps over many n may switch this off.
  bool self_check = true;
};

/// Re-evaluates both families of optimality conditions at `level`.
inline Certificate certify(const Distribution& mu, const AtomicMeasure& nu, double eps, double level,
                           double slack = 1e-8) {
  const std::size_t n = nu.n();
  const auto& x = nu.x();
  const auto& P = nu.P();
  Certificate c{true, true};
  const ScaledCdf Fe{&mu, 1 / eps};
  for (std::size_t j = 0; j <= n && c.weights_optimal; ++j) {
    const double a = j == 0 ? -kInf : x[j - 1];
    const double b = j == n ? kInf : x[j];
    if (eps * ell(Fe, {a, b}, P[j] / eps) > level + slack) c.weights_optimal = false;
  }
  const ScaledQuantile ge{&mu, eps};
  for (std::size_t j = 1; j <= n && c.locations_optimal; ++j) {
    if (ell(ge, {P[j - 1], P[j]}, eps * x[j - 1]) > level + slack) c.locations_optimal = false;
  }
  return c;
}

namespace detail {

// Locations inside each quantile-side window at `level`; ties resolved by
// the window midpoint, unbounded windows by their finite end.
inline std::vector<double> place_atoms(const Distribution& mu, const std::vector<double>& P, double eps,
                                       double level) {
  const std::size_t n = P.size() - 1;
  std::vector<double> x(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double lo = mu.quantile_left(P[j] - level) - level / eps;
    const double hi = mu.quantile(P[j - 1] + level) + level / eps;
    double v;
    if (std::isfinite(lo) && std::isfinite(hi))
      v = 0.5 * (lo + hi);
    else if (std::isfinite(lo))
      v = lo;
    else if (std::isfinite(hi))
      v = hi;
    else
      v = mu.quantile(0.5 * (P[j - 1] + P[j]));
    if (!std::isfinite(v)) throw IntegrityError("place_atoms: no finite location available");
    if (j > 1) v = std::max(v, x[j - 2]);
    x[j - 1] = v;
  }
  return x;
}

inline void self_check(const Distribution& mu, ApproxResult& r, const SolverOptions& opt, const char* who) {
  r.certificate = certify(mu, r.measure, r.epsilon, r.error, opt.tol.certificate);
  if (!r.certificate.weights_optimal || !r.certificate.locations_optimal)
    throw IntegrityError(std::string(who) + ": optimality certificate failed");
  const double d = distance_to_atomic(mu, r.measure, r.epsilon);
  if (std::abs(d - r.error) > opt.tol.certificate)
    throw IntegrityError(std::string(who) + ": recomputed distance " + std::to_string(d) +
                         " differs from the solver error " + std::to_string(r.error));
}

}  // namespace detail

/// Best weights for fixed sorted locations x.
inline ApproxResult best_weights_given_locations(const Distribution& mu, std::vector<double> x, double eps,
                                                 const SolverOptions& opt = {}) {
  if (x.empty()) throw std::invalid_argument("best_weights_given_locations: need n >= 1");
  if (!(eps > 0)) throw std::invalid_argument("best_weights_given_locations: eps must be positive");
  if (!std::is_sorted(x.begin(), x.end())) throw std::invalid_argument("best_weights_given_locations: x must be sorted");
  const std::size_t n = x.size();
  const ScaledCdf Fe{&mu, 1 / eps};
  const double tol = opt.tol.bisection;
  double L = std::max(ell(Fe, {-kInf, x.front()}, 0.0, tol), ell(Fe, {x.back(), kInf}, 1 / eps, tol));
  for (std::size_t j = 0; j + 1 < n; ++j) L = std::max(L, ell_star(Fe, {x[j], x[j + 1]}, tol));
  L *= eps;
  std::vector<double> P(n + 1, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    const double lo = std::max(mu.cdf_left(x[j] - L / eps) - L, P[j - 1]);
    const double hi = std::min(mu.cdf(x[j - 1] + L / eps) + L, 1.0);
    P[j] = clamp01(lo <= hi ? 0.5 * (lo + hi) : std::max(lo, P[j - 1]));
  }
  P[n] = 1;
  ApproxResult r;
  r.measure = AtomicMeasure::from_cumulative(std::move(x), std::move(P));
  r.error = L;
  r.epsilon = eps;
  r.stats.feasibility_calls = static_cast<int>(n) + 1;
  if (opt.self_check) detail::self_check(mu, r, opt, "best_weights_given_locations");
  return r;
}

/// Best locations for fixed cumulative weights P (P[0] = 0, P[n] = 1).
inline ApproxResult best_locations_given_cumulative(const Distribution& mu, std::vector<double> P, double eps,
                                                    const SolverOptions& opt = {}) {
  if (P.size() < 2) throw std::invalid_argument("best_locations_given_weights: need n >= 1");
  if (!(eps > 0)) throw std::invalid_argument("best_locations_given_weights: eps must be positive");
  const std::size_t n = P.size() - 1;
  const ScaledQuantile ge{&mu, eps};
  double L = 0;
  for (std::size_t j = 1; j <= n; ++j) L = std::max(L, ell_star(ge, {P[j - 1], P[j]}, opt.tol.bisection));
  ApproxResult r;
  auto x = detail::place_atoms(mu, P, eps, L);
  r.measure = AtomicMeasure::from_cumulative(std::move(x), std::move(P));
  r.error = L;
  r.epsilon = eps;
  r.stats.feasibility_calls = static_cast<int>(n);
  if (opt.self_check) detail::self_check(mu, r, opt, "best_locations_given_weights");
  return r;
}

inline ApproxResult best_locations_given_weights(const Distribution& mu, const std::vector<double>& p, double eps,
                                                 const SolverOptions& opt = {}) {
  // Reuse the validation and renormalization of AtomicMeasure.
  auto m = AtomicMeasure::from_weights(std::vector<double>(p.size(), 0.0), p);
  return best_locations_given_cumulative(mu, m.P(), eps, opt);
}

/// Best approximation with equal weights 1/n.
inline ApproxResult best_uniform(const Distribution& mu, std::size_t n, double eps, const SolverOptions& opt = {}) {
  if (n < 1) throw std::invalid_argument("best_uniform: need n >= 1");
  std::vector<double> P(n + 1);
  for (std::size_t j = 0; j <= n; ++j) P[j] = static_cast<double>(j) / static_cast<double>(n);
  return best_locations_given_cumulative(mu, std::move(P), eps, opt);
}

namespace detail {

// Greedy covering at level l: P_j is the largest P <= 1 with
// ell_star(eps g, [P_{j-1}, P]) <= l, i.e. eps g_-(P - l) <= eps g(P_{j-1} + l) + 2l.
// By the Galois property g_-(u) <= c iff u <= F(c), so P_j = F(c) + l with
// c = g(P_{j-1} + l) + 2l/eps.
inline bool greedy_cover(const Distribution& mu, std::size_t n, double eps, double l, std::vector<double>* P) {
  double prev = 0;
  if (P) P->assign(1, 0.0);
  for (std::size_t j = 1; j <= n; ++j) {
    const double c = mu.quantile(prev + l) + 2 * l / eps;
    double next = c == kInf ? 1.0 : std::min(1.0, mu.cdf(c) + l);
    next = std::max(next, prev);
    if (P) P->push_back(next);
    if (next >= 1) {
      if (P) {
        P->back() = 1;
        P->resize(n + 1, 1.0);
      }
      return true;
    }
    prev = next;
  }
  return false;
}

}  // namespace detail

/// Best approximation over all n-atom measures.
inline ApproxResult best_unconstrained(const Distribution& mu, std::size_t n, double eps,
                                       const SolverOptions& opt = {}) {
  if (n < 1) throw std::invalid_argument("best_unconstrained: need n >= 1");
  if (!(eps > 0)) throw std::invalid_argument("best_unconstrained: eps must be positive");
  ApproxResult r;
  r.epsilon = eps;
  double hi = 0;
  if (!detail::greedy_cover(mu, n, eps, 0.0, nullptr)) {
    ++r.stats.feasibility_calls;
    double lo = 0;
    hi = 0.5;
    ++r.stats.feasibility_calls;
    if (!detail::greedy_cover(mu, n, eps, hi, nullptr))
      throw IntegrityError("best_unconstrained: level 1/2 infeasible");
    while (hi - lo > opt.tol.level) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      ++r.stats.bisection_iterations;
      ++r.stats.feasibility_calls;
      (detail::greedy_cover(mu, n, eps, mid, nullptr) ? hi : lo) = mid;
    }
  }
  std::vector<double> P;
  detail::greedy_cover(mu, n, eps, hi, &P);
  auto x = detail::place_atoms(mu, P, eps, hi);
  r.measure = AtomicMeasure::from_cumulative(std::move(x), std::move(P));
  r.error = hi;
  if (opt.self_check) detail::self_check(mu, r, opt, "best_unconstrained");
  return r;
}

}  // namespace levyq
