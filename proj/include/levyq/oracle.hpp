#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "levyq/asymptotics.hpp"
#include "levyq/core.hpp"
#include "levyq/distributions.hpp"
#include "levyq/levy_core.hpp"

namespace levyq {

struct GridConfig {
  double x_min = 0;
  double x_max = 1;
  double x_resolution = 1e-4;
  double p_resolution = 1e-4;
  std::size_t max_candidates = 10000000;
  unsigned threads = 1;
};

/// Grid covering the bulk of the measure, padded by one unit on each side.
inline GridConfig default_grid(const Distribution& mu, double x_resolution, double p_resolution) {
  GridConfig cfg;
  double lo = mu.support_min(), hi = mu.support_max();
  if (!std::isfinite(lo)) lo = mu.quantile(1e-6);
  if (!std::isfinite(hi)) hi = mu.quantile(1 - 1e-6);
  cfg.x_min = lo - 1;
  cfg.x_max = hi + 1;
  cfg.x_resolution = x_resolution;
  cfg.p_resolution = p_resolution;
  return cfg;
}

struct OracleResult {
  AtomicMeasure measure;
  double error = kInf;
  std::size_t candidates = 0;
  bool exhaustive = false;
};

namespace detail {

// Regular grid plus the atoms of the measure, so exact atoms are candidates.
inline std::vector<double> make_grid(const GridConfig& cfg, const Distribution& mu) {
  if (!(cfg.x_resolution > 0) || !(cfg.p_resolution > 0))
    throw std::invalid_argument("GridConfig: resolutions must be positive");
  if (!(cfg.x_max > cfg.x_min)) throw std::invalid_argument("GridConfig: empty x-range");
  const double steps = std::ceil((cfg.x_max - cfg.x_min) / cfg.x_resolution);
  std::vector<double> g(static_cast<std::size_t>(steps) + 1);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = cfg.x_min + static_cast<double>(i) * cfg.x_resolution;
  const double top = g.back();
  if (auto atoms = mu.atoms()) {
    for (const auto& [a, w] : *atoms)
      if (a >= cfg.x_min && a <= top) g.push_back(a);
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

inline double binom(double n, double k) {
  double r = 1;
  for (int i = 1; i <= static_cast<int>(k); ++i) r = r * (n - k + i) / i;
  return r;
}

// Compositions of m into n non-negative parts, as cumulative sums.
inline void for_each_composition(int m, int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cum(n + 1, 0);
  cum[n] = m;
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      visit(cum);
      return;
    }
    for (int v = cum[j - 1]; v <= m; ++v) {
      cum[j] = v;
      rec(j + 1);
    }
  };
  if (n == 1)
    visit(cum);
  else
    rec(1);
}

// Greedy left-to-right placement on the grid at level y, using only the
// definition of the metric against a step CDF: on [x_j, x_{j+1}) the
// value P_j must satisfy F_-(x_{j+1} - y/eps) - y <= P_j <= F(x_j + y/eps) + y.
inline bool grid_greedy(const Distribution& mu, const std::vector<double>& grid, std::size_t n, double eps,
                        double y, std::vector<double>* x, std::vector<double>* P) {
  const double s = y / eps;
  double prev_P = 0;
  std::size_t start = 0;
  if (x) x->clear();
  if (P) P->assign(1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    // Rightmost grid index i >= start with F_-(grid[i] - s) - y <= prev_P.
    auto ok = [&](std::size_t i) { return mu.cdf_left(grid[i] - s) - y <= prev_P; };
    if (!ok(start)) return false;
    std::size_t lo = start, hi = grid.size();
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      (ok(mid) ? lo : hi) = mid;
    }
    const double xj = grid[lo];
    const double Pj = std::min(1.0, mu.cdf(xj + s) + y);
    if (x) x->push_back(xj);
    if (P) P->push_back(Pj);
    if (Pj >= 1) {
      if (P) {
        P->back() = 1;
        P->resize(n + 1, 1.0);
      }
      if (x) x->resize(n, xj);
      return true;
    }
    prev_P = Pj;
    start = lo;
  }
  return false;
}

}  // namespace detail

/// Exhaustive scan over sorted x-grid tuples and the p-simplex grid; every
/// candidate is scored by distance_general. Ties go to the lexicographically
/// smallest (x, P).
inline OracleResult brute_force_exhaustive(const Distribution& mu, std::size_t n, double eps, const GridConfig& cfg) {
  if (n < 1 || n > 3) throw std::invalid_argument("brute_force: n must be in 1..3");
  const auto grid = detail::make_grid(cfg, mu);
  const int m = static_cast<int>(std::ceil(1 / cfg.p_resolution - 1e-9));
  const double count =
      detail::binom(static_cast<double>(grid.size() + n - 1), static_cast<double>(n)) *
      detail::binom(static_cast<double>(m + n - 1), static_cast<double>(n - 1));
  if (count > static_cast<double>(cfg.max_candidates))
    throw std::invalid_argument("brute_force: candidate cap exceeded (" + std::to_string(count) + ")");
  const MonotoneMap F = mu.cdf_map();
  std::vector<std::vector<double>> cum_weights;
  detail::for_each_composition(m, static_cast<int>(n), [&](const std::vector<int>& c) {
    std::vector<double> P(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) P[i] = static_cast<double>(c[i]) / m;
    P.back() = 1;
    cum_weights.push_back(std::move(P));
  });

  struct Best {
    double err = kInf;
    std::vector<double> x, P;
    std::size_t count = 0;
  };
  auto better = [](double e, const std::vector<double>& x, const std::vector<double>& P, const Best& b) {
    if (e != b.err) return e < b.err;
    if (x != b.x) return x < b.x;
    return P < b.P;
  };
  auto scan = [&](std::size_t first_lo, std::size_t first_hi, Best& best) {
    std::vector<std::size_t> idx(n);
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (j == n) {
        std::vector<double> x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = grid[idx[k]];
        for (const auto& P : cum_weights) {
          const auto nu = AtomicMeasure::from_cumulative(x, P);
          const double e = distance_general(F, nu.cdf_map(), eps);
          ++best.count;
          if (better(e, x, P, best)) best = {e, x, P, best.count};
        }
        return;
      }
      const std::size_t from = j == 0 ? first_lo : idx[j - 1];
      const std::size_t to = j == 0 ? first_hi : grid.size();
      for (std::size_t i = from; i < to; ++i) {
        idx[j] = i;
        rec(j + 1);
      }
    };
    rec(0);
  };

  const unsigned threads = std::max(1u, cfg.threads);
  std::vector<Best> partial(threads);
  if (threads == 1) {
    scan(0, grid.size(), partial[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        // Interleaved blocks balance the triangular workload.
        for (std::size_t b = t; b * 64 < grid.size(); b += threads)
          scan(b * 64, std::min(grid.size(), (b + 1) * 64), partial[t]);
      });
    }
    for (auto& th : pool) th.join();
  }
  Best best;
  for (const auto& p : partial) {
    best.count += p.count;
    if (!p.x.empty() && better(p.err, p.x, p.P, best)) {
      const auto c = best.count;
      best = p;
      best.count = c;
    }
  }
  OracleResult r;
  r.measure = AtomicMeasure::from_cumulative(best.x, best.P);
  r.error = best.err;
  r.candidates = best.count;
  r.exhaustive = true;
  return r;
}

/// Best n-atom approximation with locations restricted to the x-grid and
/// arbitrary weights. The level is found by bisection over a greedy grid
/// placement that relies on the metric definition alone; the returned
/// measure is rescored with distance_general.
inline OracleResult brute_force_grid(const Distribution& mu, std::size_t n, double eps, const GridConfig& cfg) {
  if (n < 1 || n > 3) throw std::invalid_argument("brute_force: n must be in 1..3");
  if (!(eps > 0)) throw std::invalid_argument("brute_force: eps must be positive");
  const auto grid = detail::make_grid(cfg, mu);
  double lo = 0, hi = 1;
  if (!detail::grid_greedy(mu, grid, n, eps, hi, nullptr, nullptr))
    throw IntegrityError("brute_force: level 1 infeasible on the grid");
  std::size_t calls = 1;
  if (detail::grid_greedy(mu, grid, n, eps, 0, nullptr, nullptr)) hi = 0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    ++calls;
    (detail::grid_greedy(mu, grid, n, eps, mid, nullptr, nullptr) ? hi : lo) = mid;
  }
  std::vector<double> x, P;
  detail::grid_greedy(mu, grid, n, eps, hi, &x, &P);
  OracleResult r;
  r.measure = AtomicMeasure::from_cumulative(std::move(x), std::move(P));
  r.error = distance_general(mu.cdf_map(), r.measure.cdf_map(), eps);
  r.candidates = calls * n * static_cast<std::size_t>(std::log2(static_cast<double>(grid.size())) + 1);
  return r;
}

/// Exhaustive scan when the candidate count fits the cap, grid search otherwise.
inline OracleResult brute_force_best(const Distribution& mu, std::size_t n, double eps, const GridConfig& cfg) {
  const double gx = std::ceil((cfg.x_max - cfg.x_min) / cfg.x_resolution) + 1;
  const double m = std::ceil(1 / cfg.p_resolution - 1e-9);
  const double count = detail::binom(gx + static_cast<double>(n) - 1, static_cast<double>(n)) *
                       detail::binom(m + static_cast<double>(n) - 1, static_cast<double>(n) - 1);
  if (n >= 1 && n <= 3 && count <= static_cast<double>(cfg.max_candidates))
    return brute_force_exhaustive(mu, n, eps, cfg);
  return brute_force_grid(mu, n, eps, cfg);
}

struct PointCheck {
  std::size_t n;
  double deviation;
};

/// Largest gap between the fraction of atoms in (-inf, x] (or (-inf, x)) and
/// the point-density mass of the same half-line, over x at the 1000
/// quantiles k/1001 of the measure.
inline PointCheck empirical_point_check(const std::vector<double>& atoms, const Distribution& mu, double eps) {
  const PointDensity pd(mu, eps);
  std::vector<double> xs = atoms;
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double dev = 0;
  for (int k = 1; k <= 1000; ++k) {
    const double x = mu.quantile(k / 1001.0);
    const double m = pd.cdf(x);
    const double le = static_cast<double>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) / n;
    const double lt = static_cast<double>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin()) / n;
    dev = std::max({dev, std::abs(le - m), std::abs(lt - m)});
  }
  return {xs.size(), dev};
}

/// #{j : x_{n,j} <= x} for the best approximation of exp(a), from its level
/// ell: the floor of n - eps/(2 a ell) log(1 + (e^{-a(x + ell/eps)}/ell - 1) tanh(a ell/eps)).
inline long exp_atom_count(std::size_t n, double x, double a, double eps, double ell) {
  const double inner = 1 + (std::exp(-a * (x + ell / eps)) / ell - 1) * std::tanh(a * ell / eps);
  const double v = static_cast<double>(n) - eps / (2 * a * ell) * std::log(inner);
  return static_cast<long>(std::floor(v));
}

}  // namespace levyq
