#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "levyq/core.hpp"

namespace levyq {

/// A discontinuity of a monotone map: f_-(at) = left, f(at) = right.
struct Jump {
  double at;
  double left;
  double right;
};

/// Non-decreasing, right-continuous, extended-real valued map on the extended
/// reals. Evaluation at +/-inf returns the limits at +/-inf.
class MonotoneMap {
 public:
  using Fn = std::function<double(double)>;

  MonotoneMap(Fn eval, Fn eval_left, double at_minus_inf, double at_plus_inf,
              std::vector<Jump> jumps = {}, bool is_step = false)
      : eval_(std::move(eval)),
        eval_left_(std::move(eval_left)),
        lo_(at_minus_inf),
        hi_(at_plus_inf),
        jumps_(std::make_shared<const std::vector<Jump>>(std::move(jumps))),
        step_(is_step) {}

  double operator()(double x) const {
    if (x == -kInf) return lo_;
    if (x == kInf) return hi_;
    return eval_(x);
  }
  double left(double x) const {
    if (x == -kInf) return lo_;
    if (x == kInf) return hi_;
    return eval_left_(x);
  }

  double at_minus_inf() const { return lo_; }
  double at_plus_inf() const { return hi_; }
  const std::vector<Jump>& jumps() const { return *jumps_; }
  /// True when the map is piecewise constant with exactly the listed jumps.
  bool is_step() const { return step_; }

  static MonotoneMap identity() {
    auto id = [](double x) { return x; };
    return MonotoneMap(id, id, -kInf, kInf);
  }

  static MonotoneMap constant(double c) {
    auto k = [c](double) { return c; };
    return MonotoneMap(k, k, c, c, {}, true);
  }

  /// Right-continuous staircase: value `base` below breaks[0].first, and
  /// breaks[k].second on [breaks[k].first, breaks[k+1].first). Breaks are
  /// sorted by location; values must be non-decreasing.
  static MonotoneMap step(double base, std::vector<std::pair<double, double>> breaks) {
    std::stable_sort(breaks.begin(), breaks.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // Merge coincident locations, keeping the largest value.
    std::vector<std::pair<double, double>> merged;
    for (const auto& b : breaks) {
      if (!merged.empty() && merged.back().first == b.first)
        merged.back().second = std::max(merged.back().second, b.second);
      else
        merged.push_back(b);
    }
    std::vector<double> at, val;
    std::vector<Jump> jumps;
    double prev = base;
    for (const auto& [x, v] : merged) {
      if (v < prev) throw std::invalid_argument("MonotoneMap::step: values must be non-decreasing");
      if (v > prev) {
        at.push_back(x);
        val.push_back(v);
        jumps.push_back({x, prev, v});
      }
      prev = v;
    }
    auto data = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(at, val);
    auto eval = [data, base](double x) {
      const auto& [a, v] = *data;
      auto it = std::upper_bound(a.begin(), a.end(), x);
      return it == a.begin() ? base : v[static_cast<std::size_t>(it - a.begin()) - 1];
    };
    auto eval_left = [data, base](double x) {
      const auto& [a, v] = *data;
      auto it = std::lower_bound(a.begin(), a.end(), x);
      return it == a.begin() ? base : v[static_cast<std::size_t>(it - a.begin()) - 1];
    };
    return MonotoneMap(eval, eval_left, base, prev, std::move(jumps), true);
  }

  /// x -> c * f(x) for c > 0.
  MonotoneMap scaled(double c) const {
    if (!(c > 0)) throw std::invalid_argument("MonotoneMap::scaled: factor must be positive");
    auto self = *this;
    std::vector<Jump> js;
    for (const auto& j : jumps()) js.push_back({j.at, c * j.left, c * j.right});
    return MonotoneMap([self, c](double x) { return c * self(x); },
                       [self, c](double x) { return c * self.left(x); }, c * lo_, c * hi_,
                       std::move(js), step_);
  }

  /// Upper inverse y -> sup{x : f(x) <= y}; its left limit is the lower
  /// inverse inf{x : f(x) >= y}. Exact for step maps, bisection otherwise.
  MonotoneMap invert() const {
    if (step_) return invert_step();
    auto self = *this;
    auto upper = [self](double y) { return self.sup_le(y); };
    auto lower = [self](double y) { return self.inf_ge(y); };
    return MonotoneMap(upper, lower, -kInf, kInf);
  }

 private:
  MonotoneMap invert_step() const {
    // f = lo_ on (-inf, a_1), then v_k on [a_k, a_{k+1}).
    std::vector<double> at, val;
    for (const auto& j : jumps()) {
      at.push_back(j.at);
      val.push_back(j.right);
    }
    const double lo = lo_;
    auto data = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(at, val);
    auto upper = [data, lo](double y) {
      const auto& [a, v] = *data;
      if (y < lo) return -kInf;
      auto it = std::upper_bound(v.begin(), v.end(), y);  // first value > y
      return it == v.end() ? kInf : a[static_cast<std::size_t>(it - v.begin())];
    };
    auto lower = [data, lo](double y) {
      const auto& [a, v] = *data;
      if (y <= lo) return -kInf;
      auto it = std::lower_bound(v.begin(), v.end(), y);  // first value >= y
      return it == v.end() ? kInf : a[static_cast<std::size_t>(it - v.begin())];
    };
    std::vector<std::pair<double, double>> breaks;
    // Inverse jumps at each distinct level v_k (from a_k to a_{k+1}).
    for (std::size_t k = 0; k < at.size(); ++k) {
      const double next = k + 1 < at.size() ? at[k + 1] : kInf;
      breaks.push_back({val[k], next});
    }
    std::vector<Jump> js;
    double prev = at.empty() ? kInf : at.front();
    if (std::isfinite(lo)) js.push_back({lo, -kInf, prev});
    for (const auto& [level, next] : breaks) {
      if (std::isfinite(level) && next > prev) js.push_back({level, prev, next});
      prev = next;
    }
    return MonotoneMap(upper, lower, -kInf, kInf, std::move(js), true);
  }

  // sup{x : f(x) <= y}
  double sup_le(double y) const {
    if (hi_ <= y) return kInf;
    if (lo_ > y) return -kInf;
    return search(y, [this](double x, double y0) { return (*this)(x) <= y0; });
  }
  // inf{x : f(x) >= y} = sup{x : f_-(x) < y}
  double inf_ge(double y) const {
    if (lo_ >= y) return -kInf;
    if (hi_ < y) return kInf;
    return search(y, [this](double x, double y0) { return left(x) < y0; });
  }

  // Boundary of a down-closed set {x : pred(x)} by bracketing and bisection.
  template <class Pred>
  static double search(double y, Pred pred) {
    double a = 0, b = 0;
    if (pred(0.0, y)) {
      b = 1;
      while (pred(b, y)) {
        a = b;
        b *= 2;
        if (b > 1e300) return kInf;
      }
    } else {
      a = -1;
      while (!pred(a, y)) {
        b = a;
        a *= 2;
        if (a < -1e300) return -kInf;
      }
    }
    for (int i = 0; i < 2000; ++i) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      (pred(m, y) ? a : b) = m;
    }
    return b;
  }

  Fn eval_;
  Fn eval_left_;
  double lo_;
  double hi_;
  std::shared_ptr<const std::vector<Jump>> jumps_;
  bool step_;
};

}  // namespace levyq
