#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "levyq/core.hpp"
#include "levyq/monotone_map.hpp"
#include "levyq/rational.hpp"
#include "levyq/special.hpp"

namespace levyq {

enum class Family {
  exponential,
  benford,
  pareto,
  normal,
  uniform,
  two_point,
  atom_uniform_mixture,
  cantor,
  inverse_cantor,
  empirical,
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::exponential: return "exponential";
    case Family::benford: return "benford";
    case Family::pareto: return "pareto";
    case Family::normal: return "normal";
    case Family::uniform: return "uniform";
    case Family::two_point: return "two_point";
    case Family::atom_uniform_mixture: return "atom_uniform_mixture";
    case Family::cantor: return "cantor";
    case Family::inverse_cantor: return "inverse_cantor";
    case Family::empirical: return "empirical";
  }
  return "?";
}

namespace cantor {

/// Cantor function on [0, 1] from exact ternary digits of the double x.
inline double cdf(double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  // Far below 2^-70 the function is self-similar: F(x) = F(3^20 x) / 2^20.
  if (x < 0x1p-70) return std::ldexp(cdf(x * 3486784401.0), -20);
  int e = 0;
  const double m = std::frexp(x, &e);  // x = m 2^e, m in [0.5, 1)
  const int E = 53 - e;                // x = N / 2^E exactly
  __int128 N = static_cast<__int128>(std::ldexp(m, 53));
  double value = 0, weight = 0.5;
  for (int k = 0; k < 52 && N != 0; ++k) {
    const __int128 t = 3 * N;
    const int digit = static_cast<int>(t >> E);
    N = t - (static_cast<__int128>(digit) << E);
    if (digit == 1) return value + weight;
    if (digit == 2) value += weight;
    weight *= 0.5;
  }
  return value;
}

/// Binary digits of t in [0, 1): calls visit(k) for every set bit b_k
/// (weight 2^-k), most significant first.
template <class Visit>
inline void for_each_bit(double t, Visit visit) {
  while (t > 0) {
    int e = 0;
    std::frexp(t, &e);  // t in [2^(e-1), 2^e)
    const int k = 1 - e;
    visit(k);
    t -= std::ldexp(1.0, -k);
  }
}

/// Upper inverse of the Cantor function on [0, 1): sum of 2 b_k 3^-k.
inline double quantile(double t) {
  double g = 0;
  for_each_bit(t, [&](int k) { g += 2 * std::pow(3.0, -k); });
  return g;
}

/// Lower inverse on (0, 1]: a dyadic level i 2^-m sits on a gap of length 3^-m.
inline double quantile_left(double t) {
  if (t >= 1) return 1;
  double g = 0;
  int last = 0;
  for_each_bit(t, [&](int k) {
    g += 2 * std::pow(3.0, -k);
    last = k;
  });
  return last == 0 ? g : g - std::pow(3.0, -last);
}

}  // namespace cantor

struct EmpiricalData {
  std::vector<double> x;     // strictly increasing locations
  std::vector<double> mass;  // positive masses summing to 1
  std::vector<double> cum;   // cum[i] = mass[0] + ... + mass[i], cum.back() == 1
  std::optional<std::vector<Rational>> exact_cum;
};

/// An atom of the inverse measure: location in (0, 1) and its mass.
struct InverseAtom {
  double location;
  std::optional<Rational> exact;  // exact location when known
  double mass;
};

/// Lebesgue decomposition of the inverse measure generated by the quantile.
struct InverseMeasure {
  std::function<double(double)> ac_density;  // g'(t) on (0, 1), may be +inf
  std::vector<InverseAtom> atoms;            // sorted by location
  double singular_continuous_mass = 0;
  bool atoms_truncated = false;  // infinitely many atoms, listed to a depth
  double total_mass = 0;         // diameter of the support (may be +inf)
};

/// Probability measure on the real line with CDF and quantile views.
class Distribution {
 public:
  static Distribution exponential(double a) {
    require(a > 0 && std::isfinite(a), "exponential: rate must be positive");
    return Distribution(Family::exponential, a, 0);
  }
  static Distribution benford(double b) {
    require(b > 1 && std::isfinite(b), "benford: base must exceed 1");
    return Distribution(Family::benford, b, 0);
  }
  static Distribution pareto(double alpha) {
    require(alpha > 0 && std::isfinite(alpha), "pareto: alpha must be positive");
    return Distribution(Family::pareto, alpha, 0);
  }
  static Distribution normal(double mean, double variance) {
    require(variance > 0 && std::isfinite(variance) && std::isfinite(mean),
            "normal: variance must be positive");
    return Distribution(Family::normal, mean, variance);
  }
  static Distribution uniform(double a, double b) {
    require(a < b && std::isfinite(a) && std::isfinite(b), "uniform: need a < b");
    return Distribution(Family::uniform, a, b);
  }
  /// a delta_{-1} + (1 - a) delta_{1}.
  static Distribution two_point(Rational a) {
    require(Rational(0) < a && a < Rational(1), "two_point: need 0 < a < 1");
    Distribution d(Family::two_point, a.value(), 0);
    d.exact_a_ = a;
    return d;
  }
  static Distribution two_point(double a) { return two_point_inexact(a); }
  /// a delta_{-1} + (1 - a) U[1, b].
  static Distribution atom_uniform_mixture(Rational a, double b) {
    require(Rational(0) <= a && a < Rational(1), "atom_uniform_mixture: need 0 <= a < 1");
    require(b >= 1 && std::isfinite(b), "atom_uniform_mixture: need b >= 1");
    Distribution d(Family::atom_uniform_mixture, a.value(), b);
    d.exact_a_ = a;
    return d;
  }
  static Distribution atom_uniform_mixture(double a, double b) {
    auto r = Rational::from_shortest_decimal(a);
    if (r) return atom_uniform_mixture(*r, b);
    require(a >= 0 && a < 1, "atom_uniform_mixture: need 0 <= a < 1");
    require(b >= 1 && std::isfinite(b), "atom_uniform_mixture: need b >= 1");
    return Distribution(Family::atom_uniform_mixture, a, b);
  }
  static Distribution cantor() { return Distribution(Family::cantor, 0, 0); }
  static Distribution inverse_cantor() { return Distribution(Family::inverse_cantor, 0, 0); }

  /// Step CDF from (location, mass) pairs. Masses must sum to 1 within 1e-9;
  /// they are renormalized exactly. Exact masses, when given, make the
  /// cumulative levels exact rationals.
  static Distribution empirical(std::vector<std::pair<double, double>> atoms,
                                std::optional<std::vector<Rational>> exact_masses = std::nullopt) {
    require(!atoms.empty(), "empirical: need at least one atom");
    if (exact_masses) require(exact_masses->size() == atoms.size(), "empirical: exact mass count mismatch");
    std::vector<std::size_t> order(atoms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return atoms[i].first < atoms[j].first; });
    auto data = std::make_shared<EmpiricalData>();
    std::vector<Rational> exact;
    double total = 0;
    for (const auto& [x, p] : atoms) {
      require(std::isfinite(x), "empirical: locations must be finite");
      require(p >= 0 && std::isfinite(p), "empirical: masses must be non-negative");
      total += p;
    }
    require(std::abs(total - 1) <= 1e-9, "empirical: masses must sum to 1");
    for (std::size_t idx : order) {
      const auto [x, p] = atoms[idx];
      if (!data->x.empty() && data->x.back() == x) {
        data->mass.back() += p / total;
        if (exact_masses) exact.back() = exact.back() + (*exact_masses)[idx];
        continue;
      }
      data->x.push_back(x);
      data->mass.push_back(p / total);
      if (exact_masses) exact.push_back((*exact_masses)[idx]);
    }
    // Drop zero-mass locations: they are not part of the measure.
    std::vector<double> xs, ms;
    std::vector<Rational> ex;
    for (std::size_t i = 0; i < data->x.size(); ++i) {
      if (data->mass[i] <= 0) continue;
      xs.push_back(data->x[i]);
      ms.push_back(data->mass[i]);
      if (exact_masses) ex.push_back(exact[i]);
    }
    data->x = std::move(xs);
    data->mass = std::move(ms);
    double c = 0;
    for (double m : data->mass) data->cum.push_back(c += m);
    data->cum.back() = 1;
    if (exact_masses) {
      std::vector<Rational> ec;
      Rational acc(0);
      for (const auto& m : ex) ec.push_back(acc = acc + m);
      require(ec.back() == Rational(1), "empirical: exact masses must sum to 1");
      for (std::size_t i = 0; i < ec.size(); ++i) data->cum[i] = ec[i].value();
      data->exact_cum = std::move(ec);
    }
    Distribution d(Family::empirical, 0, 0);
    d.emp_ = std::move(data);
    return d;
  }

  /// Point mass at a.
  static Distribution point_mass(double a) {
    return empirical({{a, 1.0}}, std::vector<Rational>{Rational(1)});
  }

  Family family() const { return family_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }
  double scale() const { return scale_; }
  const std::optional<Rational>& exact_a() const { return exact_a_; }
  const EmpiricalData* empirical_data() const { return emp_.get(); }

  // ---- CDF view ----------------------------------------------------------

  double cdf(double x) const {
    if (x == -kInf) return 0;
    if (x == kInf) return 1;
    return base_cdf(x / scale_, false);
  }
  double cdf_left(double x) const {
    if (x == -kInf) return 0;
    if (x == kInf) return 1;
    return base_cdf(x / scale_, true);
  }

  // ---- quantile view (upper inverse, extended to all real t) -------------

  double quantile(double t) const {
    if (t < 0) return -kInf;
    if (t >= 1) return kInf;
    return scale_ * base_quantile(t, false);
  }
  double quantile_left(double t) const {
    if (t <= 0) return -kInf;
    if (t > 1) return kInf;
    return scale_ * base_quantile(t, true);
  }

  double support_min() const { return quantile(0); }
  double support_max() const { return quantile_left(1); }

  /// Density of the absolutely continuous part of the measure.
  double density(double x) const {
    const double s = scale_;
    x /= s;
    double f = 0;
    switch (family_) {
      case Family::exponential: f = x < 0 ? 0 : p1_ * std::exp(-p1_ * x); break;
      case Family::benford: f = (x < 1 || x > p1_) ? 0 : 1 / (x * std::log(p1_)); break;
      case Family::pareto: f = x < 1 ? 0 : p1_ * std::pow(x, -p1_ - 1); break;
      case Family::normal: f = normal_pdf((x - p1_) / std::sqrt(p2_)) / std::sqrt(p2_); break;
      case Family::uniform: f = (x < p1_ || x > p2_) ? 0 : 1 / (p2_ - p1_); break;
      case Family::atom_uniform_mixture:
        f = (p2_ > 1 && x >= 1 && x <= p2_) ? (1 - p1_) / (p2_ - 1) : 0;
        break;
      default: f = 0;
    }
    return f / s;
  }

  /// Derivative g' of the quantile on (0, 1): the density of the
  /// absolutely continuous part of the inverse measure. May be +inf.
  double quantile_derivative(double t) const {
    if (!(t >= 0 && t <= 1)) return 0;
    double d = 0;
    switch (family_) {
      case Family::exponential: d = 1 / (p1_ * (1 - t)); break;
      case Family::benford: d = std::pow(p1_, t) * std::log(p1_); break;
      case Family::pareto: d = std::pow(1 - t, -1 / p1_ - 1) / p1_; break;
      case Family::normal: {
        const double z = normal_quantile(t);
        d = std::sqrt(p2_) * std::sqrt(2 * std::numbers::pi) * std::exp(0.5 * z * z);
        break;
      }
      case Family::uniform: d = p2_ - p1_; break;
      case Family::atom_uniform_mixture: d = t > p1_ ? (p2_ - 1) / (1 - p1_) : 0; break;
      default: d = 0;
    }
    return scale_ * d;
  }

  /// Ratios g''/g' and g'''/g' for families with smooth quantiles.
  bool has_smooth_quantile() const {
    return family_ == Family::exponential || family_ == Family::benford || family_ == Family::pareto ||
           family_ == Family::normal || family_ == Family::uniform;
  }
  std::pair<double, double> quantile_ratios(double t) const {
    const double s = 1 - t;
    switch (family_) {
      case Family::exponential: return {1 / s, 2 / (s * s)};
      case Family::benford: {
        const double L = std::log(p1_);
        return {L, L * L};
      }
      case Family::pareto: {
        const double k = 1 / p1_;
        return {(k + 1) / s, (k + 1) * (k + 2) / (s * s)};
      }
      case Family::normal: {
        const double z = normal_quantile(t);
        const double sigma = std::sqrt(p2_);
        const double gp = sigma * std::sqrt(2 * std::numbers::pi) * std::exp(0.5 * z * z);
        return {gp * z / sigma, gp * gp * (2 * z * z + 1) / (sigma * sigma)};
      }
      case Family::uniform: return {0, 0};
      default: throw UnsupportedError(std::string("no smooth quantile for ") + family_name(family_));
    }
  }

  /// Essential supremum of g' over (0, 1) in closed form.
  double quantile_derivative_sup() const {
    double d = 0;
    switch (family_) {
      case Family::exponential:
      case Family::pareto:
      case Family::normal: return kInf;
      case Family::benford: d = p1_ * std::log(p1_); break;
      case Family::uniform: d = p2_ - p1_; break;
      case Family::atom_uniform_mixture: d = p2_ > 1 ? (p2_ - 1) / (1 - p1_) : 0; break;
      default: d = 0;
    }
    return scale_ * d;
  }

  /// True when the measure has a non-zero absolutely continuous part.
  bool has_ac_part() const {
    switch (family_) {
      case Family::exponential:
      case Family::benford:
      case Family::pareto:
      case Family::normal:
      case Family::uniform: return true;
      case Family::atom_uniform_mixture: return p2_ > 1;
      default: return false;
    }
  }

  /// Atoms of the measure when there are finitely many; nullopt when the
  /// measure has infinitely many (inverse Cantor).
  std::optional<std::vector<std::pair<double, double>>> atoms() const {
    std::vector<std::pair<double, double>> out;
    switch (family_) {
      case Family::two_point:
        out = {{-scale_, p1_}, {scale_, 1 - p1_}};
        break;
      case Family::atom_uniform_mixture:
        if (p1_ > 0) out.push_back({-scale_, p1_});
        if (p2_ == 1) out.push_back({scale_, 1 - p1_});
        break;
      case Family::empirical:
        for (std::size_t i = 0; i < emp_->x.size(); ++i) out.push_back({scale_ * emp_->x[i], emp_->mass[i]});
        break;
      case Family::inverse_cantor: return std::nullopt;
      default: break;
    }
    return out;
  }

  /// True when the CDF is a finite staircase.
  bool is_purely_atomic_finite() const {
    return family_ == Family::two_point || family_ == Family::empirical ||
           (family_ == Family::atom_uniform_mixture && p2_ == 1);
  }

  MonotoneMap cdf_map() const {
    auto self = *this;
    if (is_purely_atomic_finite()) {
      std::vector<std::pair<double, double>> breaks;
      double c = 0;
      const auto at = atoms().value();
      for (const auto& [x, m] : at) breaks.push_back({x, c += m});
      breaks.back().second = 1;
      return MonotoneMap::step(0.0, std::move(breaks));
    }
    std::vector<Jump> jumps;
    if (auto at = atoms()) {
      for (const auto& [x, m] : *at) jumps.push_back({x, cdf_left(x), cdf(x)});
    }
    return MonotoneMap([self](double x) { return self.cdf(x); },
                       [self](double x) { return self.cdf_left(x); }, 0.0, 1.0, std::move(jumps));
  }

  MonotoneMap quantile_map() const {
    auto self = *this;
    return MonotoneMap([self](double t) { return self.quantile(t); },
                       [self](double t) { return self.quantile_left(t); }, -kInf, kInf);
  }

  /// Pushforward under x -> eps x.
  Distribution dilate(double eps) const {
    require(eps > 0 && std::isfinite(eps), "dilate: factor must be positive");
    Distribution d = *this;
    switch (family_) {
      case Family::exponential: d.p1_ = p1_ / eps; break;
      case Family::uniform:
        d.p1_ = p1_ * eps;
        d.p2_ = p2_ * eps;
        break;
      case Family::normal:
        d.p1_ = p1_ * eps;
        d.p2_ = p2_ * eps * eps;
        break;
      default: d.scale_ = scale_ * eps; break;
    }
    return d;
  }

  /// Inverse measure: ac density g' plus the atoms at the gaps of the support.
  /// Infinitely many atoms are listed down to generation `max_depth`.
  InverseMeasure inverse_measure(int max_depth = 20) const {
    InverseMeasure im;
    auto self = *this;
    im.ac_density = [self](double t) { return self.quantile_derivative(t); };
    im.total_mass = support_max() - support_min();
    switch (family_) {
      case Family::two_point:
        im.atoms.push_back({p1_, exact_a_, 2 * scale_});
        break;
      case Family::atom_uniform_mixture:
        if (p1_ > 0) im.atoms.push_back({p1_, exact_a_, 2 * scale_});
        break;
      case Family::empirical:
        for (std::size_t i = 0; i + 1 < emp_->x.size(); ++i) {
          std::optional<Rational> ex;
          if (emp_->exact_cum) ex = (*emp_->exact_cum)[i];
          im.atoms.push_back({emp_->cum[i], ex, scale_ * (emp_->x[i + 1] - emp_->x[i])});
        }
        break;
      case Family::cantor: {
        // Gaps of the Cantor set: level i 2^-m (i odd) carries a gap of 3^-m.
        im.atoms_truncated = true;
        for (int m = 1; m <= max_depth; ++m) {
          const double mass = scale_ * std::pow(3.0, -m);
          for (std::int64_t i = 1; i < (std::int64_t{1} << m); i += 2)
            im.atoms.push_back({std::ldexp(static_cast<double>(i), -m), Rational(i, std::int64_t{1} << m), mass});
        }
        std::sort(im.atoms.begin(), im.atoms.end(),
                  [](const InverseAtom& a, const InverseAtom& b) { return a.location < b.location; });
        break;
      }
      case Family::inverse_cantor:
        im.singular_continuous_mass = scale_;
        break;
      default: break;
    }
    return im;
  }

  std::string to_string() const {
    std::ostringstream os;
    os.precision(12);
    auto rat = [&](double v) {
      if (exact_a_) return exact_a_->to_string();
      std::ostringstream o;
      o.precision(12);
      o << v;
      return o.str();
    };
    switch (family_) {
      case Family::exponential: os << "exp(" << p1_ << ")"; break;
      case Family::benford: os << "benford(" << p1_ << ")"; break;
      case Family::pareto: os << "pareto(" << p1_ << ")"; break;
      case Family::normal: os << "normal(" << p1_ << "," << p2_ << ")"; break;
      case Family::uniform: os << "uniform(" << p1_ << "," << p2_ << ")"; break;
      case Family::two_point: os << "two_point(" << rat(p1_) << ")"; break;
      case Family::atom_uniform_mixture: os << "mixture(" << rat(p1_) << "," << p2_ << ")"; break;
      case Family::cantor: os << "cantor"; break;
      case Family::inverse_cantor: os << "inverse_cantor"; break;
      case Family::empirical: os << "empirical[" << emp_->x.size() << "]"; break;
    }
    if (scale_ != 1) os << "*" << scale_;
    return os.str();
  }

 private:
  Distribution(Family f, double p1, double p2) : family_(f), p1_(p1), p2_(p2) {}

  static void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
  }

  static Distribution two_point_inexact(double a) {
    if (auto r = Rational::from_shortest_decimal(a)) return two_point(*r);
    require(a > 0 && a < 1, "two_point: need 0 < a < 1");
    return Distribution(Family::two_point, a, 0);
  }

  // CDF of the unscaled family; `left` selects the left limit.
  double base_cdf(double x, bool left) const {
    switch (family_) {
      case Family::exponential: return x <= 0 ? 0 : -std::expm1(-p1_ * x);
      case Family::benford: return x <= 1 ? 0 : (x >= p1_ ? 1 : std::log(x) / std::log(p1_));
      case Family::pareto: return x <= 1 ? 0 : -std::expm1(-p1_ * std::log(x));
      case Family::normal: return normal_cdf((x - p1_) / std::sqrt(p2_));
      case Family::uniform: return x <= p1_ ? 0 : (x >= p2_ ? 1 : (x - p1_) / (p2_ - p1_));
      case Family::two_point:
        if (left) return x <= -1 ? 0 : (x <= 1 ? p1_ : 1);
        return x < -1 ? 0 : (x < 1 ? p1_ : 1);
      case Family::atom_uniform_mixture: {
        const double a = p1_, b = p2_;
        if (left ? x <= -1 : x < -1) return 0;
        if (left ? x <= 1 : x < 1) return a;
        if (b == 1 || x >= b) return 1;
        return a + (1 - a) * (x - 1) / (b - 1);
      }
      case Family::cantor: return cantor::cdf(x);
      case Family::inverse_cantor:
        if (x < 0 || (left && x == 0)) return 0;
        if (x >= 1) return 1;
        return left ? cantor::quantile_left(x) : cantor::quantile(x);
      case Family::empirical: {
        const auto& e = *emp_;
        auto it = left ? std::lower_bound(e.x.begin(), e.x.end(), x) : std::upper_bound(e.x.begin(), e.x.end(), x);
        return it == e.x.begin() ? 0 : e.cum[static_cast<std::size_t>(it - e.x.begin()) - 1];
      }
    }
    return 0;
  }

  // Quantile of the unscaled family for t in [0, 1) (upper) or (0, 1] (lower).
  double base_quantile(double t, bool left) const {
    switch (family_) {
      case Family::exponential: return left && t == 1 ? kInf : -std::log1p(-t) / p1_;
      case Family::benford: return std::pow(p1_, t);
      case Family::pareto: return left && t == 1 ? kInf : std::exp(-std::log1p(-t) / p1_);
      case Family::normal: return p1_ + std::sqrt(p2_) * normal_quantile(t);
      case Family::uniform: return p1_ + (p2_ - p1_) * t;
      case Family::two_point:
        return (left ? t <= p1_ : t < p1_) ? -1.0 : 1.0;
      case Family::atom_uniform_mixture: {
        const double a = p1_, b = p2_;
        if (left ? t <= a : t < a) return -1;
        return 1 + (b - 1) * (t - a) / (1 - a);
      }
      case Family::cantor: return left ? cantor::quantile_left(t) : cantor::quantile(t);
      case Family::inverse_cantor: return cantor::cdf(t);
      case Family::empirical: {
        const auto& e = *emp_;
        auto it = left ? std::lower_bound(e.cum.begin(), e.cum.end(), t) : std::upper_bound(e.cum.begin(), e.cum.end(), t);
        if (it == e.cum.end()) return e.x.back();
        return e.x[static_cast<std::size_t>(it - e.cum.begin())];
      }
    }
    return 0;
  }

  Family family_;
  double p1_ = 0;
  double p2_ = 0;
  double scale_ = 1;
  std::optional<Rational> exact_a_;
  std::shared_ptr<const EmpiricalData> emp_;
};

}  // namespace levyq
