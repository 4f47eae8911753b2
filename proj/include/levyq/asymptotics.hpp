#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "levyq/core.hpp"
#include "levyq/distributions.hpp"
#include "levyq/quadrature.hpp"
#include "levyq/rational.hpp"
#include "levyq/special.hpp"

namespace levyq {

/// Omega(x) = x / (2 + 2|x|), with Omega(+-inf) = +-1/2.
inline double omega(double x) {
  if (x == kInf) return 0.5;
  if (x == -kInf) return -0.5;
  return x / (2 + 2 * std::abs(x));
}

/// iota(p/q) = 2 inf{n >= 0 : (2n + 1) p/q is an integer}: q - 1 for odd
/// reduced q, +inf for even q. Returned as a double so +inf is representable.
inline double iota(const Rational& r) {
  const std::int64_t q = r.den();
  if (q % 2 == 0) return kInf;
  const double v = static_cast<double>(q - 1);
  // Consistency with limsup dist(n p/q, Z) = (q - 1) / (2q).
  const double expected = static_cast<double>(q - 1) / (2.0 * static_cast<double>(q));
  if (std::abs(omega(v) - expected) > 1e-15) throw IntegrityError("iota: inconsistent with the dist formula");
  return v;
}

/// Brute-force scan of iota, for cross-checking small denominators.
inline double iota_scan(const Rational& r, std::int64_t max_n = 1000000) {
  for (std::int64_t n = 0; n <= max_n; ++n) {
    const __int128 num = static_cast<__int128>(2 * n + 1) * r.num();
    if (num % r.den() == 0) return static_cast<double>(2 * n);
  }
  return kInf;
}

struct Component {
  std::string name;
  double value;
};

struct AsymptoticReport {
  std::string kind;    // uniform-limsup | uniform-liminf-bound | best-limit | second-order | point-density
  double value = 0;
  std::string method;  // closed-form | quadrature | series
  std::vector<Component> components;
  bool approximate = false;
  std::vector<std::string> notes;

  std::optional<double> component(const std::string& name) const {
    for (const auto& c : components)
      if (c.name == name) return c.value;
    return std::nullopt;
  }
};

namespace detail {

// The scale factor a family carries outside its own parameters, folded into eps.
inline double effective_eps(const Distribution& mu, double eps) { return eps * mu.scale(); }

// Breakpoints of the absolutely continuous density of the measure.
inline std::vector<double> density_pieces(const Distribution& mu) {
  const double s = mu.scale();
  switch (mu.family()) {
    case Family::exponential: return {0, kInf};
    case Family::benford: return {s, s * mu.param1()};
    case Family::pareto: return {s, kInf};
    case Family::normal: return {-kInf, mu.param1(), kInf};
    case Family::uniform: return {mu.param1(), mu.param2()};
    case Family::atom_uniform_mixture: return {s, s * mu.param2()};
    default: return {};
  }
}

inline std::vector<double> quantile_pieces(const Distribution& mu) {
  if (mu.family() == Family::atom_uniform_mixture && mu.param1() > 0) return {0, mu.param1(), 1};
  return {0, 1};
}

}  // namespace detail

/// Limit superior of n times the best uniform error, and the liminf lower
/// bound given by the absolutely continuous part of the inverse measure.
struct UniformLimit {
  AsymptoticReport limsup;
  AsymptoticReport liminf_bound;
};

inline UniformLimit limit_uniform(const Distribution& mu, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("limit_uniform: eps must be positive");
  UniformLimit out;
  out.limsup.kind = "uniform-limsup";
  out.liminf_bound.kind = "uniform-liminf-bound";
  out.limsup.method = out.liminf_bound.method = "closed-form";
  const double ac = omega(eps * mu.quantile_derivative_sup());
  out.liminf_bound.value = ac;
  out.liminf_bound.components = {{"ac", ac}};
  if (mu.family() == Family::cantor || mu.family() == Family::inverse_cantor) {
    out.limsup.value = 0.5;
    out.limsup.components = {{"ac", 0.0}, {"singular", 0.5}};
    out.limsup.notes.push_back("self-similar singular part: limsup 1/2; exact liminf not computed");
    if (mu.family() == Family::cantor) {
      out.liminf_bound.notes.push_back("liminf equals 0");
    } else {
      out.liminf_bound.notes.push_back("liminf known only to lie in [1/216, 1/3] for eps = 1");
    }
    return out;
  }
  const auto im = mu.inverse_measure();
  double singular = 0;  // Omega(iota(0)) = Omega(iota(1)) = 0
  for (const auto& atom : im.atoms) {
    if (!atom.exact)
      throw UnsupportedError("limit_uniform: inverse-measure atom at " + std::to_string(atom.location) +
                             " has no exact rational location");
    singular = std::max(singular, omega(iota(*atom.exact)));
  }
  out.limsup.value = std::max(ac, singular);
  out.limsup.components = {{"ac", ac}, {"singular", singular}};
  return out;
}

/// Closed form of the best-approximation limit where one is known.
inline std::optional<double> limit_best_closed_form(const Distribution& mu, double eps) {
  const double e = detail::effective_eps(mu, eps);
  switch (mu.family()) {
    case Family::exponential: {
      const double a = mu.param1();
      return 0.5 * e * std::log1p(a / e) / a;
    }
    case Family::benford: {
      const double b = mu.param1(), L = std::log(b);
      return (std::log1p(e * b * L) - std::log1p(e * L)) / (2 * L);
    }
    case Family::pareto:
      if (mu.param1() == 1) return 0.5 * std::sqrt(e) * std::atan(1 / std::sqrt(e));
      return std::nullopt;
    case Family::normal: {
      const double sigma2 = mu.param2();
      const double z = -1 / (e * std::sqrt(2 * std::numbers::pi * sigma2));
      if (!(std::abs(z) < 1)) return std::nullopt;
      return -e * std::sqrt(std::numbers::pi * sigma2 / 2) * polylog_half(z);
    }
    case Family::uniform: return omega(e * (mu.param2() - mu.param1()));
    case Family::atom_uniform_mixture: {
      const double a = mu.param1(), b = mu.param2();
      return (1 - a) * omega(e * (b - 1) / (1 - a));
    }
    default: return 0.0;
  }
}

/// Limit of n times the best (unconstrained) error: the integral of
/// Omega(eps g') over (0, 1), and its dual eps * integral of Omega(f_A / eps).
inline AsymptoticReport limit_best(const Distribution& mu, double eps, double agreement = 1e-8) {
  if (!(eps > 0)) throw std::invalid_argument("limit_best: eps must be positive");
  AsymptoticReport r;
  r.kind = "best-limit";
  if (!mu.has_ac_part()) {
    r.value = 0;
    r.method = "closed-form";
    r.components = {{"primal", 0.0}, {"dual", 0.0}};
    r.notes.push_back("no absolutely continuous part: the limit is 0");
    return r;
  }
  auto primal_f = [&](double t) { return omega(eps * mu.quantile_derivative(t)); };
  auto primal = integrate_pieces(primal_f, detail::quantile_pieces(mu), 1e-14, 1e-13);
  auto dual_f = [&](double x) { return omega(mu.density(x) / eps); };
  auto dual = integrate_pieces(dual_f, detail::density_pieces(mu), 1e-14, 1e-13);
  const double d = eps * dual.value;
  if (std::abs(primal.value - d) > agreement)
    throw IntegrityError("limit_best: primal " + std::to_string(primal.value) + " and dual " + std::to_string(d) +
                         " disagree");
  r.value = primal.value;
  r.method = "quadrature";
  r.components = {{"primal", primal.value}, {"dual", d}};
  if (auto cf = limit_best_closed_form(mu, eps)) r.components.push_back({"closed_form", *cf});
  r.approximate = !(primal.converged && dual.converged);
  return r;
}

inline bool second_order_uniform_eligible(const Distribution& mu) {
  return mu.family() == Family::exponential || mu.family() == Family::benford || mu.family() == Family::pareto ||
         mu.family() == Family::normal;
}

/// Refined prediction c - (2c^2/eps) e_n for n times the best uniform error.
inline AsymptoticReport second_order_uniform(const Distribution& mu, double eps, std::size_t n) {
  if (!second_order_uniform_eligible(mu))
    throw UnsupportedError(std::string("second_order_uniform: needs a convex C^2 quantile (exponential, benford, "
                                       "pareto, normal); got ") +
                           family_name(mu.family()));
  AsymptoticReport r;
  r.kind = "second-order";
  r.method = "closed-form";
  const double nd = static_cast<double>(n);
  if (mu.family() == Family::normal) {
    const double term = std::sqrt(std::log(nd)) / nd / (2 * eps * std::sqrt(2 * mu.param2()));
    r.value = 0.5 - term;
    r.components = {{"c", 0.5}, {"sqrt_log_term", term}};
    return r;
  }
  const double c = omega(eps * mu.quantile_derivative_sup());
  double e_n;
  if (c < 0.5) {
    const double g1 = mu.quantile_derivative(1.0);
    e_n = 1 / g1 + nd * (mu.quantile(1 - (1 - c) / nd) - mu.quantile(1 - c / nd)) / ((1 - 2 * c) * g1 * g1);
  } else {
    e_n = 1 / mu.quantile_derivative(1 - 1 / (2 * nd));
  }
  r.value = c - 2 * c * c / eps * e_n;
  r.components = {{"c", c}, {"e_n", e_n}};
  return r;
}

struct SecondOrderBest {
  double c1;
  double c2;            // -inf when the integrand is not integrable
  bool c2_finite;
  AsymptoticReport report;

  /// c1 + (c1^2 c2 / 12) n^-2.
  double predict(std::size_t n) const {
    const double nd = static_cast<double>(n);
    return c1 + c1 * c1 * c2 / 12 / (nd * nd);
  }
};

inline SecondOrderBest second_order_best(const Distribution& mu, double eps) {
  if (!mu.has_smooth_quantile())
    throw UnsupportedError(std::string("second_order_best: needs a C^4 quantile; got ") + family_name(mu.family()));
  SecondOrderBest out{};
  out.c1 = limit_best(mu, eps).value;
  out.report.kind = "second-order";
  out.report.method = "quadrature";
  if (mu.family() == Family::normal) {
    out.c2 = -kInf;
    out.c2_finite = false;
    out.report.notes.push_back("Omega(eps g') has no C^1 extension: c2 = -inf");
  } else {
    auto f = [&](double t) {
      const double u = eps * mu.quantile_derivative(t);
      if (u == kInf) return 0.0;
      const auto [r, q] = mu.quantile_ratios(t);
      return (2 * (1 + u) * r * r - (2 + u) * q) / ((1 + u) * (1 + u));
    };
    auto q = integrate(f, 0.0, 1.0, 1e-14, 1e-12);
    out.c2 = q.value;
    out.c2_finite = true;
    out.report.approximate = !q.converged;
  }
  out.report.value = out.c2;
  out.report.components = {{"c1", out.c1}, {"c2", out.c2}};
  return out;
}

/// Density of the asymptotic point distribution of best-approximation atoms:
/// Omega(f_A / eps) normalized to a probability density.
class PointDensity {
 public:
  PointDensity(Distribution mu, double eps) : mu_(std::move(mu)), eps_(eps) {
    if (!(eps > 0)) throw std::invalid_argument("point_density: eps must be positive");
    if (!mu_.has_ac_part())
      throw UnsupportedError("point_density: the measure has no absolutely continuous part");
    pieces_ = detail::density_pieces(mu_);
    auto f = [this](double x) { return omega(mu_.density(x) / eps_); };
    norm_ = integrate_pieces(f, pieces_, 1e-15, 1e-13).value;
  }

  double normalization() const { return norm_; }
  double operator()(double x) const { return omega(mu_.density(x) / eps_) / norm_; }

  /// Distribution function of the point density.
  double cdf(double x) const {
    if (x <= pieces_.front()) return 0;
    if (x >= pieces_.back()) return 1;
    auto f = [this](double t) { return omega(mu_.density(t) / eps_); };
    std::vector<double> cut;
    double v;
    if (pieces_.back() == kInf && x > pieces_[pieces_.size() - 2]) {
      // Integrate the upper tail so that the unbounded piece stays unbounded.
      cut = {x, kInf};
      v = 1 - integrate_pieces(f, cut, 1e-15, 1e-13).value / norm_;
    } else {
      for (double b : pieces_) {
        if (b < x) cut.push_back(b);
      }
      cut.push_back(x);
      v = integrate_pieces(f, cut, 1e-15, 1e-13).value / norm_;
    }
    return std::min(1.0, std::max(0.0, v));
  }

  const Distribution& distribution() const { return mu_; }
  double eps() const { return eps_; }

 private:
  Distribution mu_;
  double eps_;
  std::vector<double> pieces_;
  double norm_ = 0;
};

inline double point_density(const Distribution& mu, double eps, double x) { return PointDensity(mu, eps)(x); }

/// Values a limit superior of n times the best uniform error can take when
/// the sequence does not converge: {Omega(2m) : m >= 1} together with 1/2.
inline bool limsup_admissible(double limsup, double liminf_bound, double tol = 1e-9) {
  if (limsup < 1.0 / 3 - tol) return true;
  if (std::abs(limsup - 0.5) <= tol) return true;
  const double m = std::max(1.0, std::round(limsup / (1 - 2 * limsup)));  // inverse of Omega(2m)
  if (std::abs(omega(2 * m) - limsup) <= tol) return true;
  return std::abs(limsup - liminf_bound) <= tol;  // convergent sequence
}

}  // namespace levyq
