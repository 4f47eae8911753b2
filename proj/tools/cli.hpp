#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "levyq/io.hpp"
#include "levyq/levyq.hpp"

namespace levyq::cli {

using io::json;

enum Exit : int { kOk = 0, kViolation = 1, kParse = 2, kIntegrity = 3, kUnsupported = 4 };

struct NRange {
  std::size_t start = 1;
  std::size_t stop = 1;
};

/// "N" or "a..b".
inline NRange parse_n_range(const std::string& text) {
  auto to_n = [](const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw ParseError("bad n '" + s + "'");
    }
    if (used != s.size() || v < 1) throw ParseError("n must be a positive integer, got '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto n = to_n(io::trim(text));
    return {n, n};
  }
  NRange r{to_n(io::trim(text.substr(0, dots))), to_n(io::trim(text.substr(dots + 2)))};
  if (r.stop < r.start) throw ParseError("empty n-range '" + text + "'");
  return r;
}

inline std::vector<std::size_t> expand(const NRange& r, const std::string& mode, double step) {
  std::vector<std::size_t> ns;
  if (mode == "geometric") {
    if (!(step > 1)) throw ParseError("geometric step must exceed 1");
    for (double v = static_cast<double>(r.start); v <= static_cast<double>(r.stop) + 0.5; v *= step) {
      const auto n = static_cast<std::size_t>(std::llround(v));
      if (ns.empty() || n != ns.back()) ns.push_back(n);
    }
  } else if (mode == "arithmetic") {
    if (!(step >= 1)) throw ParseError("arithmetic step must be at least 1");
    const auto s = static_cast<std::size_t>(step);
    for (std::size_t n = r.start; n <= r.stop; n += s) ns.push_back(n);
  } else {
    throw ParseError("step mode must be geometric or arithmetic");
  }
  return ns;
}

inline unsigned thread_count() {
  unsigned t = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LEVYQ_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) t = std::min(t, static_cast<unsigned>(v));
  }
  return t;
}

/// Runs f(i) for i in [0, count) on up to thread_count() workers.
template <class F>
void parallel_for(std::size_t count, F f) {
  const unsigned threads = std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(io::parse_double(item));
  if (v.empty()) throw ParseError("empty list");
  return v;
}

struct Common {
  std::string spec;
  double eps = 1;
  std::string format = "json";
  std::string output;
  double tol_bisection = 1e-12;
  double tol_level = 1e-13;
  bool no_self_check = false;

  SolverOptions solver() const {
    SolverOptions o;
    o.tol.bisection = tol_bisection;
    o.tol.level = tol_level;
    o.self_check = !no_self_check;
    return o;
  }
};

inline void add_common(CLI::App* sub, Common& c, bool with_spec = true) {
  if (with_spec) sub->add_option("--spec,-s", c.spec, "distribution: shorthand, inline JSON, or .json/.csv path")->required();
  sub->add_option("--eps,-e", c.eps, "metric parameter eps > 0")->capture_default_str();
  sub->add_option("--format,-f", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--output,-o", c.output, "output path (default stdout)");
  sub->add_option("--tol-bisection", c.tol_bisection, "bisection tolerance on ell")->capture_default_str();
  sub->add_option("--tol-level", c.tol_level, "outer bisection tolerance on the error level")->capture_default_str();
  sub->add_flag("--no-self-check", c.no_self_check, "skip re-certification of solver results");
}

struct Emitter {
  std::ostream& out;
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write '" + path + "'");
    f << text;
  }
};

inline std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

inline std::string measure_csv(const AtomicMeasure& m) {
  std::string s = csv_line({"j", "x", "p", "P"});
  const auto p = m.p();
  for (std::size_t j = 0; j < m.n(); ++j)
    s += csv_line({std::to_string(j + 1), io::fmt(m.x()[j]), io::fmt(p[j]), io::fmt(m.P()[j + 1])});
  return s;
}

inline void check_eps(double eps) {
  if (!(eps > 0) || !std::isfinite(eps)) throw ParseError("--eps must be positive");
}

inline int cmd_dist(const Common& c, const std::string& atoms, std::ostream& out, std::ostream& err) {
  const auto mu = io::parse_spec(c.spec);
  std::vector<std::string> warnings;
  const auto nu = io::parse_atoms(atoms, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  const auto r = distance_to_atomic_report(mu, nu, c.eps);
  Emitter e{out, c.output};
  if (c.format == "csv") {
    e.write(csv_line({"distance", "primal", "dual"}) + csv_line({io::fmt(r.value), io::fmt(r.primal), io::fmt(r.dual)}));
  } else {
    json j = {{"command", "dist"}, {"spec", mu.to_string()}, {"eps", io::num(c.eps)}, {"distance", io::num(r.value)},
              {"primal", io::num(r.primal)}, {"dual", io::num(r.dual)}, {"atoms", io::to_json(nu)}};
    e.write(j.dump(2) + "\n");
  }
  return kOk;
}

inline int cmd_solve(const std::string& name, const Common& c, std::size_t n, const std::string& weights,
                     const std::string& locations, std::ostream& out) {
  const auto mu = io::parse_spec(c.spec);
  ApproxResult r;
  std::string mode;
  if (!weights.empty() && !locations.empty()) throw ParseError("give at most one of --weights and --locations");
  if (name == "uniform") {
    if (n < 1) throw ParseError("--n is required");
    r = best_uniform(mu, n, c.eps, c.solver());
    mode = "uniform";
  } else if (!weights.empty()) {
    r = best_locations_given_weights(mu, parse_list(weights), c.eps, c.solver());
    mode = "given_weights";
  } else if (!locations.empty()) {
    auto x = parse_list(locations);
    std::sort(x.begin(), x.end());
    r = best_weights_given_locations(mu, std::move(x), c.eps, c.solver());
    mode = "given_locations";
  } else {
    if (n < 1) throw ParseError("--n is required");
    r = best_unconstrained(mu, n, c.eps, c.solver());
    mode = "unconstrained";
  }
  Emitter e{out, c.output};
  if (c.format == "csv") {
    e.write(measure_csv(r.measure));
  } else {
    json j = {{"command", name}, {"spec", mu.to_string()}, {"mode", mode}};
    const json body = io::to_json(r);
    for (const auto& [k, v] : body.items()) j[k] = v;
    e.write(j.dump(2) + "\n");
  }
  return kOk;
}

inline int cmd_sweep(const Common& c, const std::string& n_text, const std::string& step_mode, double step,
                     const std::string& mode, std::ostream& out) {
  const auto mu = io::parse_spec(c.spec);
  check_eps(c.eps);
  const auto ns = expand(parse_n_range(n_text), step_mode, step);
  const bool best = mode == "best";
  double limit;
  std::optional<SecondOrderBest> sob;
  if (best) {
    limit = limit_best(mu, c.eps).value;
    if (mu.has_smooth_quantile()) sob = second_order_best(mu, c.eps);
  } else {
    limit = limit_uniform(mu, c.eps).limsup.value;
  }
  struct Row {
    std::size_t n;
    double error;
    std::optional<double> second;
  };
  std::vector<Row> rows(ns.size());
  auto opt = c.solver();
  parallel_for(ns.size(), [&](std::size_t i) {
    const std::size_t n = ns[i];
    const auto r = best ? best_unconstrained(mu, n, c.eps, opt) : best_uniform(mu, n, c.eps, opt);
    std::optional<double> second;
    if (best && sob) second = sob->predict(n);
    if (!best && second_order_uniform_eligible(mu)) second = second_order_uniform(mu, c.eps, n).value;
    rows[i] = {n, r.error, second};
  });
  Emitter e{out, c.output};
  if (c.format == "csv") {
    std::string s = csv_line({"n", "error", "n_error", "limit", "second_order"});
    for (const auto& r : rows)
      s += csv_line({std::to_string(r.n), io::fmt(r.error), io::fmt(static_cast<double>(r.n) * r.error), io::fmt(limit),
                     r.second ? io::fmt(*r.second) : ""});
    e.write(s);
  } else {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"n", r.n},
                     {"error", io::num(r.error)},
                     {"n_error", io::num(static_cast<double>(r.n) * r.error)},
                     {"limit", io::num(limit)},
                     {"second_order", r.second ? io::num(*r.second) : json(nullptr)}});
    json j = {{"command", "sweep"}, {"spec", mu.to_string()}, {"mode", mode}, {"eps", io::num(c.eps)}, {"rows", arr}};
    e.write(j.dump(2) + "\n");
  }
  return kOk;
}

// Four correct significant digits: truncated, not rounded.
inline std::string four_digits(double v) {
  if (!std::isfinite(v) || v == 0) return io::fmt(v);
  const double scale = std::pow(10.0, 3 - std::floor(std::log10(std::abs(v))));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::trunc(v * scale) / scale);
  return buf;
}

inline int cmd_limits(const Common& c, std::size_t n, bool summary, std::ostream& out, std::ostream& err) {
  const auto mu = io::parse_spec(c.spec);
  check_eps(c.eps);
  std::vector<AsymptoticReport> reports;
  auto u = limit_uniform(mu, c.eps);
  reports.push_back(u.limsup);
  reports.push_back(u.liminf_bound);
  reports.push_back(limit_best(mu, c.eps));
  if (second_order_uniform_eligible(mu)) {
    auto r = second_order_uniform(mu, c.eps, n);
    r.notes.push_back("uniform mode, n = " + std::to_string(n));
    reports.push_back(r);
  }
  if (mu.has_smooth_quantile()) {
    auto s = second_order_best(mu, c.eps);
    s.report.notes.push_back("best mode: n d = c1 + (c1^2 c2 / 12) n^-2");
    reports.push_back(s.report);
  }
  if (summary) {
    for (const auto& r : reports) err << r.kind << " " << four_digits(r.value) << "\n";
  }
  Emitter e{out, c.output};
  if (c.format == "csv") {
    std::string s = csv_line({"kind", "value", "method"});
    for (const auto& r : reports) s += csv_line({r.kind, io::fmt(r.value), r.method});
    e.write(s);
  } else {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(io::to_json(r));
    json j = {{"command", "limits"}, {"spec", mu.to_string()}, {"eps", io::num(c.eps)}, {"reports", arr}};
    e.write(j.dump(2) + "\n");
  }
  return kOk;
}

inline int cmd_density(const Common& c, std::size_t n, std::size_t bins, std::ostream& out) {
  const auto mu = io::parse_spec(c.spec);
  check_eps(c.eps);
  if (bins < 1) throw ParseError("--bins must be positive");
  const PointDensity pd(mu, c.eps);
  const auto r = best_unconstrained(mu, n, c.eps, c.solver());
  double lo = mu.support_min(), hi = mu.support_max();
  if (!std::isfinite(lo)) lo = mu.quantile(1e-3);
  if (!std::isfinite(hi)) hi = mu.quantile(1 - 1e-3);
  const double w = (hi - lo) / static_cast<double>(bins);
  std::vector<double> hist(bins, 0.0);
  for (double x : r.measure.x()) {
    if (x < lo || x > hi) continue;
    const auto k = std::min(bins - 1, static_cast<std::size_t>((x - lo) / w));
    hist[k] += 1;
  }
  Emitter e{out, c.output};
  std::string s = csv_line({"x", "density", "histogram"});
  json arr = json::array();
  for (std::size_t k = 0; k < bins; ++k) {
    const double x = lo + (static_cast<double>(k) + 0.5) * w;
    const double h = hist[k] / (static_cast<double>(n) * w);
    s += csv_line({io::fmt(x), io::fmt(pd(x)), io::fmt(h)});
    arr.push_back({{"x", io::num(x)}, {"density", io::num(pd(x))}, {"histogram", io::num(h)}});
  }
  if (c.format == "csv") {
    e.write(s);
  } else {
    json j = {{"command", "density"}, {"spec", mu.to_string()}, {"eps", io::num(c.eps)}, {"n", n}, {"rows", arr}};
    e.write(j.dump(2) + "\n");
  }
  return kOk;
}

inline int cmd_verify(const Common& c, std::size_t n, double x_res, double p_res, std::ostream& out, std::ostream& err) {
  const auto mu = io::parse_spec(c.spec);
  check_eps(c.eps);
  if (n < 1 || n > 3) throw ParseError("verify supports n in 1..3");
  const auto s = best_unconstrained(mu, n, c.eps, c.solver());
  auto cfg = default_grid(mu, x_res, p_res);
  cfg.threads = thread_count();
  const auto o = brute_force_best(mu, n, c.eps, cfg);
  const double bound = x_res + p_res;
  const bool lower_ok = o.error >= s.error - 1e-9;
  const bool upper_ok = o.error - s.error <= bound + 1e-9;
  const bool ok = lower_ok && upper_ok;
  if (!ok) err << "verify: oracle " << io::fmt(o.error) << " vs solver " << io::fmt(s.error) << " violates the bound\n";
  Emitter e{out, c.output};
  if (c.format == "csv") {
    e.write(csv_line({"n", "solver_error", "oracle_error", "bound", "ok"}) +
            csv_line({std::to_string(n), io::fmt(s.error), io::fmt(o.error), io::fmt(bound), ok ? "true" : "false"}));
  } else {
    json j = {{"command", "verify"},       {"spec", mu.to_string()},      {"eps", io::num(c.eps)},
              {"n", n},                    {"solver_error", io::num(s.error)}, {"oracle_error", io::num(o.error)},
              {"bound", io::num(bound)},   {"exhaustive", o.exhaustive},  {"ok", ok},
              {"solver_atoms", io::to_json(s.measure)}, {"oracle_atoms", io::to_json(o.measure)}};
    e.write(j.dump(2) + "\n");
  }
  return ok ? kOk : kViolation;
}

/// Entry point shared by the executable and the tests. Data goes to `out`,
/// diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Best approximations of probability measures in the eps-Levy metric", "levyq"};
  app.require_subcommand(1);
  Common c;
  std::string atoms, weights, locations, n_text, step_mode = "geometric", mode = "best";
  std::size_t n = 0, bins = 50;
  double step = 2, x_res = 1e-3, p_res = 1e-3;
  bool summary = false;

  auto* dist = app.add_subcommand("dist", "distance between a distribution and an atomic measure");
  add_common(dist, c);
  dist->add_option("--atoms,-a", atoms, "atomic measure: inline JSON or path")->required();

  auto* best = app.add_subcommand("best", "best n-atom approximation");
  add_common(best, c);
  best->add_option("--n,-n", n, "number of atoms");
  best->add_option("--weights", weights, "fixed weights p1,...,pn (locations optimized)");
  best->add_option("--locations", locations, "fixed locations x1,...,xn (weights optimized)");

  auto* uni = app.add_subcommand("uniform", "best approximation with equal weights");
  add_common(uni, c);
  uni->add_option("--n,-n", n, "number of atoms")->required();

  auto* sweep = app.add_subcommand("sweep", "errors over a range of n");
  add_common(sweep, c);
  sweep->add_option("--n,-n", n_text, "n or a..b")->required();
  sweep->add_option("--step-mode", step_mode, "geometric or arithmetic")
      ->check(CLI::IsMember({"geometric", "arithmetic"}))
      ->capture_default_str();
  sweep->add_option("--step", step, "ratio (geometric) or increment (arithmetic)")->capture_default_str();
  sweep->add_option("--mode,-m", mode, "best or uniform")->check(CLI::IsMember({"best", "uniform"}))->capture_default_str();

  auto* limits = app.add_subcommand("limits", "asymptotic constants");
  add_common(limits, c);
  std::size_t limits_n = 1000;
  limits->add_option("--n,-n", limits_n, "n for the second-order uniform prediction")->capture_default_str();
  limits->add_flag("--summary", summary, "print four-digit summary lines to stderr");

  auto* density = app.add_subcommand("density", "asymptotic point density against an atom histogram");
  add_common(density, c);
  std::size_t density_n = 200;
  density->add_option("--n,-n", density_n, "number of atoms for the histogram")->capture_default_str();
  density->add_option("--bins", bins, "histogram bins")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "compare the solver with a brute-force grid oracle (n <= 3)");
  add_common(verify, c);
  std::size_t verify_n = 1;
  verify->add_option("--n,-n", verify_n, "number of atoms (1..3)")->capture_default_str();
  verify->add_option("--x-res", x_res, "location grid resolution")->capture_default_str();
  verify->add_option("--p-res", p_res, "weight grid resolution")->capture_default_str();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  try {
    check_eps(c.eps);
    if (*dist) return cmd_dist(c, atoms, out, err);
    if (*best) return cmd_solve("best", c, n, weights, locations, out);
    if (*uni) return cmd_solve("uniform", c, n, "", "", out);
    if (*sweep) return cmd_sweep(c, n_text, step_mode, step, mode, out);
    if (*limits) return cmd_limits(c, limits_n, summary, out, err);
    if (*density) return cmd_density(c, density_n, bins, out);
    if (*verify) return cmd_verify(c, verify_n, x_res, p_res, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    return kIntegrity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIntegrity;
  }
  return kParse;
}

}  // namespace levyq::cli
