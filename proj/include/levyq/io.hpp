#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "levyq/asymptotics.hpp"
#include "levyq/core.hpp"
#include "levyq/distributions.hpp"
#include "levyq/levy_core.hpp"
#include "levyq/quantizer.hpp"
#include "levyq/rational.hpp"

namespace levyq::io {

using json = nlohmann::ordered_json;

/// Twelve significant digits, the precision of every emitted number.
inline std::string fmt(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// JSON value for an extended real: a number rounded to twelve significant
/// digits, or the strings "+inf" / "-inf".
inline json num(double v) {
  if (!std::isfinite(v)) return fmt(v);
  return std::stod(fmt(v));
}

inline std::string trim(std::string s) {
  auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && sp(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && sp(s[i])) ++i;
  return s.substr(i);
}

inline double parse_double(const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return kInf;
  if (t == "-inf") return -kInf;
  if (t.find('/') != std::string::npos) return Rational::parse(t).value();
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + t + "'");
  }
  if (used != t.size()) throw ParseError("not a number: '" + t + "'");
  return v;
}

inline Rational parse_rational(const std::string& text) { return Rational::parse(trim(text)); }

namespace detail {

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline Distribution build(const std::string& family_in, const std::vector<std::string>& args) {
  const std::string family = lower(trim(family_in));
  auto need = [&](std::size_t k) {
    if (args.size() != k)
      throw ParseError(family + ": expected " + std::to_string(k) + " parameter(s), got " + std::to_string(args.size()));
  };
  try {
    if (family == "exp" || family == "exponential") {
      need(1);
      return Distribution::exponential(parse_double(args[0]));
    }
    if (family == "benford") {
      need(1);
      return Distribution::benford(parse_double(args[0]));
    }
    if (family == "pareto") {
      need(1);
      return Distribution::pareto(parse_double(args[0]));
    }
    if (family == "normal") {
      need(2);
      return Distribution::normal(parse_double(args[0]), parse_double(args[1]));
    }
    if (family == "uniform") {
      need(2);
      return Distribution::uniform(parse_double(args[0]), parse_double(args[1]));
    }
    if (family == "two_point") {
      need(1);
      return Distribution::two_point(parse_rational(args[0]));
    }
    if (family == "mixture" || family == "atom_uniform_mixture") {
      need(2);
      return Distribution::atom_uniform_mixture(parse_rational(args[0]), parse_double(args[1]));
    }
    if (family == "cantor") {
      need(0);
      return Distribution::cantor();
    }
    if (family == "inverse_cantor") {
      need(0);
      return Distribution::inverse_cantor();
    }
    if (family == "point_mass" || family == "delta") {
      need(1);
      return Distribution::point_mass(parse_double(args[0]));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown family '" + family_in + "'");
}

// Exact masses are kept only when the decimal values sum to exactly 1.
inline Distribution empirical_from(const std::vector<std::pair<double, double>>& atoms,
                                   const std::vector<std::optional<Rational>>& exact) {
  std::optional<std::vector<Rational>> ex(std::vector<Rational>{});
  Rational sum(0);
  for (const auto& r : exact) {
    if (!r) {
      ex.reset();
      break;
    }
    ex->push_back(*r);
    sum = sum + *r;
  }
  if (ex && !(sum == Rational(1))) ex.reset();
  try {
    return Distribution::empirical(atoms, ex);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline std::optional<Rational> exact_of(const json& v) {
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number()) return Rational::from_shortest_decimal(v.get<double>());
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

inline double number_of(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_double(v.get<std::string>());
  throw ParseError("expected a number, got " + v.dump());
}

inline std::string arg_of(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) {
    // Shortest round-trip decimal, so 0.3 stays 3/10.
    if (auto r = Rational::from_shortest_decimal(v.get<double>())) return r->to_string();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  throw ParseError("bad parameter " + v.dump());
}

inline std::vector<std::pair<double, double>> atom_pairs(const json& atoms, std::vector<std::optional<Rational>>* exact) {
  if (!atoms.is_array() || atoms.empty()) throw ParseError("'atoms' must be a non-empty array");
  std::vector<std::pair<double, double>> out;
  for (const auto& a : atoms) {
    if (!a.is_object() || !a.contains("x") || !a.contains("p")) throw ParseError("each atom needs 'x' and 'p'");
    out.push_back({number_of(a["x"]), number_of(a["p"])});
    if (exact) exact->push_back(exact_of(a["p"]));
  }
  return out;
}

}  // namespace detail

/// {"family": "...", "params": [...] | {...}, "dilation": s} or {"atoms": [...]}.
inline Distribution spec_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("spec must be a JSON object");
  Distribution d = Distribution::cantor();
  if (j.contains("atoms")) {
    std::vector<std::optional<Rational>> exact;
    auto pairs = detail::atom_pairs(j["atoms"], &exact);
    d = detail::empirical_from(pairs, exact);
  } else {
    if (!j.contains("family") || !j["family"].is_string()) throw ParseError("spec needs a 'family' string");
    std::vector<std::string> args;
    if (j.contains("params")) {
      const auto& p = j["params"];
      if (p.is_array()) {
        for (const auto& v : p) args.push_back(detail::arg_of(v));
      } else if (p.is_object()) {
        // Named parameters in their positional order; unknown names keep input order.
        static const std::vector<std::string> order{"a", "b", "alpha", "mean", "variance", "sigma2", "x"};
        std::vector<std::pair<std::size_t, std::string>> named;
        bool known = true;
        for (const auto& [k, v] : p.items()) {
          const auto it = std::find(order.begin(), order.end(), k);
          known = known && it != order.end();
          named.push_back({static_cast<std::size_t>(it - order.begin()), detail::arg_of(v)});
        }
        if (known) std::stable_sort(named.begin(), named.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        for (auto& [rank, v] : named) args.push_back(std::move(v));
      } else {
        args.push_back(detail::arg_of(p));
      }
    }
    d = detail::build(j["family"].get<std::string>(), args);
  }
  if (j.contains("dilation")) {
    const double s = detail::number_of(j["dilation"]);
    if (!(s > 0) || !std::isfinite(s)) throw ParseError("dilation must be positive");
    d = d.dilate(s);
  }
  return d;
}

/// Rows "x,p" (an optional header line is skipped).
inline Distribution spec_from_csv(std::istream& in) {
  std::vector<std::pair<double, double>> atoms;
  std::vector<std::optional<Rational>> exact;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("csv row needs two columns: '" + line + "'");
    const std::string a = trim(line.substr(0, comma)), b = trim(line.substr(comma + 1));
    if (first && !a.empty() && std::isalpha(static_cast<unsigned char>(a[0]))) {
      first = false;
      continue;
    }
    first = false;
    atoms.push_back({parse_double(a), parse_double(b)});
    try {
      exact.push_back(Rational::parse(b));
    } catch (const std::exception&) {
      exact.push_back(std::nullopt);
    }
  }
  if (atoms.empty()) throw ParseError("csv contains no atoms");
  return detail::empirical_from(atoms, exact);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

/// Shorthand such as exp(1), normal(0,1), mixture(1/3,2), cantor, with an
/// optional "*s" dilation suffix; inline JSON; or a .json / .csv file path.
inline Distribution parse_spec(const std::string& text_in) {
  const std::string text = trim(text_in);
  if (text.empty()) throw ParseError("empty spec");
  if (text[0] == '{') return spec_from_json(parse_json_text(text));
  const std::filesystem::path p(text);
  if (p.extension() == ".json" || p.extension() == ".csv") {
    if (p.extension() == ".json") return spec_from_json(parse_json_text(read_file(text)));
    std::istringstream in(read_file(text));
    return spec_from_csv(in);
  }
  std::string body = text;
  double scale = 1;
  const auto star = body.rfind('*');
  const auto close = body.rfind(')');
  if (star != std::string::npos && (close == std::string::npos || star > close)) {
    scale = parse_double(body.substr(star + 1));
    body = trim(body.substr(0, star));
    if (!(scale > 0) || !std::isfinite(scale)) throw ParseError("dilation must be positive");
  }
  std::string name = body;
  std::vector<std::string> args;
  const auto open = body.find('(');
  if (open != std::string::npos) {
    if (body.back() != ')') throw ParseError("unbalanced parentheses in '" + text + "'");
    name = body.substr(0, open);
    const std::string inner = body.substr(open + 1, body.size() - open - 2);
    if (!trim(inner).empty()) {
      std::stringstream ss(inner);
      std::string item;
      while (std::getline(ss, item, ',')) args.push_back(trim(item));
    }
  }
  Distribution d = detail::build(name, args);
  return scale == 1 ? d : d.dilate(scale);
}

/// {"atoms": [{"x": ..., "p": ...}]}: weights are renormalized with a warning
/// when they miss 1 by at most 1e-9, and rejected otherwise.
inline AtomicMeasure atoms_from_json(const json& j, std::vector<std::string>* warnings = nullptr) {
  if (!j.is_object() || !j.contains("atoms")) throw ParseError("atomic measure needs an 'atoms' array");
  auto pairs = detail::atom_pairs(j["atoms"], nullptr);
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> x, p;
  double total = 0;
  for (const auto& [a, w] : pairs) {
    if (!std::isfinite(a)) throw ParseError("atom locations must be finite");
    if (!(w >= 0)) throw ParseError("atom weights must be non-negative");
    x.push_back(a);
    p.push_back(w);
    total += w;
  }
  if (std::abs(total - 1) > 1e-9) throw ParseError("atom weights sum to " + fmt(total) + ", not 1");
  if (total != 1 && warnings) warnings->push_back("atom weights sum to " + fmt(total) + "; renormalized");
  return AtomicMeasure::from_weights(std::move(x), std::move(p));
}

inline AtomicMeasure parse_atoms(const std::string& text_in, std::vector<std::string>* warnings = nullptr) {
  const std::string text = trim(text_in);
  if (!text.empty() && text[0] == '{') return atoms_from_json(parse_json_text(text), warnings);
  return atoms_from_json(parse_json_text(read_file(text)), warnings);
}

inline json to_json(const AtomicMeasure& m) {
  json atoms = json::array();
  const auto p = m.p();
  for (std::size_t j = 0; j < m.n(); ++j) atoms.push_back({{"x", num(m.x()[j])}, {"p", num(p[j])}});
  return atoms;
}

inline json to_json(const ApproxResult& r) {
  return {{"n", r.measure.n()},
          {"eps", num(r.epsilon)},
          {"error", num(r.error)},
          {"n_error", num(static_cast<double>(r.measure.n()) * r.error)},
          {"certificate",
           {{"weights_optimal", r.certificate.weights_optimal}, {"locations_optimal", r.certificate.locations_optimal}}},
          {"atoms", to_json(r.measure)}};
}

inline json to_json(const AsymptoticReport& r) {
  json comps = json::object();
  for (const auto& c : r.components) comps[c.name] = num(c.value);
  json out = {{"kind", r.kind},
              {"value", num(r.value)},
              {"method", r.method},
              {"approximate", r.approximate},
              {"components", comps}};
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

}  // namespace levyq::io
