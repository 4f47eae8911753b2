#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "levyq/core.hpp"

namespace levyq {

/// Exact rational p/q with q > 0, always stored in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Parses "p/q", an integer, or a plain decimal such as "0.3" (read as 3/10).
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    if (text.empty()) throw ParseError("empty rational");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      const auto den = parse_int(trim(text.substr(slash + 1)));
      if (den == 0) throw ParseError("rational with zero denominator");
      return Rational(parse_int(trim(text.substr(0, slash))), den);
    }
    return parse_decimal(text);
  }

  /// Interprets a double through its shortest round-trip decimal form, so a
  /// literal 0.3 becomes 3/10 rather than the binary fraction nearest to it.
  static std::optional<Rational> from_shortest_decimal(double v) {
    if (!std::isfinite(v)) return std::nullopt;
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) return std::nullopt;
    try {
      return parse_decimal(std::string_view(buf, end - buf));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend Rational operator+(const Rational& a, const Rational& b) {
    const __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    const __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) { const __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
    if (n > kMax || -n > kMax || d > kMax) throw std::overflow_error("Rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ParseError("invalid integer '" + std::string(s) + "'");
    return v;
  }

  static Rational parse_decimal(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    int exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      exponent = static_cast<int>(parse_int(s.substr(e + 1)));
      s = s.substr(0, e);
    }
    std::string digits;
    for (char c : s) {
      if (c == '.') continue;
      if (c < '0' || c > '9') throw ParseError("invalid decimal '" + std::string(s) + "'");
      digits.push_back(c);
    }
    if (digits.empty()) throw ParseError("invalid decimal");
    if (auto dot = s.find('.'); dot != std::string_view::npos)
      exponent -= static_cast<int>(s.size() - dot - 1);
    __int128 n = 0;
    for (char c : digits) {
      n = n * 10 + (c - '0');
      if (n > (static_cast<__int128>(1) << 100)) throw ParseError("decimal too long for an exact rational");
    }
    __int128 d = 1;
    for (; exponent > 0; --exponent) {
      n *= 10;
      if (n > (static_cast<__int128>(1) << 100)) throw ParseError("decimal too large for an exact rational");
    }
    for (; exponent < 0; ++exponent) {
      d *= 10;
      if (d > (static_cast<__int128>(1) << 100)) throw ParseError("decimal too long for an exact rational");
    }
    return from_wide(negative ? -n : n, d);
  }

  void normalize() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace levyq
