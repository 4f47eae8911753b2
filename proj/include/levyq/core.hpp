#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace levyq {

// Extended reals are plain IEEE doubles: +/-infinity are ordinary values and
// the library never forms inf - inf.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised when two computations that must agree (primal/dual distance,
/// certificates, quadrature routes) disagree beyond their tolerance.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for inputs outside the supported structure (e.g. a singular part
/// with infinitely many atoms, or iota of a non-rational location).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed spec / measure / command-line input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default tolerances. Every downstream tolerance derives from `bisection`.
struct Tolerances {
  double bisection = 1e-12;    // absolute, on y in ell / ell_star
  double p_space = 1e-13;      // greedy sup-search in probability space
  double level = 1e-13;        // outer bisection on the candidate error
  double consistency = 1e-9;   // primal vs dual distance
  double certificate = 1e-8;   // slack when replaying optimality conditions
};

inline double clamp01(double t) { return t < 0 ? 0 : (t > 1 ? 1 : t); }

}  // namespace levyq
