#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "levyq/core.hpp"

namespace levyq {

/// Standard normal CDF, accurate in both tails.
inline double normal_cdf(double z) {
  if (z == -kInf) return 0;
  if (z == kInf) return 1;
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

inline double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2 * std::numbers::pi);
}

/// Standard normal quantile: Wichura's AS241 (PPND16) rational approximation
/// followed by two Newton steps on the erfc-based CDF.
inline double normal_quantile(double p) {
  if (p <= 0) return -kInf;
  if (p >= 1) return kInf;
  const double q = p - 0.5;
  double z;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    z = q *
        (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
             45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
          133.14166789178437745) * r + 3.387132872796366608) /
        (((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
             21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
          42.313330701600911252) * r + 1.0);
  } else {
    double r = q < 0 ? p : 1 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5) {
      r -= 1.6;
      z = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
              1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
               0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
    } else {
      r -= 5;
      z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
              0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
               7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
    }
    if (q < 0) z = -z;
  }
  // Newton on the tail that keeps the residual well conditioned.
  for (int i = 0; i < 2; ++i) {
    const double pdf = normal_pdf(z);
    if (!(pdf > 0)) break;
    const double resid = p < 0.5 ? normal_cdf(z) - p : (1 - p) - 0.5 * std::erfc(z / std::numbers::sqrt2);
    z -= resid / pdf;
  }
  return z;
}

/// Li_{1/2}(z) = sum_{k>=1} z^k / sqrt(k) for |z| < 1.
inline double polylog_half(double z) {
  if (!(std::abs(z) < 1)) throw std::domain_error("polylog_half: requires |z| < 1");
  double sum = 0, power = 1;
  for (int k = 1; k <= 100000; ++k) {
    power *= z;
    const double term = power / std::sqrt(static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-16) break;
  }
  return sum;
}

}  // namespace levyq
