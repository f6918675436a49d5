#pragma once

// P-value machinery: erfc and the regularized upper incomplete gamma Q(a,x).

#include <cmath>
#include <limits>
#include <string>

#include "prs/error.hpp"

namespace prs {

inline double erfc(double x) { return std::erfc(x); }

namespace detail {

// P(a,x) by its power series; converges quickly for x < a + 1.
inline double igam_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a,x) by the modified Lentz continued fraction; for x >= a + 1.
inline double igamc_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

inline double igamc(double a, double x) {
  if (!(a > 0) || !(x >= 0) || std::isinf(a))
    throw Error(ErrorCode::InvalidInput, "igamc domain: a > 0, x >= 0 (a=" + std::to_string(a) + ", x=" + std::to_string(x) + ")");
  if (x == 0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - detail::igam_series(a, x);
  return detail::igamc_fraction(a, x);
}

}  // namespace prs
