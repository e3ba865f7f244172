#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "curricula/error.hpp"

namespace curricula::fdist {

inline constexpr int kMaxFractionTerms = 200;
inline constexpr double kFractionEpsilon = 1e-12;

namespace detail {

// Modified Lentz evaluation of the incomplete beta continued fraction.
inline double beta_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxFractionTerms; ++m) {
    const double m2 = 2.0 * m;
    // Even step.
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    // Odd step.
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kFractionEpsilon) return h;
  }
  throw ConvergenceError("incomplete beta continued fraction did not converge (a=" +
                         std::to_string(a) + ", b=" + std::to_string(b) + ")");
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b). `y` must equal 1 - x; passing it
/// separately keeps precision when x is close to 1.
inline double incomplete_beta(double a, double b, double x, double y) {
  if (!(a > 0.0) || !(b > 0.0)) throw InputError("incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_fraction(a, b, x) / a;
  return 1.0 - front * detail::beta_fraction(b, a, y) / b;
}

inline double incomplete_beta(double a, double b, double x) {
  return incomplete_beta(a, b, x, 1.0 - x);
}

namespace detail {

inline void check_df(int d1, int d2) {
  if (d1 <= 0 || d2 <= 0) throw InputError("degrees of freedom must be positive");
}

inline void check_x(double x) {
  if (std::isnan(x) || x < 0.0) throw InputError("F statistic must be non-negative");
}

}  // namespace detail

/// P(F <= x) for F ~ F(d1, d2).
inline double f_cdf(double x, int d1, int d2) {
  detail::check_df(d1, d2);
  detail::check_x(x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double num = d1 * x;
  const double den = num + d2;
  return incomplete_beta(d1 / 2.0, d2 / 2.0, num / den, d2 / den);
}

/// P(F > x), evaluated directly rather than as 1 - f_cdf.
inline double f_sf(double x, int d1, int d2) {
  detail::check_df(d1, d2);
  detail::check_x(x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double num = d1 * x;
  const double den = num + d2;
  return incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / den, num / den);
}

inline constexpr double kQuantileCdfTolerance = 1e-9;

/// x with f_cdf(x, d1, d2) = p, by doubling to bracket then bisection to
/// machine resolution. f_quantile(1 - alpha, ...) is the critical value.
inline double f_quantile(double p, int d1, int d2) {
  detail::check_df(d1, d2);
  if (!(p > 0.0 && p < 1.0)) throw InputError("quantile probability must lie in (0, 1)");
  double lo = 0.0;
  double hi = 1.0;
  int expansions = 0;
  while (f_cdf(hi, d1, d2) < p) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 1000) throw ConvergenceError("could not bracket the F quantile");
  }
  for (int iter = 0; iter < 400 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi;
       ++iter) {
    const double mid = lo + (hi - lo) / 2.0;
    if (f_cdf(mid, d1, d2) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double x = lo + (hi - lo) / 2.0;
  if (std::fabs(f_cdf(x, d1, d2) - p) > kQuantileCdfTolerance) {
    throw ConvergenceError("F quantile search did not reach the requested tolerance");
  }
  return x;
}

}  // namespace curricula::fdist
