#ifndef QMA_SPECFUN_HPP
#define QMA_SPECFUN_HPP

// Real special functions on the positive half-line: log-Gamma, Beta, digamma.
//
// Only strictly positive arguments are supported; there are no reflection
// formulas. log_gamma uses an upward shift to x >= 15 followed by the Stirling
// series, digamma an upward shift to x >= 10 followed by the asymptotic series
// through the 1/x^12 term.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qma/error.hpp"

namespace qma {

/// A special-function value together with an a-priori absolute error bound.
struct SpecialValue {
  double value = 0.0;
  double abs_error_bound = 0.0;
};

namespace detail {

inline void require_positive(const char* where, double x) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    domain_fail(where, "argument must be finite and > 0, got " + std::to_string(x));
  }
}

constexpr double kLogGammaShift = 15.0;
constexpr double kDigammaShift = 10.0;

// Stirling series coefficients B_{2k} / (2k (2k-1)), k = 1..7.
constexpr std::array<double, 7> kStirling = {
    1.0 / 12.0,     -1.0 / 360.0,           1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,   -691.0 / 360360.0,      1.0 / 156.0,
};

// Asymptotic digamma coefficients B_{2k} / (2k), k = 1..6.
constexpr std::array<double, 6> kDigammaSeries = {
    1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0,
};

inline double stirling_log_gamma(double z) {
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double series = 0.0;
  double pow = inv;
  for (double c : kStirling) {
    series += c * pow;
    pow *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace detail

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  detail::require_positive("log_gamma", x);
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x >= detail::kLogGammaShift) return detail::stirling_log_gamma(x);

  // Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1)).
  double z = x;
  double product = 1.0;
  while (z < detail::kLogGammaShift) {
    product *= z;
    z += 1.0;
  }
  return detail::stirling_log_gamma(z) - std::log(product);
}

/// ln B(x, y). Symmetric in its arguments by construction.
inline double log_beta(double x, double y) {
  detail::require_positive("beta", x);
  detail::require_positive("beta", y);
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return log_gamma(lo) + log_gamma(hi) - log_gamma(lo + hi);
}

/// B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y).
inline double beta(double x, double y) { return std::exp(log_beta(x, y)); }

/// psi(x) = Gamma'(x) / Gamma(x) for x > 0.
inline double digamma(double x) {
  detail::require_positive("digamma", x);
  double shift = 0.0;
  double z = x;
  while (z < detail::kDigammaShift) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  const double inv2 = 1.0 / (z * z);
  double series = 0.0;
  double pow = inv2;
  for (double c : detail::kDigammaSeries) {
    series += c * pow;
    pow *= inv2;
  }
  return shift + std::log(z) - 0.5 / z - series;
}

/// Values paired with the design accuracy targets of the routines above.
inline SpecialValue log_gamma_value(double x) {
  const double v = log_gamma(x);
  return {v, 1e-12 * std::max(1.0, std::abs(v))};
}

inline SpecialValue beta_value(double x, double y) {
  const double v = beta(x, y);
  return {v, 1e-11 * v};
}

inline SpecialValue digamma_value(double x) { return {digamma(x), 1e-12}; }

}  // namespace qma

#endif  // QMA_SPECFUN_HPP
