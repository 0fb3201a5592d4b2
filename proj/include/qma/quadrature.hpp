#ifndef QMA_QUADRATURE_HPP
#define QMA_QUADRATURE_HPP

// Globally adaptive Gauss-Legendre quadrature on a finite interval.
//
// Each panel is integrated with an N-point and a 2N-point rule; the 2N value is
// kept and |I_2N - I_N| is the panel error estimate. The panel with the largest
// estimate is bisected until the summed estimate drops below rel_tol * |I|.
// Repeated bisection of the end panels is a dyadic refinement toward both
// endpoints, which handles integrable algebraic endpoint singularities.

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "qma/error.hpp"

namespace qma {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  /// Maximum bisection depth of any panel.
  int max_subdivisions = 60;
  int nodes_per_panel = 32;

  void validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) detail::domain_fail("QuadratureSpec", "rel_tol must be > 0");
    if (max_subdivisions < 1) detail::domain_fail("QuadratureSpec", "max_subdivisions must be >= 1");
    if (nodes_per_panel < 2) detail::domain_fail("QuadratureSpec", "nodes_per_panel must be >= 2");
  }
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int panels = 0;
};

/// Nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline GaussLegendreRule compute_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace detail

/// Cached n-point Gauss-Legendre rule; thread-safe.
inline const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) detail::domain_fail("gauss_legendre", "n must be >= 1");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::compute_gauss_legendre(n)).first;
  return it->second;
}

namespace detail {

template <class Fn>
double apply_rule(const GaussLegendreRule& rule, Fn& f, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = mid + half * rule.nodes[i];
    const double v = f(t);
    if (!std::isfinite(v)) {
      throw QuadratureError("non-finite integrand value at t = " + std::to_string(t));
    }
    sum += rule.weights[i] * v;
  }
  return half * sum;
}

struct Panel {
  double lo;
  double hi;
  int depth;
  double value;
  double error;
};

}  // namespace detail

/// Integral of f over [lo, hi] to relative tolerance spec.rel_tol.
template <class Fn>
QuadratureResult integrate_adaptive(Fn&& f, double lo, double hi, const QuadratureSpec& spec = {}) {
  spec.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    detail::domain_fail("integrate_adaptive", "need finite lo < hi");
  }
  const GaussLegendreRule& coarse = gauss_legendre(spec.nodes_per_panel);
  const GaussLegendreRule& fine = gauss_legendre(2 * spec.nodes_per_panel);

  auto make_panel = [&](double a, double b, int depth) {
    const double i1 = detail::apply_rule(coarse, f, a, b);
    const double i2 = detail::apply_rule(fine, f, a, b);
    return detail::Panel{a, b, depth, i2, std::abs(i2 - i1)};
  };

  // Budget on the number of live panels; depth is the primary limit.
  const std::size_t max_panels = 64 * static_cast<std::size_t>(spec.max_subdivisions) + 64;
  std::vector<detail::Panel> panels{make_panel(lo, hi, 0)};
  while (true) {
    double total = 0.0;
    double error = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      error += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    if (error <= spec.rel_tol * std::abs(total) || error == 0.0) {
      return {total, error, static_cast<int>(panels.size())};
    }
    const detail::Panel p = panels[worst];
    const double mid = 0.5 * (p.lo + p.hi);
    if (p.depth >= spec.max_subdivisions || !(p.lo < mid && mid < p.hi) ||
        panels.size() >= max_panels) {
      throw QuadratureError("adaptive quadrature: tolerance " + std::to_string(spec.rel_tol) +
                            " not met within budget (estimate " + std::to_string(error) +
                            " on value " + std::to_string(total) + ", worst panel [" +
                            std::to_string(p.lo) + ", " + std::to_string(p.hi) + "])");
    }
    panels[worst] = make_panel(p.lo, mid, p.depth + 1);
    panels.push_back(make_panel(mid, p.hi, p.depth + 1));
  }
}

}  // namespace qma

#endif  // QMA_QUADRATURE_HPP
