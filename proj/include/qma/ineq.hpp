#ifndef QMA_INEQ_HPP
#define QMA_INEQ_HPP

// Constants and inequalities of the Hoelder-type p-energy estimate
//
//     e_p(u_0, ..., u_n) <= D_p e_p(u_0)^{p/(n+p)} e_p(u_1)^{1/(n+p)} ... e_p(u_n)^{1/(n+p)}
//
// evaluated on the radial power family, and a search for points of the
// two-parameter slice u_0 = u_a, u_1 = ... = u_n = u_b where the energy ratio
// exceeds 1 (so the optimal constant exceeds 1 for p != 1).

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qma/energy.hpp"
#include "qma/error.hpp"
#include "qma/quadrature.hpp"
#include "qma/search.hpp"
#include "qma/specfun.hpp"

namespace qma {

namespace detail {
inline void require_energy_exponent(const char* where, double p) {
  if (!std::isfinite(p) || !(p > 0.0)) domain_fail(where, "p must be finite and > 0");
}
inline void require_dimension(const char* where, int n) {
  if (n < 1) domain_fail(where, "n must be >= 1");
}
}  // namespace detail

/// alpha(p, n) = (p+2) ((p+1)/p)^{n-1} - (p+1).
inline double alpha_const(double p, int n) {
  detail::require_energy_exponent("alpha_const", p);
  detail::require_dimension("alpha_const", n);
  return (p + 2.0) * std::pow((p + 1.0) / p, n - 1) - (p + 1.0);
}

/// D_p: p^{-alpha/(1-p)} for p < 1, 1 for p = 1, p^{p alpha/(p-1)} for p > 1.
inline double d_const(double p, int n) {
  const double alpha = alpha_const(p, n);
  if (p == 1.0) return 1.0;
  if (p < 1.0) return std::pow(p, -alpha / (1.0 - p));
  return std::pow(p, p * alpha / (p - 1.0));
}

/// f(p, n) = 1/n + p/(n+p) + psi(n) - psi(n+p+1); nonzero for p != 1.
inline double f_lemma(double p, int n) {
  detail::require_energy_exponent("f_lemma", p);
  detail::require_dimension("f_lemma", n);
  const double nd = n;
  return 1.0 / nd + p / (nd + p) + digamma(nd) - digamma(nd + p + 1.0);
}

/// F(a, b): positive exactly where the energy ratio on the (u_a, u_b, ..., u_b) slice exceeds 1.
inline double F_func(double p, int n, double a, double b) {
  detail::require_energy_exponent("F_func", p);
  detail::require_dimension("F_func", n);
  detail::require_exponent("F_func", a);
  detail::require_exponent("F_func", b);
  const double nd = n;
  const double e1 = (nd * p + nd) / (nd + p);
  const double e2 = p / (nd + p);
  const double e3 = nd / (nd + p);
  const double lhs = std::pow(b / a, e1) * std::pow((b + 1.0) / (a + 1.0), e2) *
                     beta(p + 1.0, (b + 1.0) * nd / a);
  const double rhs = std::pow(beta(p + 1.0, (a + 1.0) * nd / a), e2) *
                     std::pow(beta(p + 1.0, (b + 1.0) * nd / b), e3);
  return lhs - rhs;
}

/// dF/db at a general (a, b), term by term via dB/dy = B (psi(y) - psi(x+y)).
inline double dFdb(double p, int n, double a, double b) {
  detail::require_energy_exponent("dFdb", p);
  detail::require_dimension("dFdb", n);
  detail::require_exponent("dFdb", a);
  detail::require_exponent("dFdb", b);
  const double nd = n;
  const double e1 = (nd * p + nd) / (nd + p);
  const double e2 = p / (nd + p);
  const double e3 = nd / (nd + p);
  const double ya = (b + 1.0) * nd / a;  // second Beta argument of the mixed term
  const double yb = (b + 1.0) * nd / b;  // second Beta argument of e_p(u_b)
  const double b_mixed = beta(p + 1.0, ya);
  const double b_a = beta(p + 1.0, (a + 1.0) * nd / a);
  const double b_b = beta(p + 1.0, yb);

  const double t1 = e1 * std::pow(a, -e1) * std::pow(b, e1 - 1.0) * std::pow((b + 1.0) / (a + 1.0), e2) * b_mixed;
  const double t2 = e2 * std::pow(b / a, e1) * std::pow(a + 1.0, -e2) * std::pow(b + 1.0, e2 - 1.0) * b_mixed;
  const double t3 = std::pow(b / a, e1) * std::pow((b + 1.0) / (a + 1.0), e2) * (nd / a) * b_mixed *
                    (digamma(ya) - digamma(p + 1.0 + ya));
  const double t4 = nd * nd / (b * b * (nd + p)) * std::pow(b_a, e2) * std::pow(b_b, e3) *
                    (digamma(yb) - digamma(p + 1.0 + yb));
  return t1 + t2 + t3 + t4;
}

/// dF/db(1, 1) = ((2n^2 + np)/(n+p)) B(p+1, 2n) f(p, 2n).
inline double dFdb_closed(double p, int n) {
  detail::require_energy_exponent("dFdb_closed", p);
  detail::require_dimension("dFdb_closed", n);
  const double nd = n;
  return (2.0 * nd * nd + nd * p) / (nd + p) * beta(p + 1.0, 2.0 * nd) * f_lemma(p, 2 * n);
}

/// e_p(u_a, u_b, ..., u_b) / (e_p(u_a)^{p/(n+p)} e_p(u_b)^{n/(n+p)}) in closed form.
/// The energy constant cancels, so the ratio does not depend on normalization.
inline double ratio_R(const EnergyParams& params, double a, double b) {
  detail::require_energy_exponent("ratio_R", params.p);
  detail::require_dimension("ratio_R", params.n);
  detail::require_exponent("ratio_R", a);
  detail::require_exponent("ratio_R", b);
  const double p = params.p;
  const double nd = params.n;
  const double log_num = nd * std::log(b) + std::log1p(b) - std::log(a) + log_beta(p + 1.0, (b + 1.0) * nd / a);
  const double log_ea = (nd - 1.0) * std::log(a) + std::log1p(a) + log_beta(p + 1.0, (a + 1.0) * nd / a);
  const double log_eb = (nd - 1.0) * std::log(b) + std::log1p(b) + log_beta(p + 1.0, (b + 1.0) * nd / b);
  return std::exp(log_num - (p / (nd + p)) * log_ea - (nd / (nd + p)) * log_eb);
}

/// Mutual energy by quadrature over the product of closed-form self-energies.
inline double ratio_general(const EnergyParams& params, double a0, std::span<const double> tail,
                            const QuadratureSpec& spec = {}) {
  detail::require_energy_exponent("ratio_general", params.p);
  const double p = params.p;
  const double nd = params.n;
  const double mutual = energy_numeric(params, a0, tail, spec).value;
  double log_den = (p / (nd + p)) * std::log(energy_closed(params, a0));
  for (double b : tail) log_den += std::log(energy_closed(params, b)) / (nd + p);
  return std::exp(std::log(mutual) - log_den);
}

inline double ratio_general(const EnergyParams& params, double a0, std::initializer_list<double> tail,
                            const QuadratureSpec& spec = {}) {
  return ratio_general(params, a0, std::span<const double>(tail.begin(), tail.size()), spec);
}

struct TwoTermCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  /// p^{-1/(1-p)}.
  double constant = 0.0;
  /// 1 - lhs / rhs; non-negative exactly when the inequality holds.
  double slack = 0.0;
};

/// e_p(u_a, u_b, T) <= p^{-1/(1-p)} e_p(u_a, u_a, T)^{p/(p+1)} e_p(u_b, u_b, T)^{1/(p+1)},
/// with T made of n-1 copies of u_c (empty for n = 1).
inline TwoTermCheck check_two_term(double p, int n, double a, double b, double c,
                                   const QuadratureSpec& spec = {}) {
  if (!std::isfinite(p) || !(p > 0.0) || !(p < 1.0)) {
    detail::domain_fail("check_two_term", "p must lie in (0, 1)");
  }
  detail::require_dimension("check_two_term", n);
  detail::require_exponent("check_two_term", a);
  detail::require_exponent("check_two_term", b);
  detail::require_exponent("check_two_term", c);
  const EnergyParams params{p, n};
  auto tail_with = [&](double first) {
    std::vector<double> tail(static_cast<std::size_t>(n), c);
    tail.front() = first;
    return tail;
  };
  const double mixed = energy_numeric(params, a, tail_with(b), spec).value;
  const double self_a = energy_numeric(params, a, tail_with(a), spec).value;
  const double self_b = energy_numeric(params, b, tail_with(b), spec).value;

  TwoTermCheck out;
  out.constant = std::pow(p, -1.0 / (1.0 - p));
  out.lhs = mixed;
  out.rhs = out.constant * std::pow(self_a, p / (p + 1.0)) * std::pow(self_b, 1.0 / (p + 1.0));
  out.slack = 1.0 - out.lhs / out.rhs;
  out.holds = out.lhs <= out.rhs;
  return out;
}

/// alpha, D_p and f(p, n), f(p, 2n).
struct ConstantsReport {
  double p = 0.0;
  int n = 0;
  double alpha = 0.0;
  double d_p = 0.0;
  double f_pn = 0.0;
  double f_p2n = 0.0;
};

inline ConstantsReport constants_report(double p, int n) {
  return {p, n, alpha_const(p, n), d_const(p, n), f_lemma(p, n), f_lemma(p, 2 * n)};
}

/// A point (a*, b*) of the slice where the energy ratio exceeds 1, with a
/// quadrature cross-check. For p = 1 it instead records the best ratio found
/// and `violation` is false.
struct RatioCertificate {
  double p = 0.0;
  int n = 0;
  double a_star = 0.0;
  double b_star = 0.0;
  double ratio = 0.0;
  double f_value = 0.0;
  double quad_crosscheck = 0.0;
  double error_bound = 0.0;
  bool violation = false;
};

struct SearchOptions {
  int grid = 64;
  double box_lo = 0.1;
  double box_hi = 4.0;
  int golden_iterations = 60;
  int sweeps = 8;
  int threads = 1;
  QuadratureSpec quadrature{};

  void validate() const {
    if (grid < 2) detail::domain_fail("SearchOptions", "grid must be >= 2");
    if (!(box_lo > 0.0) || !(box_hi > box_lo)) detail::domain_fail("SearchOptions", "need 0 < box_lo < box_hi");
    if (golden_iterations < 1 || sweeps < 0) detail::domain_fail("SearchOptions", "bad refinement budget");
    quadrature.validate();
  }
};

/// One row of a ratio scan.
struct RatioSample {
  double a = 0.0;
  double b = 0.0;
  double ratio = 0.0;
};

/// ratio_R on the log grid [lo, hi]^2, a-major order.
inline std::vector<RatioSample> ratio_scan(const EnergyParams& params, int grid, double lo, double hi,
                                           int threads = 1) {
  const std::vector<double> g = log_grid(lo, hi, grid);
  const std::vector<double> table =
      evaluate_grid([&](double a, double b) { return ratio_R(params, a, b); }, g, g, threads);
  std::vector<RatioSample> out;
  out.reserve(table.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out.push_back({g[i], g[j], table[i * g.size() + j]});
  return out;
}

/// Largest ratio; ties go to the lexicographically smallest (a, b).
inline RatioSample scan_argmax(const std::vector<RatioSample>& samples) {
  if (samples.empty()) detail::domain_fail("scan_argmax", "empty scan");
  RatioSample best = samples.front();
  for (const auto& s : samples) {
    if (s.ratio > best.ratio ||
        (s.ratio == best.ratio && (s.a < best.a || (s.a == best.a && s.b < best.b)))) {
      best = s;
    }
  }
  return best;
}

namespace detail {

inline double claimed_relative_error(const EnergyResult& r, const QuadratureSpec& spec) {
  return std::max(r.abs_error / std::abs(r.value), spec.rel_tol);
}

}  // namespace detail

/// Search the slice for a ratio above 1 and certify it by quadrature.
///
/// Grid scan of ratio_R, a seeded line search in b at a = 1 (direction from the
/// sign of f(p, 2n)), then coordinate-wise golden-section refinement in log
/// coordinates. Throws CertificateError when the result cannot be certified.
inline RatioCertificate find_violation(const EnergyParams& params, const SearchOptions& opts = {}) {
  detail::require_energy_exponent("find_violation", params.p);
  detail::require_dimension("find_violation", params.n);
  opts.validate();
  const double p = params.p;
  const int n = params.n;
  const bool sharp_case = (p == 1.0);

  auto ratio_at = [&](double a, double b) { return ratio_R(params, a, b); };
  RatioSample best = scan_argmax(ratio_scan(params, opts.grid, opts.box_lo, opts.box_hi, opts.threads));

  if (!sharp_case) {
    const double llo = std::log(opts.box_lo);
    const double lhi = std::log(opts.box_hi);
    // Near (1, 1), F(1, b) ~ dF/db(1, 1) (b - 1) and dF/db(1, 1) has the sign of f(p, 2n).
    if (opts.box_lo < 1.0 && 1.0 < opts.box_hi) {
      const bool upward = f_lemma(p, 2 * n) > 0.0;
      const LineMaximum seed = golden_section_maximize(
          [&](double lb) { return ratio_at(1.0, std::exp(lb)); }, upward ? 0.0 : llo, upward ? lhi : 0.0,
          opts.golden_iterations);
      if (seed.value > best.ratio) best = {1.0, std::exp(seed.x), seed.value};
    }

    const double step = (lhi - llo) / (opts.grid - 1);
    for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
      const double la = std::log(best.a);
      const LineMaximum along_a = golden_section_maximize(
          [&](double x) { return ratio_at(std::exp(x), best.b); }, std::max(llo, la - 2.0 * step),
          std::min(lhi, la + 2.0 * step), opts.golden_iterations);
      if (along_a.value > best.ratio) best = {std::exp(along_a.x), best.b, along_a.value};

      const double lb = std::log(best.b);
      const LineMaximum along_b = golden_section_maximize(
          [&](double x) { return ratio_at(best.a, std::exp(x)); }, std::max(llo, lb - 2.0 * step),
          std::min(lhi, lb + 2.0 * step), opts.golden_iterations);
      if (along_b.value > best.ratio) best = {best.a, std::exp(along_b.x), along_b.value};
    }
  }

  RatioCertificate cert;
  cert.p = p;
  cert.n = n;
  cert.a_star = best.a;
  cert.b_star = best.b;
  cert.ratio = ratio_at(best.a, best.b);
  cert.f_value = F_func(p, n, best.a, best.b);

  // Independent route: every energy by radial quadrature.
  const std::vector<double> tail_b(static_cast<std::size_t>(n), best.b);
  const std::vector<double> tail_a(static_cast<std::size_t>(n), best.a);
  const EnergyResult mutual = energy_numeric(params, best.a, tail_b, opts.quadrature);
  const EnergyResult self_a = energy_numeric(params, best.a, tail_a, opts.quadrature);
  const EnergyResult self_b = energy_numeric(params, best.b, tail_b, opts.quadrature);
  const double wa = p / (n + p);
  const double wb = n / (n + p);
  cert.quad_crosscheck = mutual.value / (std::pow(self_a.value, wa) * std::pow(self_b.value, wb));
  const double rel = detail::claimed_relative_error(mutual, opts.quadrature) +
                     wa * detail::claimed_relative_error(self_a, opts.quadrature) +
                     wb * detail::claimed_relative_error(self_b, opts.quadrature) + 1e-12;
  cert.error_bound = cert.ratio * rel;

  const double disagreement = std::abs(cert.ratio - cert.quad_crosscheck);
  if (disagreement > cert.error_bound) {
    throw CertificateError("find_violation: closed-form ratio " + std::to_string(cert.ratio) +
                           " and quadrature ratio " + std::to_string(cert.quad_crosscheck) +
                           " differ by more than the error bound " + std::to_string(cert.error_bound));
  }

  if (sharp_case) {
    if (cert.ratio > 1.0 + 1e-6) {
      throw CertificateError("find_violation: p = 1 but ratio " + std::to_string(cert.ratio) + " exceeds 1");
    }
    cert.violation = false;
    return cert;
  }
  if (!(cert.ratio - 1.0 > 10.0 * cert.error_bound)) {
    throw CertificateError("find_violation: best ratio " + std::to_string(cert.ratio) +
                           " is not separated from 1 by 10x the error bound " +
                           std::to_string(cert.error_bound));
  }
  cert.violation = true;
  return cert;
}

}  // namespace qma

#endif  // QMA_INEQ_HPP
