#ifndef QMA_ENERGY_HPP
#define QMA_ENERGY_HPP

// p-energies of the radial power family u_a(q) = ||q||^{2a} - 1 on the unit
// ball of H^n, by radial quadrature and by the Beta-function closed form
//
//     int_B (-u_a)^p (Delta u_b)^n = C (b^n (b+1) / a) B(p+1, (b+1) n / a),
//
// with C = pi^{2n} / (2 (2n-1)!) under the toolkit Hessian normalization.

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qma/error.hpp"
#include "qma/hessian.hpp"
#include "qma/quadrature.hpp"
#include "qma/specfun.hpp"

namespace qma {

/// Energy exponent p and quaternionic dimension n.
///
/// p = 0 is accepted so that the same machinery computes total masses.
struct EnergyParams {
  double p = 1.0;
  int n = 1;

  void validate() const {
    if (!std::isfinite(p) || p < 0.0) detail::domain_fail("EnergyParams", "p must be finite and >= 0");
    if (n < 1) detail::domain_fail("EnergyParams", "n must be >= 1");
  }
};

enum class EnergyMethod { closed_form, quadrature, both };

inline const char* to_string(EnergyMethod m) {
  switch (m) {
    case EnergyMethod::closed_form: return "closed_form";
    case EnergyMethod::quadrature: return "quadrature";
    case EnergyMethod::both: return "both";
  }
  return "unknown";
}

struct EnergyResult {
  double value = 0.0;
  EnergyMethod method = EnergyMethod::quadrature;
  /// |closed - quad| / closed; only set for EnergyMethod::both.
  std::optional<double> discrepancy;
  /// Quadrature error estimate (0 for closed form).
  double abs_error = 0.0;
};

/// Area of the unit sphere S^{4n-1} in R^{4n}: 2 pi^{2n} / (2n-1)!.
inline double sphere_area(int n) {
  if (n < 1) detail::domain_fail("sphere_area", "n must be >= 1");
  double factorial = 1.0;
  for (int k = 2; k <= 2 * n - 1; ++k) factorial *= k;
  return 2.0 * std::pow(std::numbers::pi, 2 * n) / factorial;
}

/// Energy constant C of the Beta closed form.
inline double energy_constant(int n) { return normalization_constants(n).c_energy; }

/// sphere_area(n) * int_0^1 g(t) t^{4n-1} dt.
template <class Fn>
QuadratureResult integrate_radial(Fn&& g, int n, const QuadratureSpec& spec = {}) {
  if (n < 1) detail::domain_fail("integrate_radial", "n must be >= 1");
  const double power = 4.0 * n - 1.0;
  QuadratureResult r = integrate_adaptive(
      [&](double t) { return g(t) * std::pow(t, power); }, 0.0, 1.0, spec);
  const double area = sphere_area(n);
  r.value *= area;
  r.abs_error *= area;
  return r;
}

namespace detail {
inline void require_exponent(const char* where, double a) {
  if (!std::isfinite(a) || !(a > 0.0)) domain_fail(where, "exponents must be finite and > 0");
}
}  // namespace detail

/// int_B (-u_a)^p (Delta u_b)^n in closed form.
inline double energy_closed_pair(const EnergyParams& params, double a, double b) {
  params.validate();
  detail::require_exponent("energy_closed_pair", a);
  detail::require_exponent("energy_closed_pair", b);
  const int n = params.n;
  const double log_value = n * std::log(b) + std::log1p(b) - std::log(a) +
                           log_beta(params.p + 1.0, (b + 1.0) * n / a);
  return energy_constant(n) * std::exp(log_value);
}

/// e_p(u_a) = C a^{n-1} (a+1) B(p+1, (a+1) n / a).
inline double energy_closed(const EnergyParams& params, double a) {
  return energy_closed_pair(params, a, a);
}

/// Mutual energy int_B (-u_{a0})^p Delta u_{tail_1} ^ ... ^ Delta u_{tail_n} by radial quadrature.
inline EnergyResult energy_numeric(const EnergyParams& params, double a0, std::span<const double> tail,
                                   const QuadratureSpec& spec = {}) {
  params.validate();
  detail::require_exponent("energy_numeric", a0);
  if (tail.size() != static_cast<std::size_t>(params.n)) {
    throw DimensionError("energy_numeric: expected " + std::to_string(params.n) +
                         " tail exponents, got " + std::to_string(tail.size()));
  }
  std::vector<PowerFamilyMember> members;
  members.reserve(tail.size());
  for (double b : tail) {
    detail::require_exponent("energy_numeric", b);
    members.emplace_back(b, params.n);
  }
  const double p = params.p;
  const double two_a0 = 2.0 * a0;
  auto integrand = [&](double t) {
    // 1 - t^{2 a0}, accurate near t = 1.
    const double weight = -std::expm1(two_a0 * std::log(t));
    return std::pow(weight, p) * mixed_density(members, t);
  };
  const QuadratureResult q = integrate_radial(integrand, params.n, spec);
  return {q.value, EnergyMethod::quadrature, std::nullopt, q.abs_error};
}

inline EnergyResult energy_numeric(const EnergyParams& params, double a0,
                                   std::initializer_list<double> tail,
                                   const QuadratureSpec& spec = {}) {
  return energy_numeric(params, a0, std::span<const double>(tail.begin(), tail.size()), spec);
}

/// Dispatches on `method`. The closed form needs all tail exponents equal.
inline EnergyResult energy(const EnergyParams& params, double a0, std::span<const double> tail,
                           EnergyMethod method, const QuadratureSpec& spec = {}) {
  params.validate();
  if (tail.size() != static_cast<std::size_t>(params.n)) {
    throw DimensionError("energy: expected " + std::to_string(params.n) + " tail exponents, got " +
                         std::to_string(tail.size()));
  }
  auto closed = [&]() {
    for (double b : tail) {
      if (b != tail.front()) {
        detail::domain_fail("energy", "closed form requires all tail exponents equal");
      }
    }
    return energy_closed_pair(params, a0, tail.front());
  };
  switch (method) {
    case EnergyMethod::closed_form:
      return {closed(), EnergyMethod::closed_form, std::nullopt, 0.0};
    case EnergyMethod::quadrature:
      return energy_numeric(params, a0, tail, spec);
    case EnergyMethod::both: {
      const double c = closed();
      EnergyResult q = energy_numeric(params, a0, tail, spec);
      q.method = EnergyMethod::both;
      q.discrepancy = std::abs(c - q.value) / c;
      q.value = c;
      return q;
    }
  }
  return {};
}

/// int_B (Delta u_a)^n by quadrature.
inline double total_mass(const PowerFamilyMember& member, const QuadratureSpec& spec = {}) {
  const std::vector<double> tail(static_cast<std::size_t>(member.n()), member.a());
  return energy_numeric({0.0, member.n()}, member.a(), tail, spec).value;
}

/// C a^n / n.
inline double total_mass_closed(const PowerFamilyMember& member) {
  return energy_constant(member.n()) * std::pow(member.a(), member.n()) / member.n();
}

}  // namespace qma

#endif  // QMA_ENERGY_HPP
