#ifndef QMA_HESSIAN_HPP
#define QMA_HESSIAN_HPP

// Quaternionic Hessians and Monge-Ampere densities.
//
// A point of H^n is stored as 4n reals, quaternion j occupying coordinates
// [4j, 4j+4) in the order (1, i, j, k). The normalized Hessian is
//
//     A_{jk} = (1/8) sum_{m,l} conj(e_m) e_l d^2 u / dx_{j,m} dx_{k,l},
//
// which maps ||q||^2 to the identity. Under this normalization the density of
// (Delta u_a)^n for u_a = ||q||^{2a} - 1 is (1/2) a^n (a+1) ||q||^{2n(a-1)}.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qma/error.hpp"
#include "qma/moore.hpp"
#include "qma/quaternion.hpp"

namespace qma {

inline constexpr double kHessianScale = 1.0 / 8.0;

/// Largest pre-symmetrization residual accepted from a finite-difference Hessian.
inline constexpr double kMaxHessianResidual = 1e-4;

/// Fixed Hessian normalization and the constants it induces in dimension n.
struct NormalizationConstants {
  double hessian_scale = kHessianScale;
  /// Density constant of (Delta u_a)^n: (1/2) under this normalization.
  double c0 = 0.5;
  /// Energy constant: c0 * Area(S^{4n-1}) / 2 = pi^{2n} / (2 (2n-1)!).
  double c_energy = 0.0;
};

inline NormalizationConstants normalization_constants(int n) {
  if (n < 1) detail::domain_fail("normalization_constants", "n must be >= 1");
  double factorial = 1.0;
  for (int k = 2; k <= 2 * n - 1; ++k) factorial *= k;
  NormalizationConstants c;
  c.c_energy = std::pow(std::numbers::pi, 2 * n) / (2.0 * factorial);
  return c;
}

/// A point of H^n as real coordinates.
class EvaluationPoint {
 public:
  explicit EvaluationPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty() || coords_.size() % 4 != 0) {
      throw DimensionError("EvaluationPoint: coordinate count must be a positive multiple of 4, got " +
                           std::to_string(coords_.size()));
    }
    double s = 0.0;
    for (double c : coords_) {
      if (!std::isfinite(c)) detail::domain_fail("EvaluationPoint", "non-finite coordinate");
      s += c * c;
    }
    radius_ = std::sqrt(s);
  }

  std::span<const double> coords() const { return coords_; }
  double radius() const { return radius_; }
  int dimension() const { return static_cast<int>(coords_.size() / 4); }

  Quaternion quaternion(int j) const {
    const auto b = static_cast<std::size_t>(4 * j);
    return {coords_[b], coords_[b + 1], coords_[b + 2], coords_[b + 3]};
  }

 private:
  std::vector<double> coords_;
  double radius_ = 0.0;
};

/// u_a(q) = ||q||^{2a} - 1 on the unit ball of H^n.
class PowerFamilyMember {
 public:
  PowerFamilyMember(double a, int n) : a_(a), n_(n) {
    if (!std::isfinite(a) || !(a > 0.0)) detail::domain_fail("PowerFamilyMember", "exponent a must be > 0");
    if (n < 1) detail::domain_fail("PowerFamilyMember", "dimension n must be >= 1");
  }

  double a() const { return a_; }
  int n() const { return n_; }

  double at_radius(double r) const { return std::pow(r * r, a_) - 1.0; }

  double operator()(std::span<const double> coords) const {
    double s = 0.0;
    for (double c : coords) s += c * c;
    return std::pow(s, a_) - 1.0;
  }

 private:
  double a_;
  int n_;
};

struct FdHessian {
  HyperhermitianMatrix matrix;
  /// max |A - A^*| of the assembled matrix before symmetrization.
  double residual = 0.0;
};

/// Default finite-difference step at radius r.
inline double default_fd_step(double r) { return 1e-4 * std::max(1.0, r); }

/// Normalized quaternionic Hessian of `u` at `q` by central differences.
///
/// `u` takes a std::span<const double> of 4n coordinates. Pure second partials
/// use the 3-point stencil, mixed partials the 4-point cross stencil.
template <class Fn>
FdHessian fd_quaternionic_hessian(Fn&& u, const EvaluationPoint& q, double h) {
  if (!std::isfinite(h) || !(h > 0.0)) detail::domain_fail("fd_quaternionic_hessian", "step h must be > 0");
  const int n = q.dimension();
  const std::size_t dim = q.coords().size();
  std::vector<double> x(q.coords().begin(), q.coords().end());

  auto eval = [&]() {
    const double v = u(std::span<const double>(x));
    if (!std::isfinite(v)) {
      throw NumericalError("fd_quaternionic_hessian: non-finite function value");
    }
    return v;
  };

  const double f0 = eval();
  std::vector<double> hess(dim * dim);
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double xr = x[r];
      const double xc = x[c];
      double d2;
      if (r == c) {
        x[r] = xr + h;
        const double fp = eval();
        x[r] = xr - h;
        const double fm = eval();
        x[r] = xr;
        d2 = (fp - 2.0 * f0 + fm) * inv_h2;
      } else {
        x[r] = xr + h; x[c] = xc + h;
        const double fpp = eval();
        x[c] = xc - h;
        const double fpm = eval();
        x[r] = xr - h;
        const double fmm = eval();
        x[c] = xc + h;
        const double fmp = eval();
        x[r] = xr; x[c] = xc;
        d2 = (fpp - fpm - fmp + fmm) * 0.25 * inv_h2;
      }
      hess[r * dim + c] = d2;
    }
  }

  QuaternionMatrix raw(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Quaternion acc;
      for (int m = 0; m < 4; ++m) {
        const Quaternion left = Quaternion::unit(m).conj();
        for (int l = 0; l < 4; ++l) {
          const double d = hess[static_cast<std::size_t>(4 * j + m) * dim +
                                static_cast<std::size_t>(4 * k + l)];
          acc += d * (left * Quaternion::unit(l));
        }
      }
      raw(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = kHessianScale * acc;
    }
  }

  auto [matrix, residual] = HyperhermitianMatrix::symmetrized(raw);
  if (residual > kMaxHessianResidual) {
    throw NumericalError("fd_quaternionic_hessian: hyperhermitian residual " +
                         std::to_string(residual) + " exceeds 1e-4 (bad step or non-smooth point)");
  }
  return {std::move(matrix), residual};
}

/// Coefficients of the normalized Hessian of u_a: alpha I + beta Q, Q_{jk} = conj(q_j) q_k.
struct HessianCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
};

/// alpha = a s^{a-1}, beta = a(a-1)/2 s^{a-2}, with s = ||q||^2.
inline HessianCoefficients power_hessian_closed(const PowerFamilyMember& member, double s) {
  if (!std::isfinite(s) || !(s > 0.0)) detail::domain_fail("power_hessian_closed", "s must be > 0");
  const double a = member.a();
  return {a * std::pow(s, a - 1.0), 0.5 * a * (a - 1.0) * std::pow(s, a - 2.0)};
}

/// Closed-form normalized Hessian of u_a at q, assembled as a matrix.
inline HyperhermitianMatrix power_hessian_matrix(const PowerFamilyMember& member,
                                                 const EvaluationPoint& q) {
  if (q.dimension() != member.n()) throw DimensionError("power_hessian_matrix: dimension mismatch");
  const auto [alpha, beta] = power_hessian_closed(member, q.radius() * q.radius());
  std::vector<Quaternion> quats;
  for (int j = 0; j < q.dimension(); ++j) quats.push_back(q.quaternion(j));
  return alpha * HyperhermitianMatrix::identity(quats.size()) +
         beta * HyperhermitianMatrix::outer(quats);
}

namespace detail {
inline void require_open_unit(const char* where, double r) {
  if (!std::isfinite(r) || !(r > 0.0) || !(r < 1.0)) domain_fail(where, "radius must lie in (0, 1)");
}
}  // namespace detail

/// Density of (Delta u_a)^n against Lebesgue measure: (1/2) a^n (a+1) r^{2n(a-1)}.
inline double ma_density(const PowerFamilyMember& member, double r) {
  detail::require_open_unit("ma_density", r);
  const double a = member.a();
  const int n = member.n();
  return 0.5 * std::pow(a, n) * (a + 1.0) * std::pow(r, 2.0 * n * (a - 1.0));
}

/// Density of Delta u_{a_1} ^ ... ^ Delta u_{a_n} at radius r:
///   prod alpha_i + (r^2 / n) sum_i beta_i prod_{j != i} alpha_j.
inline double mixed_density(std::span<const PowerFamilyMember> members, double r) {
  detail::require_open_unit("mixed_density", r);
  const std::size_t n = members.size();
  if (n == 0) throw DimensionError("mixed_density: empty member list");
  for (const auto& m : members) {
    if (static_cast<std::size_t>(m.n()) != n) {
      throw DimensionError("mixed_density: expected " + std::to_string(n) +
                           " members of dimension " + std::to_string(n));
    }
  }
  const double s = r * r;
  // Hot path inside the energy quadratures: no heap allocation for small n.
  std::array<HessianCoefficients, 8> small{};
  std::vector<HessianCoefficients> large;
  std::span<HessianCoefficients> coef;
  if (n <= small.size()) {
    coef = std::span<HessianCoefficients>(small.data(), n);
  } else {
    large.resize(n);
    coef = large;
  }
  for (std::size_t i = 0; i < n; ++i) coef[i] = power_hessian_closed(members[i], s);

  double prod = 1.0;
  for (const auto& c : coef) prod *= c.alpha;
  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double term = coef[i].beta;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) term *= coef[j].alpha;
    cross += term;
  }
  return prod + s / static_cast<double>(n) * cross;
}

/// `count` points of H^n with radius uniform in [r_min, r_max] and uniform direction.
inline std::vector<EvaluationPoint> sample_ball_points(int n, int count, double r_min, double r_max,
                                                       std::uint64_t seed) {
  if (n < 1 || count < 0) detail::domain_fail("sample_ball_points", "need n >= 1 and count >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> radius(r_min, r_max);
  std::vector<EvaluationPoint> points;
  points.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<double> v(static_cast<std::size_t>(4 * n));
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& c : v) {
        c = gauss(rng);
        norm2 += c * c;
      }
    } while (norm2 < 1e-12);
    const double scale = radius(rng) / std::sqrt(norm2);
    for (double& c : v) c *= scale;
    points.emplace_back(std::move(v));
  }
  return points;
}

/// Outcome of comparing finite-difference MA densities with the closed form.
struct DensityCheckReport {
  double max_rel_err = 0.0;
  double max_hh_residual = 0.0;
  int points_tested = 0;
  /// Range of det(FD Hessian) / (a^n (a+1) r^{2n(a-1)}), i.e. the fitted C_0.
  double c0_min = 0.0;
  double c0_max = 0.0;
};

inline DensityCheckReport density_check(const PowerFamilyMember& member, int samples,
                                        std::optional<double> step = std::nullopt,
                                        std::uint64_t seed = 20240607, double r_min = 0.2,
                                        double r_max = 0.9) {
  if (samples < 1) detail::domain_fail("density_check", "samples must be >= 1");
  DensityCheckReport report;
  report.c0_min = std::numeric_limits<double>::infinity();
  report.c0_max = -std::numeric_limits<double>::infinity();
  const double a = member.a();
  const int n = member.n();
  for (const auto& q : sample_ball_points(n, samples, r_min, r_max, seed)) {
    const double r = q.radius();
    const double h = step.value_or(default_fd_step(r));
    const FdHessian fd = fd_quaternionic_hessian(member, q, h);
    const double numeric = moore_det(fd.matrix);
    const double closed = ma_density(member, r);
    const double fitted = numeric / (std::pow(a, n) * (a + 1.0) * std::pow(r, 2.0 * n * (a - 1.0)));
    report.max_rel_err = std::max(report.max_rel_err, std::abs(numeric - closed) / std::abs(closed));
    report.max_hh_residual = std::max(report.max_hh_residual, fd.residual);
    report.c0_min = std::min(report.c0_min, fitted);
    report.c0_max = std::max(report.c0_max, fitted);
    ++report.points_tested;
  }
  return report;
}

}  // namespace qma

#endif  // QMA_HESSIAN_HPP
