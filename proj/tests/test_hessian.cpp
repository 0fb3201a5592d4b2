#include <gtest/gtest.h>

#include <cmath>
#include <span>
#include <vector>

#include "oracles.hpp"
#include "qma/hessian.hpp"
#include "qma/moore.hpp"

namespace {

using qma::EvaluationPoint;
using qma::PowerFamilyMember;

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double max_entry_diff(const qma::HyperhermitianMatrix& a, const qma::HyperhermitianMatrix& b) {
  double d = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) d = std::max(d, qma::max_abs_diff(a(r, c), b(r, c)));
  return d;
}

TEST(FdHessian, NormSquaredIsIdentity) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& q : qma::sample_ball_points(n, 5, 0.2, 0.9, 100 + n)) {
      const auto fd = qma::fd_quaternionic_hessian(norm2, q, qma::default_fd_step(q.radius()));
      EXPECT_LE(max_entry_diff(fd.matrix, qma::HyperhermitianMatrix::identity(static_cast<std::size_t>(n))), 1e-8);
      EXPECT_LE(fd.residual, 1e-6);
    }
  }
}

TEST(FdHessian, AffineFunctionGivesZero) {
  const std::vector<double> w = {0.3, -1.2, 2.0, 0.7, 1.5, -0.4, 0.0, 0.9};
  auto affine = [&](std::span<const double> x) {
    double s = 4.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i];
    return s;
  };
  const EvaluationPoint q({0.1, 0.2, -0.3, 0.4, 0.0, 0.5, 0.1, -0.2});
  // Central differences are exact for affine functions; a larger step keeps roundoff small.
  const auto fd = qma::fd_quaternionic_hessian(affine, q, 1e-3);
  EXPECT_LE(max_entry_diff(fd.matrix, 0.0 * qma::HyperhermitianMatrix::identity(2)), 1e-8);
}

TEST(FdHessian, PowerFamilyExample) {
  const PowerFamilyMember u(2.0, 1);
  const EvaluationPoint q({0.5, 0.0, 0.0, 0.0});
  const auto fd = qma::fd_quaternionic_hessian(u, q, qma::default_fd_step(q.radius()));
  EXPECT_NEAR(qma::moore_det(fd.matrix), 0.75, 1e-7);
}

TEST(FdHessian, SmoothNonRadialFunctionIsNearlyHyperhermitian) {
  // A smooth function with no symmetry; the assembled Hessian is hyperhermitian
  // only up to discretization error.
  auto f = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::sin(0.7 * x[i] + 0.1 * static_cast<double>(i)) * x[(i + 1) % x.size()];
    return s + std::exp(0.3 * x[0]);
  };
  for (const auto& q : qma::sample_ball_points(2, 10, 0.2, 0.9, 7)) {
    EXPECT_LE(qma::fd_quaternionic_hessian(f, q, qma::default_fd_step(q.radius())).residual, 1e-6);
  }
}

TEST(FdHessian, Errors) {
  const EvaluationPoint q({0.5, 0.0, 0.0, 0.0});
  EXPECT_THROW(qma::fd_quaternionic_hessian(norm2, q, 0.0), qma::DomainError);
  EXPECT_THROW(qma::fd_quaternionic_hessian(norm2, q, -1e-4), qma::DomainError);
  auto bad = [](std::span<const double> x) { return x[0] > 0.5 ? std::nan("") : 0.0; };
  EXPECT_THROW(qma::fd_quaternionic_hessian(bad, q, 1e-4), qma::NumericalError);
  // Evaluation noise far above h^2 makes the assembled matrix visibly non-hyperhermitian.
  qma::oracle::Rng rng(5);
  auto noisy = [&](std::span<const double> x) { return norm2(x) + 1e-6 * rng.uniform(-1.0, 1.0); };
  EXPECT_THROW(qma::fd_quaternionic_hessian(noisy, EvaluationPoint({0.3, 0.2, -0.4, 0.1}), 1e-4),
               qma::NumericalError);
}

TEST(EvaluationPoint, Validation) {
  EXPECT_THROW(EvaluationPoint({}), qma::DimensionError);
  EXPECT_THROW(EvaluationPoint({1.0, 2.0, 3.0}), qma::DimensionError);
  EXPECT_THROW(EvaluationPoint({1.0, 2.0, 3.0, std::nan("")}), qma::DomainError);
  const EvaluationPoint q({3.0, 0.0, 4.0, 0.0});
  EXPECT_EQ(q.radius(), 5.0);
  EXPECT_EQ(q.dimension(), 1);
}

TEST(PowerFamilyMember, NonPositiveOnBallAndZeroOnBoundary) {
  for (double a : {0.1, 0.5, 1.0, 3.0}) {
    const PowerFamilyMember u(a, 2);
    for (const auto& q : qma::sample_ball_points(2, 50, 0.0, 0.999, 3)) {
      EXPECT_LE(u(q.coords()), 0.0);
    }
    EXPECT_NEAR(u.at_radius(1.0), 0.0, 1e-15);
    EXPECT_NEAR(u.at_radius(1.0 - 1e-9), 0.0, 1e-7);
  }
  EXPECT_THROW(PowerFamilyMember(0.0, 1), qma::DomainError);
  EXPECT_THROW(PowerFamilyMember(1.0, 0), qma::DomainError);
}

TEST(PowerHessianClosed, Examples) {
  const auto one = qma::power_hessian_closed(PowerFamilyMember(1.0, 3), 0.37);
  EXPECT_EQ(one.alpha, 1.0);
  EXPECT_EQ(one.beta, 0.0);
  const auto two = qma::power_hessian_closed(PowerFamilyMember(2.0, 1), 0.25);
  EXPECT_NEAR(two.alpha, 0.5, 1e-15);
  EXPECT_NEAR(two.beta, 1.0, 1e-15);
  const auto half = qma::power_hessian_closed(PowerFamilyMember(0.5, 1), 0.5);
  EXPECT_NEAR(half.alpha, 0.70710678118654752, 1e-15);
  EXPECT_NEAR(half.beta, -0.35355339059327376, 1e-15);
  EXPECT_THROW(qma::power_hessian_closed(PowerFamilyMember(2.0, 1), 0.0), qma::DomainError);
}

TEST(PowerHessianClosed, MatchesFiniteDifferences) {
  for (double a : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    for (int n = 1; n <= 3; ++n) {
      const PowerFamilyMember u(a, n);
      for (const auto& q : qma::sample_ball_points(n, 6, 0.3, 0.9, 40 + n)) {
        const auto fd = qma::fd_quaternionic_hessian(u, q, qma::default_fd_step(q.radius()));
        const auto closed = qma::power_hessian_matrix(u, q);
        double scale = 0.0;
        for (std::size_t r = 0; r < closed.dim(); ++r)
          for (std::size_t c = 0; c < closed.dim(); ++c) scale = std::max(scale, closed(r, c).norm());
        EXPECT_LE(max_entry_diff(fd.matrix, closed), 1e-5 * scale) << "a=" << a << " n=" << n;
      }
    }
  }
}

TEST(MaDensity, Examples) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(qma::ma_density(PowerFamilyMember(1.0, n), 0.37), 1.0);
  // Oracle: Moore determinant of the finite-difference Hessian at r = 0.5.
  const PowerFamilyMember u(2.0, 2);
  const EvaluationPoint q({0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  const double oracle = qma::moore_det(qma::fd_quaternionic_hessian(u, q, 1e-4).matrix);
  EXPECT_NEAR(oracle, 0.375, 1e-7);
  EXPECT_NEAR(qma::ma_density(u, 0.5), 0.375, 1e-15);
}

TEST(MaDensity, RadialPowerLaw) {
  qma::oracle::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(0.2, 4.0);
    const int n = rng.integer(1, 4);
    const double r1 = rng.uniform(0.05, 0.95), r2 = rng.uniform(0.05, 0.95);
    const PowerFamilyMember u(a, n);
    const double expected = std::pow(r1 / r2, 2.0 * n * (a - 1.0));
    EXPECT_NEAR(qma::ma_density(u, r1) / qma::ma_density(u, r2), expected, 1e-12 * expected);
  }
}

TEST(MaDensity, RejectsRadiusOutsideUnitInterval) {
  const PowerFamilyMember u(2.0, 1);
  EXPECT_THROW(qma::ma_density(u, 0.0), qma::DomainError);
  EXPECT_THROW(qma::ma_density(u, 1.0), qma::DomainError);
  EXPECT_THROW(qma::ma_density(u, 1.5), qma::DomainError);
}

TEST(MixedDensity, Examples) {
  const std::vector<PowerFamilyMember> ones = {PowerFamilyMember(1.0, 2), PowerFamilyMember(1.0, 2)};
  EXPECT_EQ(qma::mixed_density(ones, 0.4), 1.0);
  const std::vector<PowerFamilyMember> two_one = {PowerFamilyMember(2.0, 2), PowerFamilyMember(1.0, 2)};
  EXPECT_NEAR(qma::mixed_density(two_one, 0.5), 0.625, 1e-15);
}

TEST(MixedDensity, DiagonalReducesToMaDensity) {
  qma::oracle::Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(0.2, 4.0);
    const int n = rng.integer(1, 5);
    const double r = rng.uniform(0.05, 0.95);
    const std::vector<PowerFamilyMember> members(static_cast<std::size_t>(n), PowerFamilyMember(a, n));
    const double expected = qma::ma_density(members.front(), r);
    EXPECT_NEAR(qma::mixed_density(members, r), expected, 1e-12 * expected);
  }
}

TEST(MixedDensity, MatchesMixedMooreDeterminant) {
  qma::oracle::Rng rng(23);
  for (int n = 1; n <= 3; ++n) {
    for (const auto& q : qma::sample_ball_points(n, 10, 0.2, 0.9, 60 + n)) {
      std::vector<PowerFamilyMember> members;
      std::vector<qma::HyperhermitianMatrix> hessians;
      for (int i = 0; i < n; ++i) {
        members.emplace_back(rng.uniform(0.25, 4.0), n);
        hessians.push_back(qma::power_hessian_matrix(members.back(), q));
      }
      const double oracle = qma::mixed_moore_det(hessians);
      EXPECT_NEAR(qma::mixed_density(members, q.radius()), oracle, 1e-8 * std::abs(oracle));
    }
  }
}

TEST(MixedDensity, DimensionMismatch) {
  const std::vector<PowerFamilyMember> wrong = {PowerFamilyMember(1.0, 3), PowerFamilyMember(1.0, 3)};
  EXPECT_THROW(qma::mixed_density(wrong, 0.5), qma::DimensionError);
  EXPECT_THROW(qma::mixed_density(std::span<const PowerFamilyMember>{}, 0.5), qma::DimensionError);
}

TEST(DensityCheck, ClosedFormMatchesFiniteDifferences) {
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    for (int n = 1; n <= 3; ++n) {
      const auto report = qma::density_check(PowerFamilyMember(a, n), 20);
      EXPECT_EQ(report.points_tested, 20);
      EXPECT_LE(report.max_rel_err, 1e-4) << "a=" << a << " n=" << n;
      EXPECT_LE(report.max_hh_residual, 1e-6);
      EXPECT_NEAR(report.c0_min, 0.5, 0.5e-4);
      EXPECT_NEAR(report.c0_max, 0.5, 0.5e-4);
    }
  }
}

TEST(DensityCheck, DeterministicForFixedSeed) {
  const auto r1 = qma::density_check(PowerFamilyMember(1.5, 2), 5, std::nullopt, 99);
  const auto r2 = qma::density_check(PowerFamilyMember(1.5, 2), 5, std::nullopt, 99);
  EXPECT_EQ(r1.max_rel_err, r2.max_rel_err);
  EXPECT_EQ(r1.c0_min, r2.c0_min);
}

TEST(NormalizationConstants, Values) {
  const auto c1 = qma::normalization_constants(1);
  EXPECT_EQ(c1.hessian_scale, 0.125);
  EXPECT_EQ(c1.c0, 0.5);
  EXPECT_NEAR(c1.c_energy, std::pow(M_PI, 2) / 2.0, 1e-15);
  EXPECT_NEAR(qma::normalization_constants(2).c_energy, std::pow(M_PI, 4) / 12.0, 1e-13);
  EXPECT_THROW(qma::normalization_constants(0), qma::DomainError);
}

}  // namespace
