#ifndef QMA_MOORE_HPP
#define QMA_MOORE_HPP

// Moore determinants of hyperhermitian matrices.
//
// A quaternion w + x i + y j + z k is written z1 + z2 j with z1 = w + x i,
// z2 = y + z i, and realized as the complex 2x2 block
//
//     [  z1        z2      ]
//     [ -conj(z2)  conj(z1) ]
//
// The complex adjoint of a hyperhermitian matrix is Hermitian, its spectrum is
// the quaternionic spectrum with every eigenvalue doubled, and the Moore
// determinant is the product of one eigenvalue from each pair.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qma/error.hpp"
#include "qma/quaternion.hpp"

namespace qma {

using ComplexMatrix = Eigen::MatrixXcd;

/// Relative gap (to spectral radius) allowed inside an eigenvalue pair.
inline constexpr double kPairingTolerance = 1e-8;

inline ComplexMatrix complex_adjoint(const QuaternionMatrix& a) {
  if (a.dim() == 0) throw DimensionError("complex_adjoint: empty matrix");
  const auto n = static_cast<Eigen::Index>(a.dim());
  ComplexMatrix out(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Quaternion& q = a(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      const std::complex<double> z1(q.w, q.x);
      const std::complex<double> z2(q.y, q.z);
      out(2 * r, 2 * c) = z1;
      out(2 * r, 2 * c + 1) = z2;
      out(2 * r + 1, 2 * c) = -std::conj(z2);
      out(2 * r + 1, 2 * c + 1) = std::conj(z1);
    }
  }
  return out;
}

inline ComplexMatrix complex_adjoint(const HyperhermitianMatrix& a) {
  return complex_adjoint(a.matrix());
}

/// The n real eigenvalues of a hyperhermitian matrix, ascending.
///
/// Throws PairingError when the doubled spectrum of the complex adjoint does
/// not split into coincident pairs.
inline std::vector<double> paired_spectrum(const HyperhermitianMatrix& a) {
  if (a.dim() == 0) throw DimensionError("moore_det: dimension 0 rejected");
  const ComplexMatrix chi = complex_adjoint(a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(chi, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw PairingError("moore_det: Hermitian eigen-solver did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  const double radius = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  const double tol = kPairingTolerance * radius;

  std::vector<double> out(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const double lo = ev(static_cast<Eigen::Index>(2 * k));
    const double hi = ev(static_cast<Eigen::Index>(2 * k + 1));
    if (!(hi - lo <= tol)) {
      throw PairingError("moore_det: eigenvalues " + std::to_string(lo) + " and " +
                         std::to_string(hi) + " do not pair (gap " +
                         std::to_string(hi - lo) + ", tolerance " + std::to_string(tol) + ")");
    }
    out[k] = 0.5 * (lo + hi);
  }
  return out;
}

inline double moore_det(const HyperhermitianMatrix& a) {
  const std::vector<double> spectrum = paired_spectrum(a);
  return std::accumulate(spectrum.begin(), spectrum.end(), 1.0, std::multiplies<>());
}

/// Mixed Moore determinant by polarization:
///   (1/n!) sum over nonempty S of (-1)^(n-|S|) det(sum_{i in S} A_i).
/// mixed_moore_det(A, ..., A) == moore_det(A).
inline double mixed_moore_det(std::span<const HyperhermitianMatrix> mats) {
  const std::size_t n = mats.size();
  if (n == 0) throw DimensionError("mixed_moore_det: empty argument list");
  if (n > 20) throw DimensionError("mixed_moore_det: too many arguments");
  for (const auto& m : mats) {
    if (m.dim() != n) {
      throw DimensionError("mixed_moore_det: expected " + std::to_string(n) +
                           " matrices of dimension " + std::to_string(n) + ", got dimension " +
                           std::to_string(m.dim()));
    }
  }

  double total = 0.0;
  const unsigned long full = (1UL << n);
  for (unsigned long subset = 1; subset < full; ++subset) {
    HyperhermitianMatrix sum;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(subset & (1UL << i))) continue;
      sum = (count == 0) ? mats[i] : sum + mats[i];
      ++count;
    }
    const double sign = ((n - count) % 2 == 0) ? 1.0 : -1.0;
    total += sign * moore_det(sum);
  }
  double factorial = 1.0;
  for (std::size_t k = 2; k <= n; ++k) factorial *= static_cast<double>(k);
  return total / factorial;
}

inline double mixed_moore_det(std::initializer_list<HyperhermitianMatrix> mats) {
  return mixed_moore_det(std::span<const HyperhermitianMatrix>(mats.begin(), mats.size()));
}

}  // namespace qma

#endif  // QMA_MOORE_HPP
