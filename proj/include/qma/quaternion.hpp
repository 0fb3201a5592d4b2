#ifndef QMA_QUATERNION_HPP
#define QMA_QUATERNION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qma/error.hpp"

namespace qma {

/// w + x i + y j + z k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  /// Basis element e_m of {1, i, j, k}.
  static constexpr Quaternion unit(int m) {
    switch (m) {
      case 0: return {1.0};
      case 1: return i();
      case 2: return j();
      default: return k();
    }
  }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  constexpr bool is_real() const { return x == 0.0 && y == 0.0 && z == 0.0; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
  friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

  // Hamilton product.
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Largest component magnitude of a - b.
inline double max_abs_diff(const Quaternion& a, const Quaternion& b) {
  return std::max({std::abs(a.w - b.w), std::abs(a.x - b.x), std::abs(a.y - b.y),
                   std::abs(a.z - b.z)});
}

/// Dense square quaternionic matrix, row-major.
class QuaternionMatrix {
 public:
  QuaternionMatrix() = default;
  explicit QuaternionMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

  static QuaternionMatrix identity(std::size_t dim) {
    QuaternionMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = Quaternion(1.0);
    return m;
  }

  std::size_t dim() const { return dim_; }

  Quaternion& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * dim_ + c];
  }

  QuaternionMatrix conj_transpose() const {
    QuaternionMatrix t(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) t(c, r) = (*this)(r, c).conj();
    return t;
  }

  /// max |A - A^*| entrywise, together with the imaginary parts of the diagonal.
  double hyperhermitian_residual() const {
    double res = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = r; c < dim_; ++c)
        res = std::max(res, max_abs_diff((*this)(r, c), (*this)(c, r).conj()));
    return res;
  }

  QuaternionMatrix& operator+=(const QuaternionMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  QuaternionMatrix& operator*=(double s) {
    for (auto& q : entries_) q *= s;
    return *this;
  }

  friend QuaternionMatrix operator+(QuaternionMatrix a, const QuaternionMatrix& b) { return a += b; }
  friend QuaternionMatrix operator*(QuaternionMatrix a, double s) { return a *= s; }
  friend QuaternionMatrix operator*(double s, QuaternionMatrix a) { return a *= s; }

  friend QuaternionMatrix operator*(const QuaternionMatrix& a, const QuaternionMatrix& b) {
    a.check_same(b);
    QuaternionMatrix out(a.dim_);
    for (std::size_t r = 0; r < a.dim_; ++r)
      for (std::size_t c = 0; c < a.dim_; ++c) {
        Quaternion acc;
        for (std::size_t k = 0; k < a.dim_; ++k) acc += a(r, k) * b(k, c);
        out(r, c) = acc;
      }
    return out;
  }

 private:
  void check_same(const QuaternionMatrix& o) const {
    if (o.dim_ != dim_) {
      throw DimensionError("quaternion matrix dimension mismatch: " + std::to_string(dim_) +
                           " vs " + std::to_string(o.dim_));
    }
  }

  std::size_t dim_ = 0;
  std::vector<Quaternion> entries_;
};

/// Quaternionic matrix equal to its conjugate transpose, with real diagonal.
///
/// Instances are always exactly hyperhermitian: `validated` rejects inputs whose
/// residual exceeds the tolerance and then stores the symmetrized matrix.
class HyperhermitianMatrix {
 public:
  HyperhermitianMatrix() = default;

  static HyperhermitianMatrix identity(std::size_t dim) {
    return HyperhermitianMatrix(QuaternionMatrix::identity(dim));
  }

  static HyperhermitianMatrix diagonal(const std::vector<double>& d) {
    QuaternionMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = Quaternion(d[i]);
    return HyperhermitianMatrix(std::move(m));
  }

  /// v v^* with v_j = conj(q_j); entry (j, k) is conj(q_j) q_k.
  static HyperhermitianMatrix outer(const std::vector<Quaternion>& q) {
    QuaternionMatrix m(q.size());
    for (std::size_t r = 0; r < q.size(); ++r)
      for (std::size_t c = 0; c < q.size(); ++c) m(r, c) = q[r].conj() * q[c];
    return symmetrized(m).first;
  }

  /// (A + A^*) / 2 and the residual max |A - A^*| of the input.
  static std::pair<HyperhermitianMatrix, double> symmetrized(const QuaternionMatrix& a) {
    const double residual = a.hyperhermitian_residual();
    const std::size_t n = a.dim();
    QuaternionMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
      const Quaternion& d = a(r, r);
      m(r, r) = Quaternion(d.w);
      for (std::size_t c = r + 1; c < n; ++c) {
        const Quaternion avg = 0.5 * (a(r, c) + a(c, r).conj());
        m(r, c) = avg;
        m(c, r) = avg.conj();
      }
    }
    return {HyperhermitianMatrix(std::move(m)), residual};
  }

  /// Accepts `a` when its hyperhermitian residual is at most `tol`.
  static HyperhermitianMatrix validated(const QuaternionMatrix& a, double tol = 1e-12) {
    if (a.dim() == 0) throw DimensionError("hyperhermitian matrix must have dim >= 1");
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (std::size_t c = 0; c < a.dim(); ++c) {
        const Quaternion& q = a(r, c);
        if (!std::isfinite(q.w) || !std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z)) {
          throw DomainError("matrix has a non-finite entry");
        }
      }
    auto [m, residual] = symmetrized(a);
    if (!(residual <= tol)) {
      throw DomainError("matrix is not hyperhermitian: residual " + std::to_string(residual) +
                        " exceeds " + std::to_string(tol));
    }
    return m;
  }

  std::size_t dim() const { return m_.dim(); }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const QuaternionMatrix& matrix() const { return m_; }

  friend HyperhermitianMatrix operator+(const HyperhermitianMatrix& a,
                                        const HyperhermitianMatrix& b) {
    return HyperhermitianMatrix(a.m_ + b.m_);
  }
  friend HyperhermitianMatrix operator*(double s, const HyperhermitianMatrix& a) {
    return HyperhermitianMatrix(s * a.m_);
  }
  friend HyperhermitianMatrix operator*(const HyperhermitianMatrix& a, double s) { return s * a; }

 private:
  explicit HyperhermitianMatrix(QuaternionMatrix m) : m_(std::move(m)) {}

  QuaternionMatrix m_;
};

}  // namespace qma

#endif  // QMA_QUATERNION_HPP
