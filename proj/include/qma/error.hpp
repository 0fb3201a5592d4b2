#ifndef QMA_ERROR_HPP
#define QMA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qma {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Matrix sizes or list lengths that do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalues of a complex adjoint that do not come in coincident pairs.
class PairingError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference or other numerical breakdown (bad step, non-smooth point).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not reach its tolerance within budget.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// A ratio certificate failed its own validity checks.
class CertificateError : public Error {
 public:
  using Error::Error;
};

namespace detail {

[[noreturn]] inline void domain_fail(const std::string& where, const std::string& what) {
  throw DomainError(where + ": " + what);
}

}  // namespace detail
}  // namespace qma

#endif  // QMA_ERROR_HPP
