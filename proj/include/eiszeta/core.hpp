#ifndef EISZETA_CORE_HPP
#define EISZETA_CORE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eiszeta {

using ComplexValue = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

/// Accuracy knobs shared by every evaluator.
///
/// `rel_tol` is the target relative accuracy of series and quadrature
/// truncations; `max_terms` caps the number of series terms or quadrature
/// nodes before an evaluator gives up with AccuracyError. `threads` is the
/// worker count for the few operations that fan out (0 = hardware
/// concurrency).
struct EvalOptions {
  double rel_tol = 1e-12;
  std::size_t max_terms = 1'000'000;
  unsigned threads = 1;

  void validate() const;
};

// Error hierarchy. The CLI maps each leaf to a distinct exit code.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

/// Raised by the raw meromorphic evaluators (a0, I, Z) inside the exclusion
/// disc around a pole; callers should switch to the entire normalizations.
class NearPoleError : public PoleError {
 public:
  using PoleError::PoleError;
};

class AccuracyError : public Error {
 public:
  using Error::Error;
};

class BoundaryZeroError : public Error {
 public:
  using Error::Error;
};

class SelfCheckError : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

class ScaleError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

inline void EvalOptions::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("rel_tol must lie in (0, 1)");
  }
  if (max_terms < 16) {
    throw DomainError("max_terms must be at least 16");
  }
}

inline bool is_finite(ComplexValue z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

namespace detail {

inline ComplexValue require_finite(ComplexValue z, const char* what) {
  if (!is_finite(z)) {
    throw AccuracyError(std::string(what) + ": non-finite result (outside the double-precision envelope)");
  }
  return z;
}

/// x^s for real x > 0, computed as exp(s log x).
inline ComplexValue real_pow(double x, ComplexValue s) {
  return std::exp(s * std::log(x));
}

}  // namespace detail

}  // namespace eiszeta

#endif  // EISZETA_CORE_HPP
