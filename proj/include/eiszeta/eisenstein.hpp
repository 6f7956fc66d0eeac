#ifndef EISZETA_EISENSTEIN_HPP
#define EISZETA_EISENSTEIN_HPP

// Fourier coefficients of the completed Eisenstein series E*(z, s) for
// PSL(2, Z), the cusp integral I(T, s), the rank-2 zeta Z_{2,Q}(s), and the
// entire normalizations G and H used for zero finding.

#include <cmath>
#include <cstdlib>
#include <string>
#include <type_traits>
#include <variant>

#include "eiszeta/core.hpp"
#include "eiszeta/special_functions.hpp"

namespace eiszeta {

// ---------------------------------------------------------------------------
// Family parameters.

struct ConstantTerm {
  double y;
};
struct Truncation {
  double T;
};
struct Fourier {
  long long n;
  double y;
};
struct WengRank2 {};

/// Which one-parameter family of Eisenstein integrals a computation refers to.
using FamilyParam = std::variant<ConstantTerm, Truncation, Fourier, WengRank2>;

inline void validate_family(const FamilyParam& family) {
  std::visit(
      [](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ConstantTerm>) {
          if (!(f.y > 0.0) || !std::isfinite(f.y)) throw DomainError("ConstantTerm requires y > 0");
        } else if constexpr (std::is_same_v<F, Truncation>) {
          if (!(f.T > 0.0) || !std::isfinite(f.T)) throw DomainError("Truncation requires T > 0");
        } else if constexpr (std::is_same_v<F, Fourier>) {
          if (f.n == 0) throw DomainError("Fourier requires n != 0");
          if (!(f.y > 0.0) || !std::isfinite(f.y)) throw DomainError("Fourier requires y > 0");
        }
      },
      family);
}

inline std::string family_name(const FamilyParam& family) {
  return std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ConstantTerm>) return "a0";
        else if constexpr (std::is_same_v<F, Truncation>) return "I";
        else if constexpr (std::is_same_v<F, Fourier>) return "an";
        else return "z2q";
      },
      family);
}

namespace detail {

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

inline void reject_near_poles(ComplexValue s, const char* what) {
  // The radius itself is admissible; the slack absorbs the rounding of 1 + 1e-6.
  constexpr double kExclusion = 1e-6 * (1.0 - 1e-9);
  if (std::abs(s) < kExclusion || std::abs(s - 0.5) < kExclusion || std::abs(s - 1.0) < kExclusion) {
    throw NearPoleError(std::string(what) +
                        ": s is within 1e-6 of 0, 1/2 or 1; use the entire normalizations (G, H)");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Constant term.

/// a0(y, s) = zeta*(2s) y^s + zeta*(2 - 2s) y^{1-s}.
inline ComplexValue a0(double y, ComplexValue s, const EvalOptions& opts = {}) {
  detail::require_positive(y, "a0: y");
  detail::reject_near_poles(s, "a0");
  return completed_zeta(2.0 * s, opts) * detail::real_pow(y, s) +
         completed_zeta(2.0 - 2.0 * s, opts) * detail::real_pow(y, 1.0 - s);
}

/// a0(y, 1/2 + it) = 2 Re(zeta*(1 + 2it) y^{1/2 + it}); real by construction.
/// Only the t -> 0 limit is singular (the removable pair of poles).
inline double a0_critical_line(double y, double t, const EvalOptions& opts = {}) {
  detail::require_positive(y, "a0_critical_line: y");
  if (std::abs(t) < 1e-6) {
    throw NearPoleError("a0_critical_line: t within 1e-6 of 0; use g_constant_term");
  }
  const ComplexValue s(0.5, t);
  return 2.0 * (completed_zeta(2.0 * s, opts) * detail::real_pow(y, s)).real();
}

/// H(y, s) = (s - 1) xi(2s) y^s + s xi(2s - 1) y^{1-s} = s (s - 1)(2s - 1) a0(y, s).
/// Entire; H(y, s) = -H(y, 1 - s).
inline ComplexValue h_constant_term(double y, ComplexValue s, const EvalOptions& opts = {}) {
  detail::require_positive(y, "h_constant_term: y");
  return (s - 1.0) * xi(2.0 * s, opts) * detail::real_pow(y, s) +
         s * xi(2.0 * s - 1.0, opts) * detail::real_pow(y, 1.0 - s);
}

/// G(y, 1/2) = (log 4 pi - gamma - log y) sqrt(y).
inline double g_constant_term_at_half(double y) {
  detail::require_positive(y, "g_constant_term: y");
  return (std::log(4.0 * kPi) - kEulerGamma - std::log(y)) * std::sqrt(y);
}

/// G(y, s) = (2s)(2s - 2) a0(y, s). Entire and even about s = 1/2.
///
/// Computed as 2 H(y, s) / (s - 1/2). Inside |s - 1/2| < 1e-3 this quotient
/// cancels, so G is replaced by its even Taylor polynomial G0 + g2 (s - 1/2)^2
/// with G0 in closed form and g2 from a Richardson-combined second difference
/// at radii 1e-2 and 2e-2.
inline ComplexValue g_constant_term(double y, ComplexValue s, const EvalOptions& opts = {}) {
  detail::require_positive(y, "g_constant_term: y");
  const ComplexValue eps = s - 0.5;
  if (std::abs(eps) >= 1e-3) {
    return 2.0 * h_constant_term(y, s, opts) / eps;
  }
  const double g0 = g_constant_term_at_half(y);
  constexpr double r = 1e-2;
  const double d1 = (2.0 * h_constant_term(y, 0.5 + r, opts) / r).real() - g0;
  const double d2 = (2.0 * h_constant_term(y, 0.5 + 2.0 * r, opts) / (2.0 * r)).real() - g0;
  const double g2 = (16.0 * d1 - d2) / (12.0 * r * r);
  return g0 + g2 * eps * eps;
}

// ---------------------------------------------------------------------------
// Non-constant Fourier coefficients.

/// a_n(y, s) = 2 |n|^{s - 1/2} sigma_{1-2s}(|n|) sqrt(y) K_{s-1/2}(2 pi |n| y).
inline ComplexValue a_n(long long n, double y, ComplexValue s, const EvalOptions& opts = {}) {
  if (n == 0) throw DomainError("a_n: n must be nonzero (use a0 for the constant term)");
  detail::require_positive(y, "a_n: y");
  const long long m = std::llabs(n);
  const auto md = static_cast<double>(m);
  return 2.0 * detail::real_pow(md, s - 0.5) * sigma_divisor(1.0 - 2.0 * s, m) * std::sqrt(y) *
         k_bessel(s - 0.5, 2.0 * kPi * md * y, opts);
}

// ---------------------------------------------------------------------------
// Cusp integral and Weng's rank-2 zeta.

/// I(T, s) = -zeta*(2s) T^{s-1} / (s - 1) + zeta*(2 - 2s) T^{-s} / s.
inline ComplexValue i_truncation(double T, ComplexValue s, const EvalOptions& opts = {}) {
  detail::require_positive(T, "i_truncation: T");
  detail::reject_near_poles(s, "i_truncation");
  return -completed_zeta(2.0 * s, opts) * detail::real_pow(T, s - 1.0) / (s - 1.0) +
         completed_zeta(2.0 - 2.0 * s, opts) * detail::real_pow(T, -s) / s;
}

/// H(T, s) = (1/4)(2s)(2s - 1)(2s - 2) I(T, s) = -xi(2s) T^{s-1} + xi(2s - 1) T^{-s}.
/// Entire; odd about s = 1/2.
inline ComplexValue h_truncation(double T, ComplexValue s, const EvalOptions& opts = {}) {
  detail::require_positive(T, "h_truncation: T");
  return -xi(2.0 * s, opts) * detail::real_pow(T, s - 1.0) + xi(2.0 * s - 1.0, opts) * detail::real_pow(T, -s);
}

/// Z_{2,Q}(s) = zeta*(2s) / (s - 1) - zeta*(2 - 2s) / s. Equals -I(1, s).
inline ComplexValue z2q(ComplexValue s, const EvalOptions& opts = {}) {
  detail::reject_near_poles(s, "z2q");
  return completed_zeta(2.0 * s, opts) / (s - 1.0) - completed_zeta(2.0 - 2.0 * s, opts) / s;
}

// ---------------------------------------------------------------------------
// Partial Fourier sum of E*(z, s).

struct EisensteinSum {
  ComplexValue value;
  double tail_estimate = 0.0;  // size of the first omitted pair of terms
  long long n_max = 0;
};

/// Default truncation: the e^{-2 pi n y} decay of K puts the tail below
/// rel_tol once n exceeds log(1/rel_tol) / (2 pi y); the factor 12 is slack.
inline long long default_fourier_terms(double y, double rel_tol) {
  return static_cast<long long>(std::ceil(12.0 / (2.0 * kPi * y) * std::log(1.0 / rel_tol))) + 5;
}

/// E*(z, s) ~ a0(y, s) + sum_{0 < |n| <= n_max} a_n(y, s) e^{2 pi i n x}.
/// With include_constant = false the a0 term is omitted (the truncated
/// series above the cut). n_max <= 0 selects default_fourier_terms.
inline EisensteinSum eisenstein_series(ComplexValue z, ComplexValue s, long long n_max,
                                       const EvalOptions& opts = {}, bool include_constant = true) {
  const double x = z.real();
  const double y = z.imag();
  if (!(y > 0.0)) throw DomainError("eisenstein_series: Im z must be positive");
  if (n_max <= 0) n_max = default_fourier_terms(y, opts.rel_tol);
  ComplexValue value = include_constant ? a0(y, s, opts) : ComplexValue(0.0);
  for (long long n = 1; n <= n_max; ++n) {
    // a_n = a_{-n}, so the pair contributes 2 a_n cos(2 pi n x).
    value += 2.0 * a_n(n, y, s, opts) * std::cos(2.0 * kPi * static_cast<double>(n) * x);
  }
  const double tail = 2.0 * std::abs(a_n(n_max + 1, y, s, opts));
  return {value, tail, n_max};
}

}  // namespace eiszeta

#endif  // EISZETA_EISENSTEIN_HPP
