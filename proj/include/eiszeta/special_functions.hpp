#ifndef EISZETA_SPECIAL_FUNCTIONS_HPP
#define EISZETA_SPECIAL_FUNCTIONS_HPP

// Complex special functions in double precision: Gamma, Riemann zeta, the
// completed zeta and xi functions, the K-Bessel function of complex order,
// and divisor power sums.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "eiszeta/core.hpp"

namespace eiszeta {

namespace detail {

// Lanczos approximation, g = 7, nine coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoefficients{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// B_{2k} / (2k)! for k = 1..16 (B_2 .. B_32).
inline constexpr std::array<double, 16> kBernoulliOverFactorial{
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.2044840173323941e23,
    8553103.0 / 6.0 / 4.0329146112660565e26,
    -23749461029.0 / 870.0 / 3.0488834461171386e29,
    8615841276005.0 / 14322.0 / 2.6525285981219107e32,
    -7709321041217.0 / 510.0 / 2.6313083693369353e35};

inline bool near_nonpositive_integer(ComplexValue s, double eps) {
  const double n = std::round(s.real());
  return n <= 0.0 && std::abs(s - ComplexValue(n, 0.0)) < eps;
}

/// log Gamma(s) up to a multiple of 2*pi*i, valid for Re(s) >= 1/2.
inline ComplexValue log_gamma_right(ComplexValue s) {
  const ComplexValue z = s - 1.0;
  ComplexValue series = kLanczosCoefficients[0];
  for (std::size_t k = 1; k < kLanczosCoefficients.size(); ++k) {
    series += kLanczosCoefficients[k] / (z + static_cast<double>(k));
  }
  const ComplexValue t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

/// pi^{-s/2} Gamma(s/2) for Re(s) >= 1/2.
inline ComplexValue gamma_factor(ComplexValue s) {
  return std::exp(log_gamma_right(0.5 * s) - 0.5 * s * std::log(kPi));
}

/// (s - 1) zeta(s) by Euler-Maclaurin summation. Entire in s; intended for
/// Re(s) >= 1/2 where the number of terms stays proportional to |Im s|.
inline ComplexValue zeta_times_s_minus_one(ComplexValue s, const EvalOptions& opts) {
  const double sigma = s.real();
  const std::size_t m = kBernoulliOverFactorial.size() - 1;  // corrections through B_30
  auto n_terms = static_cast<std::size_t>(std::max(20.0, std::ceil(std::abs(s.imag()))));

  // Remainder after the B_{2m} correction is bounded by
  // |s + 2m + 1| / (sigma + 2m + 1) * |B_{2m+2}/(2m+2)! s(s+1)...(s+2m) N^{-sigma-2m-1}|.
  ComplexValue rising = 1.0;
  for (std::size_t j = 0; j <= 2 * m; ++j) rising *= s + static_cast<double>(j);
  const double bound_prefactor = std::abs(s + static_cast<double>(2 * m + 1)) /
                                 std::max(sigma + static_cast<double>(2 * m + 1), 1e-300) *
                                 std::abs(kBernoulliOverFactorial[m]) * std::abs(rising);
  const double target = 1e-2 * opts.rel_tol;
  while (bound_prefactor * std::pow(static_cast<double>(n_terms), -sigma - static_cast<double>(2 * m + 1)) >
         target) {
    n_terms *= 2;
  }
  if (n_terms > opts.max_terms) {
    throw AccuracyError("riemann_zeta: Euler-Maclaurin remainder exceeds tolerance at max_terms");
  }

  ComplexValue partial = 0.0;
  for (std::size_t n = n_terms - 1; n >= 1; --n) {
    partial += std::exp(-s * std::log(static_cast<double>(n)));
  }
  const double big_n = static_cast<double>(n_terms);
  const double log_n = std::log(big_n);
  const ComplexValue n_pow = std::exp(-s * log_n);  // N^{-s}
  ComplexValue corrections = 0.5 * n_pow;
  ComplexValue pochhammer = s;                       // s (s+1) ... (s + 2k - 2)
  ComplexValue n_power = n_pow / big_n;              // N^{-s-2k+1}
  for (std::size_t k = 0; k < m; ++k) {
    corrections += kBernoulliOverFactorial[k] * pochhammer * n_power;
    pochhammer *= (s + static_cast<double>(2 * k + 1)) * (s + static_cast<double>(2 * k + 2));
    n_power /= big_n * big_n;
  }
  return (s - 1.0) * (partial + corrections) + n_pow * big_n;
}

/// sin(pi s / 2) / s, regular at s = 0.
inline ComplexValue half_sine_over_s(ComplexValue s) {
  if (std::abs(s) < 1e-4) {
    const ComplexValue w = 0.5 * kPi * s;
    return 0.5 * kPi * (1.0 - w * w / 6.0);
  }
  return std::sin(0.5 * kPi * s) / s;
}

}  // namespace detail

/// Gamma(s) on the principal branch.
///
/// Lanczos approximation for Re(s) >= 1/2 and the reflection formula
/// Gamma(s) Gamma(1 - s) = pi / sin(pi s) otherwise.
inline ComplexValue gamma_complex(ComplexValue s, const EvalOptions& opts = {}) {
  opts.validate();
  if (detail::near_nonpositive_integer(s, 1e-14)) {
    throw PoleError("gamma_complex: pole at non-positive integer");
  }
  if (s.real() >= 0.5) {
    return detail::require_finite(std::exp(detail::log_gamma_right(s)), "gamma_complex");
  }
  const ComplexValue reflected = std::exp(detail::log_gamma_right(1.0 - s));
  return detail::require_finite(kPi / (std::sin(kPi * s) * reflected), "gamma_complex");
}

/// Riemann zeta function.
///
/// Euler-Maclaurin summation for Re(s) >= 1/2; the functional equation
/// zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s) below.
inline ComplexValue riemann_zeta(ComplexValue s, const EvalOptions& opts = {}) {
  opts.validate();
  if (std::abs(s - 1.0) < 1e-14) {
    throw PoleError("riemann_zeta: pole at s = 1");
  }
  if (s.real() >= 0.5) {
    return detail::require_finite(detail::zeta_times_s_minus_one(s, opts) / (s - 1.0), "riemann_zeta");
  }
  // zeta(1 - s) = E(1 - s) / (-s) with E(w) = (w - 1) zeta(w); the 1/s is
  // absorbed into sin(pi s / 2) / s so s = 0 needs no special case.
  const ComplexValue w = 1.0 - s;
  const ComplexValue chi_over = std::exp(s * std::log(2.0) + (s - 1.0) * std::log(kPi) +
                                         detail::log_gamma_right(w)) *
                                detail::half_sine_over_s(s);
  return detail::require_finite(-chi_over * detail::zeta_times_s_minus_one(w, opts), "riemann_zeta");
}

/// Completed zeta pi^{-s/2} Gamma(s/2) zeta(s), evaluated at whichever of s
/// and 1 - s has real part >= 1/2.
inline ComplexValue completed_zeta(ComplexValue s, const EvalOptions& opts = {}) {
  opts.validate();
  if (std::abs(s) < 1e-12 || std::abs(s - 1.0) < 1e-12) {
    throw PoleError("completed_zeta: pole at s = 0 or s = 1");
  }
  const ComplexValue u = s.real() >= 0.5 ? s : 1.0 - s;
  return detail::require_finite(
      detail::gamma_factor(u) * detail::zeta_times_s_minus_one(u, opts) / (u - 1.0), "completed_zeta");
}

/// Riemann xi function (1/2) s (s - 1) zeta*(s). Entire; xi(s) = xi(1 - s).
///
/// Uses the entire product (s/2) pi^{-s/2} Gamma(s/2) [(s - 1) zeta(s)] on
/// Re(s) >= 1/2, so s = 0 and s = 1 need no special handling.
inline ComplexValue xi(ComplexValue s, const EvalOptions& opts = {}) {
  opts.validate();
  const ComplexValue u = s.real() >= 0.5 ? s : 1.0 - s;
  return detail::require_finite(0.5 * u * detail::gamma_factor(u) * detail::zeta_times_s_minus_one(u, opts),
                                "xi");
}

// ---------------------------------------------------------------------------
// K-Bessel function of complex order.

struct BesselKResult {
  ComplexValue value;
  double error_estimate = 0.0;  // relative change of the last refinement
  std::size_t nodes = 0;
  double magnitude = 0.0;  // integral of |integrand| along the contour; the cancellation scale
};

namespace detail {

/// Integrand of K_nu(x) = (1/2) int_R exp(-x cosh w + nu w) dw along the
/// horizontal line Im w = theta, chosen near the saddle point so the
/// oscillating integrand does not cancel catastrophically.
class BesselKContour {
 public:
  BesselKContour(ComplexValue order, double x) : x_(x) {
    // K_nu = K_{-nu}; work with Im(nu) >= 0.
    if (order.imag() < 0.0 || (order.imag() == 0.0 && order.real() < 0.0)) order = -order;
    nu_ = order;
    const double b = nu_.imag();
    const double saddle = std::asinh(nu_ / x_).imag();
    const double margin = b > x_ ? std::clamp(3.0 / (b - x_), 0.02, 0.5) : 0.5;
    theta_ = std::clamp(saddle, 0.0, 0.5 * kPi - margin);
    cos_theta_ = std::cos(theta_);
    sin_theta_ = std::sin(theta_);

    // Real part of the exponent is concave in u; bracket the region where it
    // lies within kWindow of its maximum.
    const double a = nu_.real();
    peak_ = std::asinh(a / (x_ * cos_theta_));
    peak_log_ = log_magnitude(peak_);
    constexpr double kWindow = 50.0;
    constexpr double kStep = 0.25;
    hi_ = peak_;
    while (log_magnitude(hi_) > peak_log_ - kWindow && hi_ - peak_ < 200.0) hi_ += kStep;
    lo_ = peak_;
    while (log_magnitude(lo_) > peak_log_ - kWindow && peak_ - lo_ < 200.0) lo_ -= kStep;
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  /// Integrand scaled by exp(-peak_log).
  ComplexValue scaled(double u) const {
    const double re = -x_ * cos_theta_ * std::cosh(u) + nu_.real() * u - nu_.imag() * theta_;
    const double im = -x_ * sin_theta_ * std::sinh(u) + nu_.imag() * u + nu_.real() * theta_;
    return std::polar(std::exp(re - peak_log_), im);
  }

  double scaled_magnitude(double u) const { return std::exp(log_magnitude(u) - peak_log_); }

  ComplexValue finish(ComplexValue scaled_integral) const {
    return 0.5 * scaled_integral * std::exp(peak_log_);
  }
  double finish(double scaled_magnitude_integral) const {
    return 0.5 * scaled_magnitude_integral * std::exp(peak_log_);
  }

 private:
  double log_magnitude(double u) const {
    return -x_ * cos_theta_ * std::cosh(u) + nu_.real() * u - nu_.imag() * theta_;
  }

  double x_;
  ComplexValue nu_;
  double theta_ = 0.0;
  double cos_theta_ = 1.0;
  double sin_theta_ = 0.0;
  double peak_ = 0.0;
  double peak_log_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

}  // namespace detail

/// K_order(x) with the trapezoid rule on a fixed number of panels. Exposed so
/// callers can compare node counts directly.
inline ComplexValue k_bessel_fixed(ComplexValue order, double x, std::size_t panels) {
  if (!(x > 0.0)) throw DomainError("k_bessel: x must be positive");
  if (panels < 2) throw DomainError("k_bessel_fixed: need at least two panels");
  const detail::BesselKContour contour(order, x);
  const double h = (contour.hi() - contour.lo()) / static_cast<double>(panels);
  ComplexValue sum = 0.5 * (contour.scaled(contour.lo()) + contour.scaled(contour.hi()));
  for (std::size_t k = 1; k < panels; ++k) sum += contour.scaled(contour.lo() + h * static_cast<double>(k));
  return contour.finish(h * sum);
}

/// K_order(x) for real x > 0 and complex order, with convergence data.
///
/// The integrand decays double-exponentially along the shifted contour, so
/// the trapezoid rule converges geometrically in the node count; panels are
/// halved until successive sums agree to rel_tol.
inline BesselKResult k_bessel_detailed(ComplexValue order, double x, const EvalOptions& opts = {}) {
  opts.validate();
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("k_bessel: x must be positive and finite");
  const detail::BesselKContour contour(order, x);
  const double lo = contour.lo();
  const double width = contour.hi() - lo;

  std::size_t panels = 32;
  double h = width / static_cast<double>(panels);
  ComplexValue sum = 0.5 * (contour.scaled(lo) + contour.scaled(contour.hi()));
  double abs_sum = 0.5 * (contour.scaled_magnitude(lo) + contour.scaled_magnitude(contour.hi()));
  for (std::size_t k = 1; k < panels; ++k) {
    const double u = lo + h * static_cast<double>(k);
    sum += contour.scaled(u);
    abs_sum += contour.scaled_magnitude(u);
  }
  ComplexValue estimate = h * sum;
  for (int level = 0;; ++level) {
    if (2 * panels + 1 > opts.max_terms) {
      throw AccuracyError("k_bessel: quadrature did not converge within max_terms nodes");
    }
    for (std::size_t k = 0; k < panels; ++k) {
      const double u = lo + h * (static_cast<double>(k) + 0.5);
      sum += contour.scaled(u);
      abs_sum += contour.scaled_magnitude(u);
    }
    panels *= 2;
    h *= 0.5;
    const ComplexValue refined = h * sum;
    // Near a zero of K the relative test is unreachable; accept once the
    // change sits at the rounding level of the absolute integral.
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * h * abs_sum;
    const double change = std::abs(refined - estimate);
    estimate = refined;
    if (level >= 1 && change <= std::max(opts.rel_tol * std::abs(refined), roundoff)) {
      const double relative = change / std::max(std::abs(refined), std::numeric_limits<double>::min());
      return {detail::require_finite(contour.finish(estimate), "k_bessel"), relative, panels + 1,
              contour.finish(h * abs_sum)};
    }
  }
}

/// K_order(x) = int_0^inf exp(-x cosh u) cosh(order u) du.
inline ComplexValue k_bessel(ComplexValue order, double x, const EvalOptions& opts = {}) {
  return k_bessel_detailed(order, x, opts).value;
}

// ---------------------------------------------------------------------------
// Divisor sums.

inline constexpr std::uint64_t kMaxDivisorArgument = 1'000'000'000'000ULL;

/// Prime factorization by trial division as (prime, exponent) pairs.
inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> factors;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

namespace detail {

inline std::uint64_t checked_divisor_argument(long long n) {
  if (n < 1) throw DomainError("sigma_divisor: n must be >= 1");
  const auto u = static_cast<std::uint64_t>(n);
  if (u > kMaxDivisorArgument) throw OverflowError("sigma_divisor: n exceeds 10^12");
  return u;
}

}  // namespace detail

/// sigma_w(n) = sum over divisors d of n of d^w.
inline ComplexValue sigma_divisor(ComplexValue w, long long n) {
  const std::uint64_t m = detail::checked_divisor_argument(n);
  std::vector<std::uint64_t> divisors{1};
  for (const auto& [p, e] : factorize(m)) {
    const std::size_t count = divisors.size();
    std::uint64_t power = 1;
    for (int j = 1; j <= e; ++j) {
      power *= p;
      for (std::size_t i = 0; i < count; ++i) divisors.push_back(divisors[i] * power);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  ComplexValue total = 0.0;
  for (const std::uint64_t d : divisors) total += detail::real_pow(static_cast<double>(d), w);
  return total;
}

/// sigma_w(n) from the Euler product prod_{p^e || n} (p^{(e+1)w} - 1) / (p^w - 1).
/// Falls back to the finite geometric sum when p^w is numerically 1.
inline ComplexValue sigma_divisor_product(ComplexValue w, long long n) {
  const std::uint64_t m = detail::checked_divisor_argument(n);
  ComplexValue product = 1.0;
  for (const auto& [p, e] : factorize(m)) {
    const ComplexValue pw = detail::real_pow(static_cast<double>(p), w);
    if (std::abs(pw - 1.0) < 1e-6) {
      ComplexValue geometric = 0.0;
      ComplexValue term = 1.0;
      for (int j = 0; j <= e; ++j) {
        geometric += term;
        term *= pw;
      }
      product *= geometric;
    } else {
      product *= (detail::real_pow(static_cast<double>(p), static_cast<double>(e + 1) * w) - 1.0) / (pw - 1.0);
    }
  }
  return product;
}

}  // namespace eiszeta

#endif  // EISZETA_SPECIAL_FUNCTIONS_HPP
