#ifndef EISZETA_ZERO_FINDER_HPP
#define EISZETA_ZERO_FINDER_HPP

// Zero location and counting for the Eisenstein integral families:
// continuous phase of xi(1 + it) and zeta*(1 + it), critical-line zero scans,
// argument-principle counts on rectangles, main-term count predictions, the
// real zeros of the constant term, and the crossover height y*.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eiszeta/core.hpp"
#include "eiszeta/eisenstein.hpp"
#include "eiszeta/parallel.hpp"
#include "eiszeta/special_functions.hpp"

namespace eiszeta {

// ---------------------------------------------------------------------------
// Continuous phase.

enum class PhaseBase { XiPhase, ZetaStarPhase };

/// Unwrapped argument of xi(1 + it) (XiPhase, theta(0) = 0) or of
/// zeta*(1 + it) (ZetaStarPhase, theta(0+) = -pi/2 from the pole at 1) on an
/// adaptive grid of t values.
class PhaseTrace {
 public:
  PhaseTrace(PhaseBase base, std::vector<double> t_grid, std::vector<double> theta, EvalOptions opts)
      : base_(base), t_grid_(std::move(t_grid)), theta_(std::move(theta)), opts_(opts) {}

  PhaseBase base() const { return base_; }
  const std::vector<double>& t_grid() const { return t_grid_; }
  const std::vector<double>& theta() const { return theta_; }
  double t_max() const { return t_grid_.back(); }

  /// Unwrapped argument at an arbitrary t in [0, t_max], continued from the
  /// nearest grid point at or below t.
  double at(double t) const {
    if (t < 0.0 || t > t_max() * (1.0 + 1e-15)) throw DomainError("PhaseTrace::at: t outside the traced range");
    auto it = std::upper_bound(t_grid_.begin(), t_grid_.end(), t);
    std::size_t i = static_cast<std::size_t>(std::distance(t_grid_.begin(), it));
    i = i == 0 ? 0 : i - 1;
    if (t == t_grid_[i]) return theta_[i];
    if (i == 0 && base_ == PhaseBase::ZetaStarPhase) {
      // No finite reference value at the pole; the principal branch is
      // continuous on the first step since the argument stays near -pi/2.
      return std::arg(value(t));
    }
    return theta_[i] + std::arg(value(t) / value(t_grid_[i]));
  }

  /// xi(1 + it) or zeta*(1 + it).
  ComplexValue value(double t) const {
    const ComplexValue s(1.0, t);
    return base_ == PhaseBase::XiPhase ? xi(s, opts_) : completed_zeta(s, opts_);
  }

 private:
  PhaseBase base_;
  std::vector<double> t_grid_;
  std::vector<double> theta_;
  EvalOptions opts_;
};

/// Builds the unwrapped phase on [0, t_max] with step control: steps start
/// at 0.05 and are halved until the principal argument change is below pi/2.
inline PhaseTrace phase_trace(PhaseBase base, double t_max, const EvalOptions& opts = {}) {
  opts.validate();
  if (!(t_max > 0.0) || t_max > 200.0) throw DomainError("phase_trace: t_max must lie in (0, 200]");
  constexpr double kInitialStep = 0.05;
  constexpr double kMinStep = 1e-9;
  const auto sample = [&](double t) {
    const ComplexValue s(1.0, t);
    const ComplexValue v = base == PhaseBase::XiPhase ? xi(s, opts) : completed_zeta(s, opts);
    // |zeta(1 + it)| is bounded below on the line; a vanishing ratio to the
    // Gamma envelope means the phase is numerically undefined.
    const double envelope = std::abs(detail::gamma_factor(s)) * (base == PhaseBase::XiPhase ? 0.5 * t : 1.0);
    if (t > 0.0 && !(std::abs(v) > 1e-13 * envelope)) {
      throw AccuracyError("phase_trace: modulus below 1e-13 of its envelope at t = " + std::to_string(t));
    }
    return v;
  };

  std::vector<double> ts{0.0};
  std::vector<double> thetas;
  ComplexValue previous;
  if (base == PhaseBase::XiPhase) {
    previous = sample(0.0);
    thetas.push_back(0.0);
  } else {
    thetas.push_back(-0.5 * kPi);
  }
  double t = 0.0;
  double step = kInitialStep;
  while (t < t_max) {
    const double next = std::min(t + step, t_max);
    const ComplexValue v = sample(next);
    double delta;
    if (t == 0.0 && base == PhaseBase::ZetaStarPhase) {
      delta = std::arg(v) - thetas.back();
    } else {
      delta = std::arg(v / previous);
    }
    if (std::abs(delta) >= 0.5 * kPi) {
      if (step <= kMinStep) throw AccuracyError("phase_trace: step control failed to resolve the argument");
      step *= 0.5;
      continue;
    }
    ts.push_back(next);
    thetas.push_back(thetas.back() + delta);
    previous = v;
    t = next;
    step = std::min(kInitialStep, step * 2.0);
  }
  return PhaseTrace(base, std::move(ts), std::move(thetas), opts);
}

// ---------------------------------------------------------------------------
// Zero records.

struct ZeroRecord {
  FamilyParam family;
  int index = 0;
  double ordinate = 0.0;  // t with s = 1/2 + it, or sigma for real zeros
  double residual = 0.0;  // |entire normalization| at the located point
  double scale = 0.0;     // local magnitude the residual is measured against
  int multiplicity_hint = 1;
  bool real_axis = false;
};

namespace detail {

struct CriticalLineModel {
  /// Real-valued restriction r(t) of the family to s = 1/2 + it.
  std::function<double(double)> restriction;
  /// |r(t)| <= envelope(t); zero when unavailable.
  std::function<double(double)> envelope;
  /// |entire normalization(1/2 + it)| and the scale it is compared against.
  std::function<std::pair<double, double>(double)> residual;
  bool simplicity_proven = false;
};

inline CriticalLineModel critical_line_model(const FamilyParam& family, const EvalOptions& opts) {
  CriticalLineModel model;
  const auto r_xi = [opts](double t) { return std::abs(xi(ComplexValue(1.0, 2.0 * t), opts)); };
  if (const auto* tr = std::get_if<Truncation>(&family); tr || std::holds_alternative<WengRank2>(family)) {
    const double T = tr ? tr->T : 1.0;
    // H(T, 1/2 + it) = -(2i / sqrt T) R(2t) sin(theta(2t) + t log T).
    model.restriction = [T, opts](double t) {
      return -0.5 * std::sqrt(T) * h_truncation(T, ComplexValue(0.5, t), opts).imag();
    };
    model.envelope = r_xi;
    model.residual = [T, opts, r_xi](double t) {
      return std::pair{std::abs(h_truncation(T, ComplexValue(0.5, t), opts)), 2.0 / std::sqrt(T) * r_xi(t)};
    };
    model.simplicity_proven = T >= 1.0;
  } else if (const auto* ct = std::get_if<ConstantTerm>(&family)) {
    const double y = ct->y;
    model.restriction = [y, opts](double t) { return a0_critical_line(y, t, opts); };
    model.envelope = [y, opts](double t) {
      return 2.0 * std::sqrt(y) * std::abs(completed_zeta(ComplexValue(1.0, 2.0 * t), opts));
    };
    model.residual = [y, opts, r_xi](double t) {
      const ComplexValue s(0.5, t);
      return std::pair{std::abs(h_constant_term(y, s, opts)),
                       std::sqrt(y) * std::abs(ComplexValue(1.0, 2.0 * t)) * r_xi(t)};
    };
  } else {
    const auto& f = std::get<Fourier>(family);
    model.restriction = [f, opts](double t) { return a_n(f.n, f.y, ComplexValue(0.5, t), opts).real(); };
    model.envelope = [](double) { return 0.0; };
    model.residual = [f, opts](double t) {
      return std::pair{std::abs(a_n(f.n, f.y, ComplexValue(0.5, t), opts)), 0.0};
    };
  }
  return model;
}

/// Root of g on [lo, hi] given g(lo), g(hi) of opposite sign: bisection to
/// width 1e-6, then Illinois-modified regula falsi to |dt| < tol.
inline double refine_root(const std::function<double(double)>& g, double lo, double hi, double g_lo, double g_hi,
                          double tol) {
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
      g_hi = g_mid;
    }
  }
  int side = 0;
  for (int iter = 0; iter < 60; ++iter) {
    const double x = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
    const double g_x = g(x);
    if (g_x == 0.0) return x;
    if ((g_x < 0.0) == (g_lo < 0.0)) {
      lo = x;
      g_lo = g_x;
      if (side == -1) g_hi *= 0.5;
      side = -1;
    } else {
      hi = x;
      g_hi = g_x;
      if (side == 1) g_lo *= 0.5;
      side = 1;
    }
    if (hi - lo < tol) return 0.5 * (lo + hi);
    // Converged from one side: check a tol-bracket around the iterate.
    const double probe = side == -1 ? x + tol : x - tol;
    if (probe > lo && probe < hi) {
      const double g_probe = g(probe);
      if ((g_probe < 0.0) != (g_x < 0.0)) return 0.5 * (x + probe);
    }
  }
  throw AccuracyError("critical_line_zeros: bracket could not be refined below tolerance");
}

struct Bracket {
  double lo, hi;
  int level;  // multiple of pi crossed, for phase families
};

}  // namespace detail

/// Zeros of the family on the critical line with ordinates in (0, t_max].
///
/// Truncation(T): theta(2t) + t log T = 0 (mod pi), theta the XiPhase.
/// ConstantTerm(y): theta*(2t) + t log y = pi/2 (mod pi), theta* the
/// ZetaStarPhase. Fourier(n, y): sign changes of the real-valued
/// a_n(y, 1/2 + it) on a uniform grid of step 0.02. WengRank2 shares the
/// zeros of Truncation(1).
///
/// A trace covering [0, 2 t_max] may be supplied to reuse it across calls.
inline std::vector<ZeroRecord> critical_line_zeros(const FamilyParam& family, double t_max,
                                                   const EvalOptions& opts = {},
                                                   const PhaseTrace* trace = nullptr) {
  opts.validate();
  validate_family(family);
  if (!(t_max > 0.0) || t_max > 100.0) throw DomainError("critical_line_zeros: t_max must lie in (0, 100]");
  const detail::CriticalLineModel model = detail::critical_line_model(family, opts);
  constexpr double kTolerance = 1e-10;

  std::vector<detail::Bracket> brackets;
  std::function<double(double)> target;
  const bool fourier = std::holds_alternative<Fourier>(family);
  std::vector<double> grid_values;
  std::vector<double> grid;

  if (!fourier) {
    const bool constant = std::holds_alternative<ConstantTerm>(family);
    const PhaseBase base = constant ? PhaseBase::ZetaStarPhase : PhaseBase::XiPhase;
    std::optional<PhaseTrace> own;
    if (trace == nullptr || trace->base() != base || trace->t_max() < 2.0 * t_max) {
      own.emplace(phase_trace(base, 2.0 * t_max, opts));
      trace = &*own;
    }
    double log_param = 0.0;
    if (const auto* tr = std::get_if<Truncation>(&family)) log_param = std::log(tr->T);
    if (const auto* ct = std::get_if<ConstantTerm>(&family)) log_param = std::log(ct->y);
    const double offset = constant ? 0.5 * kPi : 0.0;
    // q(t) = phase(2t) + t log(param) + offset; zeros where q is a multiple of pi.
    const auto& us = trace->t_grid();
    const auto& th = trace->theta();
    double prev_t = -1.0;
    double prev_q = 0.0;
    for (std::size_t i = 1; i < us.size(); ++i) {
      const double t = 0.5 * us[i];
      if (t > t_max) break;
      const double q = th[i] + t * log_param + offset;
      if (prev_t > 0.0) {
        const double a = std::min(prev_q, q);
        const double b = std::max(prev_q, q);
        for (double k = std::floor(a / kPi) + 1.0; k * kPi <= b; k += 1.0) {
          if (k * kPi == prev_q) continue;
          brackets.push_back({prev_t, t, static_cast<int>(k)});
        }
      }
      prev_t = t;
      prev_q = q;
    }
    // Refine on the real restriction, which changes sign at each crossing.
    target = model.restriction;
    (void)offset;
  } else {
    constexpr double kStep = 0.02;
    const auto count = static_cast<std::size_t>(std::ceil(t_max / kStep));
    grid.resize(count + 1);
    for (std::size_t i = 0; i <= count; ++i) grid[i] = std::min(t_max, kStep * static_cast<double>(i));
    grid_values = parallel_map(grid.size(), opts.threads, [&](std::size_t i) { return model.restriction(grid[i]); });
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (grid_values[i] == 0.0 && grid[i] > 0.0) {
        brackets.push_back({grid[i], grid[i], 0});
      } else if ((grid_values[i - 1] < 0.0) != (grid_values[i] < 0.0) && grid_values[i - 1] != 0.0) {
        brackets.push_back({grid[i - 1], grid[i], 0});
      }
    }
    target = model.restriction;
  }

  const auto refine = [&](std::size_t b) {
    const detail::Bracket& br = brackets[b];
    double root = br.lo;
    double g_lo = target(br.lo);
    double g_hi = target(br.hi);
    if (br.hi > br.lo) {
      if (g_lo == 0.0) {
        root = br.lo;
      } else if (g_hi == 0.0) {
        root = br.hi;
      } else if ((g_lo < 0.0) == (g_hi < 0.0)) {
        throw AccuracyError("critical_line_zeros: phase crossing without a sign change near t = " +
                            std::to_string(br.lo));
      } else {
        root = detail::refine_root(target, br.lo, br.hi, g_lo, g_hi, kTolerance);
      }
    }
    ZeroRecord rec;
    rec.family = family;
    rec.ordinate = root;
    auto [residual, scale] = model.residual(root);
    if (scale == 0.0) scale = std::max(std::abs(g_lo), std::abs(g_hi));
    rec.residual = residual;
    rec.scale = scale;

    // Simple zero: the real restriction has a nonzero slope.
    constexpr double h = 1e-5;
    const double slope = (target(root + h) - target(root - h)) / (2.0 * h);
    double envelope = model.envelope(root);
    if (envelope == 0.0) envelope = std::max(std::abs(g_lo), std::abs(g_hi));
    if (!(std::abs(slope) > 1e-6 * envelope)) {
      rec.multiplicity_hint = 2;
      if (model.simplicity_proven) {
        throw AccuracyError("critical_line_zeros: non-simple zero detected at t = " + std::to_string(root));
      }
    }
    return rec;
  };
  std::vector<ZeroRecord> zeros = parallel_map(brackets.size(), opts.threads, refine);
  std::sort(zeros.begin(), zeros.end(), [](const auto& a, const auto& b) { return a.ordinate < b.ordinate; });
  for (std::size_t i = 0; i < zeros.size(); ++i) zeros[i].index = static_cast<int>(i) + 1;
  return zeros;
}

// ---------------------------------------------------------------------------
// Argument-principle counting.

struct XiOf2s {};

/// An entire function whose zeros are counted: one of the family
/// normalizations H(T, s), H(y, s), a_n(y, s), or xi(2s).
using CountTarget = std::variant<FamilyParam, XiOf2s>;

struct RectangleCount {
  double re_lo = 0.0;
  double re_hi = 0.0;
  double im_lo = 0.0;
  double im_hi = 0.0;
  long long winding = 0;
  std::size_t evaluations = 0;
};

namespace detail {

/// Value of the counted entire function and a scale for "numerically zero".
inline std::pair<ComplexValue, double> entire_with_scale(const CountTarget& target, ComplexValue s,
                                                         const EvalOptions& opts) {
  if (std::holds_alternative<XiOf2s>(target)) {
    const ComplexValue u = (2.0 * s).real() >= 0.5 ? 2.0 * s : 1.0 - 2.0 * s;
    return {xi(2.0 * s, opts), std::abs(0.5 * u * (u - 1.0) * gamma_factor(u))};
  }
  const FamilyParam& family = std::get<FamilyParam>(target);
  if (const auto* f = std::get_if<Fourier>(&family)) {
    const long long m = std::llabs(f->n);
    const auto md = static_cast<double>(m);
    double divisor_abs = 0.0;
    for (long long d = 1; d <= m; ++d) {
      if (m % d == 0) divisor_abs += std::abs(real_pow(static_cast<double>(d), 1.0 - 2.0 * s));
    }
    const double envelope = 2.0 * std::abs(real_pow(md, s - 0.5)) * divisor_abs * std::sqrt(f->y) *
                            k_bessel_detailed(s - 0.5, 2.0 * kPi * md * f->y, opts).magnitude;
    return {a_n(f->n, f->y, s, opts), envelope};
  }
  double T = 1.0;
  if (const auto* tr = std::get_if<Truncation>(&family)) T = tr->T;
  if (const auto* ct = std::get_if<ConstantTerm>(&family)) {
    const double y = ct->y;
    const ComplexValue first = (s - 1.0) * xi(2.0 * s, opts) * real_pow(y, s);
    const ComplexValue second = s * xi(2.0 * s - 1.0, opts) * real_pow(y, 1.0 - s);
    return {first + second, std::abs(first) + std::abs(second)};
  }
  const ComplexValue first = -xi(2.0 * s, opts) * real_pow(T, s - 1.0);
  const ComplexValue second = xi(2.0 * s - 1.0, opts) * real_pow(T, -s);
  return {first + second, std::abs(first) + std::abs(second)};
}

struct BoundaryHit {
  int edge;
};

}  // namespace detail

/// Number of zeros of the target inside the rectangle, by tracking the
/// argument continuously around the boundary (counter-clockwise). An edge
/// passing within numerical reach of a zero is pushed outward by 1e-4 per
/// retry; three failed retries raise BoundaryZeroError.
inline RectangleCount count_zeros_rectangle(const CountTarget& target, double re_lo, double re_hi, double im_lo,
                                            double im_hi, const EvalOptions& opts = {}) {
  opts.validate();
  if (const auto* fam = std::get_if<FamilyParam>(&target)) validate_family(*fam);
  if (!(re_lo < re_hi) || !(im_lo < im_hi)) throw DomainError("count_zeros_rectangle: empty rectangle");
  constexpr double kMaxStep = 0.1;
  constexpr double kMinStep = 1e-9;
  constexpr double kMaxTurn = 0.25 * kPi;
  constexpr double kBoundaryFloor = 1e-10;

  std::array<double, 4> bounds{re_lo, re_hi, im_lo, im_hi};
  for (int attempt = 0;; ++attempt) {
    const std::array<ComplexValue, 5> corners{ComplexValue(bounds[0], bounds[2]), ComplexValue(bounds[1], bounds[2]),
                                              ComplexValue(bounds[1], bounds[3]), ComplexValue(bounds[0], bounds[3]),
                                              ComplexValue(bounds[0], bounds[2])};
    // Edge k lies on: 0 bottom (im_lo), 1 right (re_hi), 2 top (im_hi), 3 left (re_lo).
    std::size_t evaluations = 0;
    try {
      double total = 0.0;
      const auto eval = [&](ComplexValue s, int edge) {
        ++evaluations;
        const auto [v, scale] = detail::entire_with_scale(target, s, opts);
        if (!(std::abs(v) > kBoundaryFloor * scale)) throw detail::BoundaryHit{edge};
        return v;
      };
      ComplexValue current = eval(corners[0], 0);
      for (int edge = 0; edge < 4; ++edge) {
        const ComplexValue a = corners[edge];
        const ComplexValue b = corners[edge + 1];
        const double length = std::abs(b - a);
        const ComplexValue dir = (b - a) / length;
        double pos = 0.0;
        double step = std::min(kMaxStep, length);
        while (pos < length) {
          const double next = std::min(pos + step, length);
          const ComplexValue s = next == length ? b : a + next * dir;
          const ComplexValue v = eval(s, edge);
          const double turn = std::arg(v / current);
          if (std::abs(turn) > kMaxTurn) {
            if (step <= kMinStep) throw detail::BoundaryHit{edge};
            step *= 0.5;
            continue;
          }
          total += turn;
          current = v;
          pos = next;
          step = std::min(kMaxStep, step * 1.5);
        }
      }
      const double windings = total / (2.0 * kPi);
      const double rounded = std::round(windings);
      if (std::abs(windings - rounded) > 1e-6) {
        throw AccuracyError("count_zeros_rectangle: boundary argument change is not a multiple of 2 pi");
      }
      return {bounds[0], bounds[1], bounds[2], bounds[3], static_cast<long long>(rounded), evaluations};
    } catch (const detail::BoundaryHit& hit) {
      if (attempt >= 3) {
        throw BoundaryZeroError("count_zeros_rectangle: boundary passes through a zero; nudging failed 3 times");
      }
      // Push the offending edge outward.
      const int coordinate = hit.edge == 0 ? 2 : hit.edge == 1 ? 1 : hit.edge == 2 ? 3 : 0;
      const double direction = (coordinate == 1 || coordinate == 3) ? 1.0 : -1.0;
      bounds[coordinate] += direction * 1e-4;
    }
  }
}

/// Main term of N(I(T, s); U), the number of zeros with |Im s| <= U:
/// (2/pi) U log U - (2/pi)(log pi + 1) U + (2/pi)(log T) U.
inline double predicted_count(double T, double U) {
  if (!(T >= 1.0) || !(U >= 5.0)) throw DomainError("predicted_count: requires T >= 1 and U >= 5");
  return 2.0 / kPi * (U * std::log(U) - (std::log(kPi) + 1.0) * U + std::log(T) * U);
}

// ---------------------------------------------------------------------------
// Real zeros of the constant term and the crossover height.

/// f(sigma) = (1 - sigma)/sigma * xi(2 sigma) / xi(2 sigma - 1), positive on (0, 1).
inline double f_ratio(double sigma, const EvalOptions& opts = {}) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("f_ratio: sigma must lie in (0, 1)");
  return (1.0 - sigma) / sigma * (xi(2.0 * sigma, opts) / xi(2.0 * sigma - 1.0, opts)).real();
}

/// F(y, sigma) = y^{2 sigma - 1} f(sigma); H(y, sigma) = 0 exactly when F = 1.
inline double capital_f(double y, double sigma, const EvalOptions& opts = {}) {
  detail::require_positive(y, "capital_f: y");
  return std::exp((2.0 * sigma - 1.0) * std::log(y)) * f_ratio(sigma, opts);
}

/// dF/dsigma = 2 y^{2 sigma - 1} f(sigma) (log y + f'(sigma) / (2 f(sigma))).
inline double capital_f_derivative(double y, double sigma, const EvalOptions& opts = {}) {
  detail::require_positive(y, "capital_f_derivative: y");
  constexpr double h = 1e-5;
  const double log_derivative = (std::log(f_ratio(sigma + h, opts)) - std::log(f_ratio(sigma - h, opts))) / (2.0 * h);
  return 2.0 * capital_f(y, sigma, opts) * (std::log(y) + 0.5 * log_derivative);
}

/// -f'(sigma) / f(sigma) by central differencing of log f at step 1e-6.
inline double f_logderiv(double sigma, const EvalOptions& opts = {}) {
  if (!(sigma >= 0.5 && sigma < 1.0)) throw DomainError("f_logderiv: sigma must lie in [1/2, 1)");
  constexpr double h = 1e-6;
  return -(std::log(f_ratio(sigma + h, opts)) - std::log(f_ratio(sigma - h, opts))) / (2.0 * h);
}

namespace detail {

/// Five-point central difference of a real function.
template <typename Fn>
double five_point_derivative(Fn&& fn, double x, double h) {
  return (fn(x - 2.0 * h) - 8.0 * fn(x - h) + 8.0 * fn(x + h) - fn(x + 2.0 * h)) / (12.0 * h);
}

}  // namespace detail

/// xi'(0) / xi(0) by a five-point difference of xi on the real axis.
inline double xi_log_derivative_at_zero(const EvalOptions& opts = {}) {
  const auto real_xi = [&](double s) { return xi(ComplexValue(s, 0.0), opts).real(); };
  return detail::five_point_derivative(real_xi, 0.0, 1e-3) / real_xi(0.0);
}

/// Closed form xi'(0)/xi(0) = (1/2) log 4 pi - 1 - gamma / 2.
inline double xi_log_derivative_at_zero_closed_form() {
  return 0.5 * std::log(4.0 * kPi) - 1.0 - 0.5 * kEulerGamma;
}

/// y* = 4 pi e^{-gamma}, cross-checked against log y* = 2 (1 + xi'(0)/xi(0))
/// with the closed form of xi'(0)/xi(0).
inline double y_star() {
  const double closed = 4.0 * kPi * std::exp(-kEulerGamma);
  const double via_xi = std::exp(2.0 * (1.0 + xi_log_derivative_at_zero_closed_form()));
  if (std::abs(closed - via_xi) > 1e-10) {
    throw SelfCheckError("y_star: closed form and xi'(0)/xi(0) route disagree");
  }
  return closed;
}

/// The unique y with dF/dsigma(y, 1/2) = 0, i.e. log y = -f'(1/2) / (2 f(1/2)),
/// from a numerical five-point derivative of log f.
inline double y_star_from_f_derivative(const EvalOptions& opts = {}) {
  const auto log_f = [&](double sigma) { return std::log(f_ratio(sigma, opts)); };
  return std::exp(-0.5 * detail::five_point_derivative(log_f, 0.5, 1e-3));
}

/// Real zeros of a0(y, sigma) in (1/2, 1) for y >= 1.
///
/// Empty for y <= y*; otherwise the single sigma_y with F(y, sigma_y) = 1
/// (its mirror 1 - sigma_y is implied by the functional equation). log f is
/// odd about 1/2, so with eps = sigma - 1/2 the zero solves
/// psi(eps) = 2 log y + log f(1/2 + eps) / eps = 0 where psi(0) = 2 log(y / y*)
/// is exact; psi is bisected, using an even Taylor fit near eps = 0.
inline std::vector<ZeroRecord> real_zeros(double y, const EvalOptions& opts = {}) {
  opts.validate();
  if (!(y >= 1.0) || !std::isfinite(y)) throw DomainError("real_zeros: requires y >= 1");
  const double ys = y_star();
  if (y <= ys) return {};
  const double log_y = std::log(y);
  const double l0 = -2.0 * std::log(ys);
  const auto direct = [&](double eps) { return std::log(f_ratio(0.5 + eps, opts)) / eps; };
  constexpr double e1 = 0.05;
  constexpr double e2 = 0.1;
  const double d1 = direct(e1) - l0;
  const double d2 = direct(e2) - l0;
  // d = l2 e^2 + l4 e^4 at both radii.
  const double l4 = (d2 / (e2 * e2) - d1 / (e1 * e1)) / (e2 * e2 - e1 * e1);
  const double l2 = d1 / (e1 * e1) - l4 * e1 * e1;
  const auto psi = [&](double eps) {
    if (eps < 1e-3) return 2.0 * log_y + l0 + l2 * eps * eps + l4 * eps * eps * eps * eps;
    return 2.0 * log_y + direct(eps);
  };
  double lo = 0.0;
  double hi = 0.5 - 1e-9;
  if (!(psi(hi) < 0.0)) throw AccuracyError("real_zeros: no sign change of F - 1 on (1/2, 1)");
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (psi(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double sigma = 0.5 + 0.5 * (lo + hi);
  ZeroRecord rec;
  rec.family = ConstantTerm{y};
  rec.index = 1;
  rec.ordinate = sigma;
  rec.real_axis = true;
  const ComplexValue first = (sigma - 1.0) * xi(2.0 * sigma, opts) * detail::real_pow(y, sigma);
  const ComplexValue second = sigma * xi(2.0 * sigma - 1.0, opts) * detail::real_pow(y, 1.0 - sigma);
  rec.residual = std::abs(first + second);
  rec.scale = std::abs(first) + std::abs(second);
  return {rec};
}

/// Ordinate of the index-th critical-line zero of I(T, s) for each T.
inline std::vector<std::pair<double, double>> zero_trajectory(const std::vector<double>& t_values, int index,
                                                              const EvalOptions& opts = {}) {
  if (index < 1) throw DomainError("zero_trajectory: index must be >= 1");
  std::vector<std::pair<double, double>> out;
  std::optional<PhaseTrace> trace;
  double t_max = 10.0;
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const double T = t_values[i];
    if (!(T >= 1.0)) throw DomainError("zero_trajectory: requires T >= 1");
    if (i > 0 && !(T > t_values[i - 1])) throw DomainError("zero_trajectory: T values must ascend");
    for (;;) {
      if (!trace || trace->t_max() < 2.0 * t_max) trace.emplace(phase_trace(PhaseBase::XiPhase, 2.0 * t_max, opts));
      const auto zeros = critical_line_zeros(Truncation{T}, t_max, opts, &*trace);
      if (static_cast<int>(zeros.size()) >= index) {
        out.emplace_back(T, zeros[static_cast<std::size_t>(index - 1)].ordinate);
        break;
      }
      if (t_max >= 100.0) throw DomainError("zero_trajectory: zero index beyond t = 100");
      t_max = std::min(100.0, 2.0 * t_max);
    }
  }
  return out;
}

}  // namespace eiszeta

#endif  // EISZETA_ZERO_FINDER_HPP
