#ifndef EISZETA_VERIFICATION_HPP
#define EISZETA_VERIFICATION_HPP

// Numerical check of the Maass-Selberg relation: the weighted L2 norm of the
// truncated Eisenstein series over the fundamental domain against its
// closed form in the constant term.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "eiszeta/core.hpp"
#include "eiszeta/eisenstein.hpp"
#include "eiszeta/parallel.hpp"
#include "eiszeta/special_functions.hpp"

namespace eiszeta {

/// E*_T(z, s): E*(z, s) minus a0(y, s) when Im z >= T, E*(z, s) otherwise.
/// z must lie in the standard fundamental domain.
inline ComplexValue truncated_eisenstein(ComplexValue z, ComplexValue s, double T, long long n_max,
                                         const EvalOptions& opts = {}) {
  if (!(T >= 1.0) || !std::isfinite(T)) throw DomainError("truncated_eisenstein: T must be >= 1");
  if (!(z.imag() > 0.0) || std::abs(z) < 1.0 - 1e-12 || !(z.real() > -0.5 - 1e-12 && z.real() <= 0.5 + 1e-12)) {
    throw DomainError("truncated_eisenstein: z must lie in the fundamental domain");
  }
  return eisenstein_series(z, s, n_max, opts, z.imag() < T).value;
}

struct MSCheckReport {
  ComplexValue s;
  double T = 0.0;
  ComplexValue lhs;
  ComplexValue rhs;
  double abs_gap = 0.0;
  double quadrature_estimate = 0.0;
  long long n_max = 0;
  int grid = 0;
  std::string domain_note;
};

/// Right side of the relation:
/// a0(T, s) X(T, conj s) - a0(T, conj s) X(T, s) with
/// X(T, s) = s zeta*(2s) T^{s-1} + (1 - s) zeta*(2s - 1) T^{-s}.
inline ComplexValue maass_selberg_rhs(ComplexValue s, double T, const EvalOptions& opts = {}) {
  const auto x_term = [&](ComplexValue u) {
    return u * completed_zeta(2.0 * u, opts) * detail::real_pow(T, u - 1.0) +
           (1.0 - u) * completed_zeta(2.0 * u - 1.0, opts) * detail::real_pow(T, -u);
  };
  const ComplexValue sb = std::conj(s);
  return a0(T, s, opts) * x_term(sb) - a0(T, sb, opts) * x_term(s);
}

namespace detail {

struct GaussNodes {
  std::vector<double> x;  // on [-1, 1]
  std::vector<double> w;
};

inline const GaussNodes& gauss8() {
  static const GaussNodes nodes = [] {
    using rule = boost::math::quadrature::gauss<double, 8>;
    GaussNodes g;
    for (std::size_t i = 0; i < rule::abscissa().size(); ++i) {
      g.x.push_back(-rule::abscissa()[i]);
      g.w.push_back(rule::weights()[i]);
      g.x.push_back(rule::abscissa()[i]);
      g.w.push_back(rule::weights()[i]);
    }
    return g;
  }();
  return nodes;
}

/// Composite 8-point Gauss-Legendre nodes on the panels [edges[k], edges[k+1]].
inline void panel_nodes(const std::vector<double>& edges, std::vector<double>& x, std::vector<double>& w) {
  const GaussNodes& g = gauss8();
  x.clear();
  w.clear();
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double mid = 0.5 * (edges[k] + edges[k + 1]);
    const double half = 0.5 * (edges[k + 1] - edges[k]);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      x.push_back(mid + half * g.x[i]);
      w.push_back(half * g.w[i]);
    }
  }
}

inline std::vector<double> uniform_edges(double a, double b, std::size_t panels) {
  std::vector<double> e(panels + 1);
  for (std::size_t k = 0; k <= panels; ++k) e[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(panels);
  return e;
}

/// Edges clustered toward a, where the e^{-4 pi y} integrand is concentrated.
inline std::vector<double> geometric_edges(double a, double b, std::size_t panels) {
  constexpr double alpha = 6.0;
  std::vector<double> e(panels + 1);
  for (std::size_t k = 0; k <= panels; ++k) {
    e[k] = a + (b - a) * std::expm1(alpha * static_cast<double>(k) / static_cast<double>(panels)) / std::expm1(alpha);
  }
  return e;
}

/// Fourier coefficients a_1..a_{n_max} at height y, dropping terms whose K
/// factor is below e^{-750} (their squares underflow).
inline std::vector<ComplexValue> fourier_row(double y, ComplexValue s, long long n_max, const EvalOptions& opts) {
  std::vector<ComplexValue> row;
  for (long long n = 1; n <= n_max; ++n) {
    if (2.0 * kPi * static_cast<double>(n) * y > 750.0) break;
    row.push_back(a_n(n, y, s, opts));
  }
  return row;
}

struct MSIntegral {
  double value = 0.0;
  double tail = 0.0;
};

/// Integral over the fundamental domain, clipped at y_cut, of |E*_T(z, s)|^2 / y^2.
/// 2D Gauss-Legendre on sqrt(3)/2 <= y <= 1 (outer variable y = 1 - u^2
/// removes the square-root edge of the arc); Parseval in x for y >= 1.
inline MSIntegral ms_integral(ComplexValue s, double T, long long n_max, int grid, double y_cut,
                              const EvalOptions& opts) {
  const auto panels = static_cast<std::size_t>(grid / 8);
  std::vector<double> ux, uw;
  const double u_max = std::sqrt(1.0 - 0.5 * std::sqrt(3.0));
  panel_nodes(uniform_edges(0.0, u_max, panels), ux, uw);

  // Arc region: the integrand is even in x, so integrate x in [x_lo(y), 1/2] twice.
  const std::vector<double> arc = parallel_map(ux.size(), opts.threads, [&](std::size_t i) {
    const double u = ux[i];
    const double y = 1.0 - u * u;
    const double x_lo = u * std::sqrt(2.0 - u * u);
    const ComplexValue c0 = a0(y, s, opts);
    const std::vector<ComplexValue> row = fourier_row(y, s, n_max, opts);
    std::vector<double> xs, xw;
    panel_nodes(uniform_edges(x_lo, 0.5, panels), xs, xw);
    double inner = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      ComplexValue e = c0;
      for (std::size_t n = 0; n < row.size(); ++n) {
        e += 2.0 * row[n] * std::cos(2.0 * kPi * static_cast<double>(n + 1) * xs[j]);
      }
      inner += xw[j] * std::norm(e);
    }
    return 2.0 * inner / (y * y) * 2.0 * u * uw[i];
  });

  // Full-period rows: int |E*_T|^2 dx = [y < T] |a0|^2 + 2 sum_{n >= 1} |a_n|^2.
  std::vector<double> yx, yw, tx, tw;
  if (T > 1.0) panel_nodes(uniform_edges(1.0, T, panels), yx, yw);
  panel_nodes(geometric_edges(T, y_cut, panels), tx, tw);
  const std::size_t below = yx.size();
  yx.insert(yx.end(), tx.begin(), tx.end());
  yw.insert(yw.end(), tw.begin(), tw.end());
  const std::vector<double> band = parallel_map(yx.size(), opts.threads, [&](std::size_t i) {
    const double y = yx[i];
    double row_sum = 0.0;
    for (const ComplexValue& c : fourier_row(y, s, n_max, opts)) row_sum += 2.0 * std::norm(c);
    if (i < below) row_sum += std::norm(a0(y, s, opts));
    return yw[i] * row_sum / (y * y);
  });

  MSIntegral out;
  for (const double v : arc) out.value += v;
  for (const double v : band) out.value += v;
  // Beyond y_cut: 2 |a_1(y)|^2 / y^2 decays at least like e^{-4 pi y}.
  const double lead = 2.0 * std::norm(a_n(1, y_cut, s, opts)) / (y_cut * y_cut);
  out.tail = 2.0 * lead / (4.0 * kPi);
  return out;
}

}  // namespace detail

/// Compares (s - conj s)(1 - s - conj s) int |E*_T(z, s)|^2 dx dy / y^2 over
/// the fundamental domain with maass_selberg_rhs. The quadrature runs at
/// `grid` and 2 grid nodes per axis; their gap, the y_cut tail and the
/// Fourier truncation make up quadrature_estimate. Throws AccuracyError when
/// the two grids disagree by more than 1e-6 relative.
inline MSCheckReport maass_selberg_check(ComplexValue s, double T, long long n_max = 12, int grid = 64,
                                         const EvalOptions& opts = {}) {
  opts.validate();
  if (!(T >= 1.0) || !std::isfinite(T)) throw DomainError("maass_selberg_check: T must be >= 1");
  if (grid < 32) throw DomainError("maass_selberg_check: grid must be >= 32");
  if (n_max < 1) throw DomainError("maass_selberg_check: n_max must be >= 1");
  if (!(s.real() > 0.0 && s.real() < 1.0)) throw DomainError("maass_selberg_check: Re(s) must lie in (0, 1)");

  MSCheckReport report;
  report.s = s;
  report.T = T;
  report.n_max = n_max;
  report.grid = grid;
  report.domain_note =
      "integration domain taken as the standard fundamental domain {|z| > 1, -1/2 < Re z <= 1/2}";
  report.rhs = maass_selberg_rhs(s, T, opts);

  const ComplexValue sb = std::conj(s);
  const ComplexValue prefactor = (s - sb) * (1.0 - s - sb);
  if (prefactor == 0.0) {
    report.lhs = 0.0;
    report.abs_gap = std::abs(report.rhs);
    return report;
  }

  const double y_cut = T + 12.0 / (2.0 * kPi) * std::log(1.0 / opts.rel_tol);
  const detail::MSIntegral coarse = detail::ms_integral(s, T, n_max, grid, y_cut, opts);
  const detail::MSIntegral fine = detail::ms_integral(s, T, n_max, 2 * grid, y_cut, opts);
  const double refinement = std::abs(fine.value - coarse.value);
  if (refinement > 1e-6 * std::abs(fine.value)) {
    throw AccuracyError("maass_selberg_check: grid and 2 x grid quadratures disagree beyond 1e-6 relative");
  }
  // Omitted Fourier modes are largest on the arc's lowest point y = sqrt(3)/2.
  const double y_low = 0.5 * std::sqrt(3.0);
  const double omitted = std::abs(a_n(n_max + 1, y_low, s, opts));
  double partial = 0.0;
  for (long long n = 1; n <= n_max; ++n) partial += std::abs(a_n(n, y_low, s, opts));
  partial += std::abs(a0(y_low, s, opts));
  const double truncation = 4.0 * omitted * partial / (y_low * y_low);

  const double magnitude = std::abs(prefactor);
  report.lhs = prefactor * fine.value;
  report.abs_gap = std::abs(report.lhs - report.rhs);
  report.quadrature_estimate =
      std::max({magnitude * refinement, magnitude * fine.tail, magnitude * truncation,
                64.0 * std::numeric_limits<double>::epsilon() * magnitude * std::abs(fine.value)});
  return report;
}

}  // namespace eiszeta

#endif  // EISZETA_VERIFICATION_HPP
