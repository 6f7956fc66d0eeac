#ifndef EISZETA_LATTICE_HPP
#define EISZETA_LATTICE_HPP

// Euclidean lattices in R^m: covolume, slope, minimal sublattice covolumes
// kappa_r, the canonical polygon with its stability classification, the
// rank-2 upper half-plane shortcut, and an exact check of
// Vol(L1 n L2) Vol(L1 + L2) <= Vol(L1) Vol(L2).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "eiszeta/core.hpp"

namespace eiszeta {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Basis and exact input.

/// Parses "p/q", integers and decimals (optionally with an exponent) exactly.
inline Rational parse_rational(const std::string& token) {
  const auto bad = [&] { return DomainError("cannot parse number '" + token + "'"); };
  if (token.empty()) throw bad();
  if (const auto slash = token.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(token.substr(0, slash));
    const Rational den = parse_rational(token.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + token + "'");
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (token[i] == '+' || token[i] == '-') negative = token[i++] == '-';
  BigInt mantissa = 0;
  long long scale = 0;
  bool digits = false;
  bool point = false;
  for (; i < token.size(); ++i) {
    const char c = token[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (point) --scale;
      digits = true;
    } else if (c == '.' && !point) {
      point = true;
    } else {
      break;
    }
  }
  if (!digits) throw bad();
  if (i < token.size()) {
    if (token[i] != 'e' && token[i] != 'E') throw bad();
    std::size_t used = 0;
    long long exponent = 0;
    try {
      exponent = std::stoll(token.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != token.size() - i - 1 || std::llabs(exponent) > 4000) throw bad();
    scale += exponent;
  }
  Rational value(mantissa);
  const BigInt ten_power = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(scale)));
  if (scale >= 0) {
    value *= ten_power;
  } else {
    value /= ten_power;
  }
  return negative ? -value : value;
}

/// r x m matrix of basis row vectors. Rows read from text keep an exact
/// rational copy used for exact comparisons.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  explicit LatticeBasis(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) { check_shape(); }
  explicit LatticeBasis(std::vector<std::vector<Rational>> exact) : exact_(std::move(exact)) {
    for (const auto& row : *exact_) {
      std::vector<double> r;
      for (const auto& v : row) r.push_back(static_cast<double>(v));
      rows_.push_back(std::move(r));
    }
    check_shape();
  }

  /// One row per line, whitespace-separated decimals or "p/q"; '#' starts a comment.
  static LatticeBasis parse(std::istream& in) {
    std::vector<std::vector<Rational>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream tokens(line);
      std::vector<Rational> row;
      for (std::string tok; tokens >> tok;) row.push_back(parse_rational(tok));
      if (!row.empty()) rows.push_back(std::move(row));
    }
    return LatticeBasis(std::move(rows));
  }

  static LatticeBasis parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  static LatticeBasis identity(std::size_t n) {
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
    return LatticeBasis(std::move(rows));
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t ambient_dim() const { return rows_.empty() ? 0 : rows_[0].size(); }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::optional<std::vector<std::vector<Rational>>>& exact() const { return exact_; }

  /// Exact rows: the parsed rationals, or the doubles converted without rounding.
  std::vector<std::vector<Rational>> exact_rows() const {
    if (exact_) return *exact_;
    std::vector<std::vector<Rational>> out;
    for (const auto& row : rows_) {
      std::vector<Rational> r;
      for (const double v : row) r.emplace_back(v);
      out.push_back(std::move(r));
    }
    return out;
  }

  LatticeBasis scaled(double lambda) const {
    auto rows = rows_;
    for (auto& row : rows)
      for (auto& v : row) v *= lambda;
    return LatticeBasis(std::move(rows));
  }

  Eigen::MatrixXd matrix() const {
    Eigen::MatrixXd m(rank(), ambient_dim());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < ambient_dim(); ++j) m(i, j) = rows_[i][j];
    return m;
  }

 private:
  void check_shape() const {
    if (rows_.empty()) throw RankError("lattice basis has no rows");
    for (const auto& row : rows_) {
      if (row.size() != rows_[0].size()) throw DomainError("lattice basis rows have different lengths");
      for (const double v : row)
        if (!std::isfinite(v)) throw DomainError("lattice basis entries must be finite");
    }
    if (rows_.size() > rows_[0].size()) throw RankError("lattice basis has more rows than columns");
  }

  std::vector<std::vector<double>> rows_;
  std::optional<std::vector<std::vector<Rational>>> exact_;
};

namespace detail {

inline Eigen::MatrixXd gram(const LatticeBasis& basis) {
  const Eigen::MatrixXd b = basis.matrix();
  return b * b.transpose();
}

/// Gram determinant after checking full row rank against the Hadamard bound.
inline double checked_gram_determinant(const LatticeBasis& basis) {
  const Eigen::MatrixXd g = gram(basis);
  const double det = g.determinant();
  double hadamard = 1.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) hadamard *= g(i, i);
  if (!(det > 1e-10 * hadamard)) throw RankError("lattice basis is not of full row rank");
  return det;
}

inline Rational power(const Rational& base, std::size_t exponent) {
  Rational out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

template <typename T>
T exact_determinant(std::vector<std::vector<T>> m) {
  const std::size_t n = m.size();
  T det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return T(0);
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const T factor = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  return det;
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
    }
    previous = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace detail

/// Vol(L) = det(B B^T)^{1/2}.
inline double covolume(const LatticeBasis& basis) {
  return std::sqrt(detail::checked_gram_determinant(basis));
}

/// s(L) = log Vol(L) / rank.
inline double slope(const LatticeBasis& basis) {
  return std::log(covolume(basis)) / static_cast<double>(basis.rank());
}

// ---------------------------------------------------------------------------
// Minimal covolumes.

namespace detail {

/// LLL reduction (delta = 0.99) of the rows; returns the integer transform U
/// with reduced = U * basis.
inline std::vector<std::vector<long long>> lll_transform(const Eigen::MatrixXd& basis) {
  const auto n = static_cast<std::size_t>(basis.rows());
  Eigen::MatrixXd b = basis;
  std::vector<std::vector<long long>> u(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  constexpr double delta = 0.99;

  const auto gso = [&](Eigen::MatrixXd& mu, Eigen::VectorXd& norms) {
    Eigen::MatrixXd star = b;
    mu.setZero(n, n);
    norms.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        mu(i, j) = b.row(i).dot(star.row(j)) / norms(j);
        star.row(i) -= mu(i, j) * star.row(j);
      }
      norms(i) = star.row(i).squaredNorm();
    }
  };
  Eigen::MatrixXd mu;
  Eigen::VectorXd norms;
  gso(mu, norms);
  std::size_t k = 1;
  for (int guard = 0; k < n && guard < 100000; ++guard) {
    for (std::size_t jj = k; jj-- > 0;) {
      const double q = std::round(mu(k, jj));
      if (q == 0.0) continue;
      b.row(k) -= q * b.row(jj);
      const auto qi = static_cast<long long>(q);
      for (std::size_t c = 0; c < n; ++c) u[k][c] -= qi * u[jj][c];
      gso(mu, norms);
    }
    if (norms(k) >= (delta - mu(k, k - 1) * mu(k, k - 1)) * norms(k - 1)) {
      ++k;
    } else {
      b.row(k).swap(b.row(k - 1));
      std::swap(u[k], u[k - 1]);
      gso(mu, norms);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return u;
}

/// Size-r subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  const auto rec = [&](auto&& self, std::size_t start) -> void {
    if (current.size() == r) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Gram matrix of the r-th exterior power: entries det(G[I, J]).
template <typename Matrix>
Eigen::MatrixXd compound_gram(const Matrix& g, const std::vector<std::vector<std::size_t>>& sets) {
  const auto k = static_cast<Eigen::Index>(sets.size());
  const auto r = static_cast<Eigen::Index>(sets[0].size());
  Eigen::MatrixXd out(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) {
      Eigen::MatrixXd minor(r, r);
      for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) minor(i, j) = g(sets[a][i], sets[b][j]);
      out(a, b) = minor.determinant();
    }
  return out;
}

/// All nonzero integer vectors x with x^T q x <= bound (Fincke-Pohst).
inline std::vector<std::vector<long long>> short_vectors(const Eigen::MatrixXd& q, double bound,
                                                         std::size_t limit = 2'000'000) {
  const auto n = static_cast<std::size_t>(q.rows());
  const Eigen::LLT<Eigen::MatrixXd> llt(q);
  if (llt.info() != Eigen::Success) throw RankError("lattice Gram matrix is not positive definite");
  const Eigen::MatrixXd r = llt.matrixU();
  std::vector<double> diag(n);
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = r(i, i) * r(i, i);
    for (std::size_t j = i + 1; j < n; ++j) mu(i, j) = r(i, j) / r(i, i);
  }
  std::vector<std::vector<long long>> out;
  std::vector<long long> x(n, 0);
  const auto rec = [&](auto&& self, std::size_t level, double remaining) -> void {
    double center = 0.0;
    for (std::size_t j = level + 1; j < n; ++j) center -= mu(level, j) * static_cast<double>(x[j]);
    const double radius = std::sqrt(std::max(0.0, remaining) / diag[level]);
    const auto lo = static_cast<long long>(std::ceil(center - radius - 1e-12));
    const auto hi = static_cast<long long>(std::floor(center + radius + 1e-12));
    for (long long v = lo; v <= hi; ++v) {
      x[level] = v;
      const double d = static_cast<double>(v) - center;
      const double rest = remaining - diag[level] * d * d;
      if (rest < -1e-12 * bound) continue;
      if (level == 0) {
        if (std::any_of(x.begin(), x.end(), [](long long c) { return c != 0; })) {
          out.push_back(x);
          if (out.size() > limit) throw ScaleError("lattice enumeration exceeded its size limit");
        }
      } else {
        self(self, level - 1, rest);
      }
    }
    x[level] = 0;
  };
  rec(rec, n - 1, bound);
  return out;
}

/// Whether a Plucker vector in the exterior power is a pure wedge. Only the
/// case r = 2, n = 4 is nontrivial for n <= 4.
inline bool decomposable(const std::vector<long long>& p, std::size_t n, std::size_t r) {
  if (r == 2 && n == 4) {
    // Subsets in order 01 02 03 12 13 23.
    const BigInt rel = BigInt(p[0]) * p[5] - BigInt(p[1]) * p[4] + BigInt(p[2]) * p[3];
    return rel == 0;
  }
  return true;
}

struct KappaSearch {
  double value = 0.0;                               // kappa_r
  std::optional<Rational> exact_square;              // kappa_r^2 for exact input
};

inline KappaSearch kappa_search(const LatticeBasis& basis, std::size_t r) {
  const std::size_t n = basis.rank();
  if (n > 4) throw ScaleError("kappa_r: enumeration is limited to rank <= 4");
  if (r < 1 || r > n) throw DomainError("kappa_r: r must lie in [1, rank]");
  detail::checked_gram_determinant(basis);
  const auto u = lll_transform(basis.matrix());
  Eigen::MatrixXd um(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) um(i, j) = static_cast<double>(u[i][j]);
  const Eigen::MatrixXd g = um * gram(basis) * um.transpose();
  const auto sets = subsets(n, r);
  const Eigen::MatrixXd q = compound_gram(g, sets);
  // The first reduced r-frame is a sublattice; its covolume bounds kappa_r.
  const double bound = q(0, 0) * (1.0 + 1e-9);
  std::vector<std::vector<long long>> candidates;
  double best = std::numeric_limits<double>::infinity();
  for (auto& p : short_vectors(q, bound)) {
    if (!decomposable(p, n, r)) continue;
    Eigen::VectorXd v(static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) v(static_cast<Eigen::Index>(i)) = static_cast<double>(p[i]);
    const double value = v.dot(q * v);
    best = std::min(best, value);
    candidates.push_back(std::move(p));
  }
  KappaSearch out;
  out.value = std::sqrt(best);
  if (basis.exact()) {
    // Recompute the near-minimal candidates exactly and keep the least.
    const auto rows = *basis.exact();
    const std::size_t m = basis.ambient_dim();
    std::vector<std::vector<Rational>> reduced(n, std::vector<Rational>(m, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t c = 0; c < m; ++c) reduced[i][c] += Rational(u[i][k]) * rows[k][c];
    std::vector<std::vector<Rational>> ge(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t c = 0; c < m; ++c) ge[i][j] += reduced[i][c] * reduced[j][c];
    std::vector<std::vector<Rational>> qe(sets.size(), std::vector<Rational>(sets.size()));
    for (std::size_t a = 0; a < sets.size(); ++a)
      for (std::size_t b = 0; b < sets.size(); ++b) {
        std::vector<std::vector<Rational>> minor(r, std::vector<Rational>(r));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) minor[i][j] = ge[sets[a][i]][sets[b][j]];
        qe[a][b] = exact_determinant(minor);
      }
    for (const auto& p : candidates) {
      Eigen::VectorXd v(static_cast<Eigen::Index>(p.size()));
      for (std::size_t i = 0; i < p.size(); ++i) v(static_cast<Eigen::Index>(i)) = static_cast<double>(p[i]);
      if (v.dot(q * v) > best * (1.0 + 1e-9)) continue;
      Rational value = 0;
      for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < p.size(); ++b) value += Rational(p[a]) * Rational(p[b]) * qe[a][b];
      if (!out.exact_square || value < *out.exact_square) out.exact_square = value;
    }
    out.value = std::sqrt(static_cast<double>(*out.exact_square));
  }
  return out;
}

}  // namespace detail

/// kappa_r(L): least covolume of a rank-r sublattice, found as the shortest
/// pure wedge in the r-th exterior power of the LLL-reduced lattice.
inline double kappa_r(const LatticeBasis& basis, std::size_t r) {
  return detail::kappa_search(basis, r).value;
}

// ---------------------------------------------------------------------------
// Canonical polygon.

enum class Stability { Stable, Semistable, Unstable };

inline std::string stability_name(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Semistable: return "Semistable";
    default: return "Unstable";
  }
}

struct CanonicalPolygon {
  std::vector<std::pair<int, double>> points;    // (r, log kappa_r), r = 0..n
  std::vector<std::pair<int, double>> vertices;  // lower hull, strictly convex
  std::vector<double> kappa;                     // kappa_1 .. kappa_n
  Stability classification = Stability::Unstable;
  bool exact = false;                            // on-segment tests decided exactly

  bool semistable() const { return classification != Stability::Unstable; }
  bool stable() const { return classification == Stability::Stable; }
};

/// Lower convex hull of (0, 0) and (r, log kappa_r(L)), r = 1..n; the last
/// point is (n, log Vol(L)). Semistable when the hull is the single segment
/// to (n, log Vol); Stable when in addition no intermediate point lies on it.
inline CanonicalPolygon canonical_polygon(const LatticeBasis& basis) {
  const std::size_t n = basis.rank();
  if (n > 4) throw ScaleError("canonical_polygon: enumeration is limited to rank <= 4");
  CanonicalPolygon poly;
  poly.points.emplace_back(0, 0.0);
  std::vector<detail::KappaSearch> searches;
  for (std::size_t r = 1; r <= n; ++r) {
    searches.push_back(detail::kappa_search(basis, r));
    poly.kappa.push_back(searches.back().value);
    poly.points.emplace_back(static_cast<int>(r), std::log(searches.back().value));
  }
  // Use the covolume itself for the endpoint.
  poly.points.back().second = std::log(covolume(basis));
  double scale = 1.0;
  for (const auto& [r, v] : poly.points) scale = std::max(scale, std::abs(v));
  const double tol = 1e-9 * scale;

  for (const auto& p : poly.points) {
    while (poly.vertices.size() >= 2) {
      const auto& a = poly.vertices[poly.vertices.size() - 2];
      const auto& b = poly.vertices.back();
      const double cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      // b lies on or above the segment a-p.
      if (cross <= tol) {
        poly.vertices.pop_back();
      } else {
        break;
      }
    }
    poly.vertices.push_back(p);
  }

  const double end = poly.points.back().second;
  bool below = false;
  bool touching = false;
  const bool exact = std::all_of(searches.begin(), searches.end(), [](const auto& s) { return s.exact_square; });
  for (std::size_t r = 1; r < n; ++r) {
    int cmp;
    if (exact) {
      // kappa_r^n vs Vol^r, squared.
      const Rational lhs = detail::power(*searches[r - 1].exact_square, n);
      const Rational rhs = detail::power(*searches[n - 1].exact_square, r);
      cmp = lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    } else {
      const double chord = end * static_cast<double>(r) / static_cast<double>(n);
      const double v = poly.points[r].second;
      cmp = v < chord - tol ? -1 : (v > chord + tol ? 1 : 0);
    }
    below = below || cmp < 0;
    touching = touching || cmp == 0;
  }
  poly.exact = exact;
  poly.classification = below ? Stability::Unstable : (touching ? Stability::Semistable : Stability::Stable);
  return poly;
}

// ---------------------------------------------------------------------------
// Rank-2 lattices L_z = Z[1, z].

struct Rank2Classification {
  ComplexValue reduced;
  Stability classification = Stability::Unstable;
};

/// Moves z into {|z| >= 1, -1/2 < Re z <= 1/2}; points on the arc are taken with Re z >= 0.
inline ComplexValue reduce_to_fundamental_domain(ComplexValue z) {
  if (!(z.imag() > 0.0) || !is_finite(z)) throw DomainError("reduce_to_fundamental_domain: requires Im z > 0");
  for (int guard = 0; guard < 10000; ++guard) {
    double x = z.real() - std::round(z.real());
    if (x <= -0.5) x += 1.0;
    z = ComplexValue(x, z.imag());
    const double norm = std::norm(z);
    if (norm < 1.0 || (norm == 1.0 && x < 0.0)) {
      z = -1.0 / z;
      continue;
    }
    return z;
  }
  throw AccuracyError("reduce_to_fundamental_domain: reduction did not terminate");
}

/// L_z is semistable iff the reduced point has Im z <= 1, stable iff Im z < 1.
inline Rank2Classification classify_rank2_point(ComplexValue z) {
  const ComplexValue w = reduce_to_fundamental_domain(z);
  const double y = w.imag();
  return {w, y < 1.0 ? Stability::Stable : (y == 1.0 ? Stability::Semistable : Stability::Unstable)};
}

/// Basis [(1, 0), (x, y)] of L_z.
inline LatticeBasis rank2_basis(ComplexValue z) {
  return LatticeBasis(std::vector<std::vector<double>>{{1.0, 0.0}, {z.real(), z.imag()}});
}

// ---------------------------------------------------------------------------
// Exact submultiplicativity.

namespace detail {

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Row echelon form H = U M with U unimodular, built from extended-gcd row
/// operations. Returns the number of nonzero rows of H.
inline std::size_t unimodular_echelon(IntMatrix& h, IntMatrix& u) {
  const std::size_t rows = h.size();
  const std::size_t cols = rows ? h[0].size() : 0;
  u.assign(rows, std::vector<BigInt>(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      if (h[r][c] == 0) continue;
      // [a b; c d] with det 1 sending (h[p][c], h[r][c]) to (g, 0).
      BigInt x0 = 1, x1 = 0, y0 = 0, y1 = 1;
      BigInt a = h[pivot_row][c], b = h[r][c];
      while (b != 0) {
        const BigInt q = a / b;
        BigInt t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
      }
      // x0 * hp + y0 * hr = a; x1 * hp + y1 * hr = 0; det = +-1.
      const auto combine = [&](std::vector<BigInt>& p, std::vector<BigInt>& q) {
        for (std::size_t k = 0; k < p.size(); ++k) {
          const BigInt np = x0 * p[k] + y0 * q[k];
          const BigInt nq = x1 * p[k] + y1 * q[k];
          p[k] = np;
          q[k] = nq;
        }
      };
      combine(h[pivot_row], h[r]);
      combine(u[pivot_row], u[r]);
    }
    if (h[pivot_row][c] != 0) ++pivot_row;
  }
  return pivot_row;
}

/// Squared covolume, scaled, of the rows of c in the integer Gram g: det(c g c^T).
inline BigInt gram_volume_squared(const IntMatrix& c, const IntMatrix& g) {
  const std::size_t k = c.size();
  if (k == 0) return 1;
  const std::size_t n = g.size();
  IntMatrix cg(k, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) cg[i][j] += c[i][l] * g[l][j];
  IntMatrix m(k, std::vector<BigInt>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < n; ++l) m[i][j] += cg[i][l] * c[j][l];
  return bareiss_determinant(std::move(m));
}

}  // namespace detail

struct SubmultiplicativityReport {
  int trials = 0;
  int violations = 0;
  int equalities = 0;
  double max_ratio = 0.0;  // largest Vol(L1 n L2) Vol(L1 + L2) / (Vol(L1) Vol(L2))
};

/// Draws `trials` pairs of sublattices L1, L2 of L spanned by random integer
/// combinations (entries in [-3, 3]) of the basis rows and checks
/// Vol(L1 n L2) Vol(L1 + L2) <= Vol(L1) Vol(L2) exactly. The rows are scaled
/// to integers; the scale cancels since rank(L1 n L2) + rank(L1 + L2) =
/// rank L1 + rank L2.
inline SubmultiplicativityReport submultiplicativity_check(const LatticeBasis& basis, int trials,
                                                           std::uint64_t seed = 0) {
  const std::size_t n = basis.rank();
  if (n > 3) throw ScaleError("submultiplicativity_check: limited to rank <= 3");
  if (trials < 0) throw DomainError("submultiplicativity_check: trials must be >= 0");
  detail::checked_gram_determinant(basis);
  const auto rows = basis.exact_rows();
  BigInt denominator = 1;
  for (const auto& row : rows)
    for (const auto& v : row) denominator = boost::multiprecision::lcm(denominator, boost::multiprecision::denominator(v));
  const std::size_t m = basis.ambient_dim();
  detail::IntMatrix b(n, std::vector<BigInt>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) b[i][j] = boost::multiprecision::numerator(Rational(rows[i][j] * denominator));
  detail::IntMatrix g(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k) g[i][j] += b[i][k] * b[j][k];

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<std::size_t> rank_pick(1, n);
  const auto random_sublattice = [&] {
    for (;;) {
      const std::size_t r = rank_pick(rng);
      detail::IntMatrix c(r, std::vector<BigInt>(n));
      for (auto& row : c)
        for (auto& v : row) v = entry(rng);
      if (detail::gram_volume_squared(c, g) != 0) return c;
    }
  };

  SubmultiplicativityReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const detail::IntMatrix c1 = random_sublattice();
    const detail::IntMatrix c2 = random_sublattice();
    detail::IntMatrix stacked = c1;
    stacked.insert(stacked.end(), c2.begin(), c2.end());
    detail::IntMatrix u;
    detail::IntMatrix h = stacked;
    const std::size_t sum_rank = detail::unimodular_echelon(h, u);
    const detail::IntMatrix sum(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(sum_rank));
    // Rows of u below the echelon rank span the left kernel {(x, y) : x c1 + y c2 = 0};
    // x c1 then runs over a basis of the intersection.
    detail::IntMatrix meet;
    for (std::size_t k = sum_rank; k < u.size(); ++k) {
      std::vector<BigInt> v(n, 0);
      for (std::size_t i = 0; i < c1.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) v[j] += u[k][i] * c1[i][j];
      meet.push_back(std::move(v));
    }
    const BigInt left = detail::gram_volume_squared(meet, g) * detail::gram_volume_squared(sum, g);
    const BigInt right = detail::gram_volume_squared(c1, g) * detail::gram_volume_squared(c2, g);
    if (left > right) ++report.violations;
    if (left == right) ++report.equalities;
    report.max_ratio = std::max(report.max_ratio, std::sqrt(static_cast<double>(Rational(left, right))));
  }
  return report;
}

}  // namespace eiszeta

#endif  // EISZETA_LATTICE_HPP
