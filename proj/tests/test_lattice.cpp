#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <limits>
#include <random>

#include "eiszeta/lattice.hpp"

using namespace eiszeta;

namespace {

LatticeBasis rotate(const LatticeBasis& basis, std::mt19937_64& rng) {
  const auto m = static_cast<Eigen::Index>(basis.ambient_dim());
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = g(rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
  const Eigen::MatrixXd b = basis.matrix() * q;
  std::vector<std::vector<double>> rows(b.rows(), std::vector<double>(b.cols()));
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) rows[i][j] = b(i, j);
  return LatticeBasis(rows);
}

int brute_force_shortest_sq(const LatticeBasis& basis, int box, double& best) {
  const auto& r = basis.rows();
  best = std::numeric_limits<double>::infinity();
  const std::size_t n = r.size();
  std::vector<int> c(n, -box);
  int count = 0;
  for (;;) {
    if (std::any_of(c.begin(), c.end(), [](int v) { return v != 0; })) {
      double norm = 0.0;
      for (std::size_t k = 0; k < basis.ambient_dim(); ++k) {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) v += c[i] * r[i][k];
        norm += v * v;
      }
      best = std::min(best, norm);
      ++count;
    }
    std::size_t i = 0;
    while (i < n && ++c[i] > box) c[i++] = -box;
    if (i == n) break;
  }
  return count;
}

}  // namespace

TEST(Parse, RationalsAndDecimals) {
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("1.5e2"), Rational(150));
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_THROW(parse_rational("abc"), DomainError);
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  const LatticeBasis b = LatticeBasis::parse("# diag\n2 0\n0 1/2\n\n");
  EXPECT_EQ(b.rank(), 2u);
  ASSERT_TRUE(b.exact().has_value());
  EXPECT_EQ((*b.exact())[1][1], Rational(1, 2));
}

TEST(Basis, ShapeErrors) {
  EXPECT_THROW(LatticeBasis::parse("1 0\n0 1\n1 1\n"), RankError);
  EXPECT_THROW(covolume(LatticeBasis::parse("1 0\n2 0\n")), RankError);
  EXPECT_THROW(LatticeBasis::parse("1 0\n1\n"), DomainError);
}

TEST(Covolume, Examples) {
  EXPECT_NEAR(covolume(LatticeBasis::identity(3)), 1.0, 1e-15);
  EXPECT_NEAR(covolume(rank2_basis({0.3, 1.7})), 1.7, 1e-14);
  EXPECT_NEAR(covolume(LatticeBasis::parse("2 0\n0 1/2")), 1.0, 1e-15);
}

TEST(Slope, Examples) {
  EXPECT_NEAR(slope(LatticeBasis::identity(4)), 0.0, 1e-15);
  EXPECT_NEAR(slope(LatticeBasis::parse("3 4")), std::log(5.0), 1e-15);
  EXPECT_NEAR(slope(rank2_basis({0.0, std::exp(2.0)})), 1.0, 1e-14);
}

TEST(Kappa, Examples) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t r = 1; r <= n; ++r) EXPECT_NEAR(kappa_r(LatticeBasis::identity(n), r), 1.0, 1e-14);
  EXPECT_NEAR(kappa_r(rank2_basis({0.3, 1.2}), 1), 1.0, 1e-14);
  EXPECT_NEAR(kappa_r(LatticeBasis::parse("2 0\n0 1/2"), 1), 0.5, 1e-15);
  EXPECT_THROW(kappa_r(LatticeBasis::identity(5), 1), ScaleError);
  EXPECT_THROW(kappa_r(LatticeBasis::identity(2), 3), DomainError);
}

TEST(Kappa, MatchesBruteForceShortestVector) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (auto& row : rows)
      for (auto& v : row) v = u(rng);
    const LatticeBasis basis(rows);
    if (covolume(basis) < 0.3) continue;
    double best = 0.0;
    brute_force_shortest_sq(basis, n == 2 ? 20 : 8, best);
    EXPECT_NEAR(kappa_r(basis, 1), std::sqrt(best), 1e-10 * std::sqrt(best)) << trial;
  }
}

TEST(Kappa, TopRankIsCovolume) {
  const LatticeBasis b = LatticeBasis::parse("1 2 3 4\n0 1 5 2\n3 0 1 1\n2 2 2 7\n");
  EXPECT_NEAR(kappa_r(b, 4), covolume(b), 1e-9 * covolume(b));
  EXPECT_LE(kappa_r(b, 2), kappa_r(b, 1) * kappa_r(b, 1) * 4.0);
}

TEST(Polygon, IntegerLatticesSemistableNotStable) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const CanonicalPolygon p = canonical_polygon(LatticeBasis::identity(n));
    EXPECT_EQ(p.classification, Stability::Semistable);
    ASSERT_EQ(p.vertices.size(), 2u);
    EXPECT_EQ(p.vertices.back().first, static_cast<int>(n));
    EXPECT_NEAR(p.vertices.back().second, 0.0, 1e-15);
    EXPECT_TRUE(p.exact);
  }
}

TEST(Polygon, Rank2Examples) {
  EXPECT_EQ(canonical_polygon(rank2_basis({0.0, 2.0})).classification, Stability::Unstable);
  const CanonicalPolygon d = canonical_polygon(LatticeBasis::parse("2 0\n0 1/2"));
  EXPECT_EQ(d.classification, Stability::Unstable);
  ASSERT_EQ(d.vertices.size(), 3u);
  EXPECT_NEAR(d.vertices[1].second, std::log(0.5), 1e-15);
  EXPECT_NEAR(d.vertices[2].second, 0.0, 1e-15);
  EXPECT_EQ(canonical_polygon(rank2_basis({0.5, 0.9})).classification, Stability::Stable);
}

TEST(Polygon, HullValidity) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 3;
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (auto& row : rows)
      for (auto& v : row) v = u(rng);
    const LatticeBasis basis(rows);
    if (covolume(basis) < 0.2) continue;
    const CanonicalPolygon p = canonical_polygon(basis);
    EXPECT_EQ(p.vertices.front(), std::make_pair(0, 0.0));
    EXPECT_NEAR(p.vertices.back().second, std::log(covolume(basis)), 1e-12);
    for (std::size_t i = 2; i < p.vertices.size(); ++i) {
      const double s1 = (p.vertices[i - 1].second - p.vertices[i - 2].second) /
                        (p.vertices[i - 1].first - p.vertices[i - 2].first);
      const double s2 =
          (p.vertices[i].second - p.vertices[i - 1].second) / (p.vertices[i].first - p.vertices[i - 1].first);
      EXPECT_GT(s2, s1);
    }
  }
}

TEST(Polygon, HomothetyAndRotationInvariance) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> lambda(0.2, 5.0);
  const std::vector<LatticeBasis> bases{LatticeBasis::identity(3), LatticeBasis::parse("2 0\n0 1/2"),
                                        rank2_basis({0.2, 0.9}), LatticeBasis::parse("1 1 0\n0 3 1\n2 0 5")};
  for (const LatticeBasis& b : bases) {
    const CanonicalPolygon base = canonical_polygon(b);
    for (int k = 0; k < 10; ++k) {
      const double l = lambda(rng);
      const CanonicalPolygon scaled = canonical_polygon(rotate(b.scaled(l), rng));
      EXPECT_EQ(scaled.classification, base.classification);
      ASSERT_EQ(scaled.points.size(), base.points.size());
      for (std::size_t r = 1; r < base.points.size(); ++r) {
        EXPECT_NEAR(scaled.points[r].second, base.points[r].second + r * std::log(l), 1e-9);
      }
    }
  }
}

TEST(Rank2, Reduction) {
  const Rank2Classification i = classify_rank2_point({0.0, 1.0});
  EXPECT_NEAR(std::abs(i.reduced - ComplexValue(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_EQ(i.classification, Stability::Semistable);
  EXPECT_EQ(classify_rank2_point({0.5, 5.0}).classification, Stability::Unstable);
  const Rank2Classification far = classify_rank2_point({10.3, 0.8});
  EXPECT_GE(std::abs(far.reduced), 1.0);
  EXPECT_LE(std::abs(far.reduced.real()), 0.5);
  const CanonicalPolygon p = canonical_polygon(rank2_basis({10.3, 0.8}));
  EXPECT_EQ(p.semistable(), far.classification != Stability::Unstable);
  const ComplexValue half = reduce_to_fundamental_domain({-0.5, 2.0});
  EXPECT_EQ(half.real(), 0.5);
  EXPECT_THROW(classify_rank2_point({0.0, -1.0}), DomainError);
}

TEST(Rank2, AgreesWithPolygon) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> x(-5.0, 5.0), y(0.05, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const ComplexValue z(x(rng), y(rng));
    const Rank2Classification c = classify_rank2_point(z);
    if (std::abs(c.reduced.imag() - 1.0) < 1e-9) continue;
    const CanonicalPolygon p = canonical_polygon(rank2_basis(z).scaled(1.0 / std::sqrt(z.imag())));
    EXPECT_EQ(p.classification, c.classification) << z;
  }
}

TEST(Submultiplicativity, RandomPairsInZ3) {
  const SubmultiplicativityReport r = submultiplicativity_check(LatticeBasis::identity(3), 100, 42);
  EXPECT_EQ(r.trials, 100);
  EXPECT_EQ(r.violations, 0);
  EXPECT_LE(r.max_ratio, 1.0);
  EXPECT_GT(r.equalities, 0);
}

TEST(Submultiplicativity, NonUnimodularBasis) {
  const SubmultiplicativityReport r = submultiplicativity_check(LatticeBasis::parse("2 1/3 0\n0 1 0.5\n1 0 3"), 50, 7);
  EXPECT_EQ(r.violations, 0);
  EXPECT_THROW(submultiplicativity_check(LatticeBasis::identity(4), 1, 1), ScaleError);
}

TEST(Submultiplicativity, EqualityInRankOne) {
  // In Z, aZ n bZ = lcm Z and aZ + bZ = gcd Z, so every pair is an equality.
  const SubmultiplicativityReport r = submultiplicativity_check(LatticeBasis::identity(1), 20, 3);
  EXPECT_EQ(r.violations, 0);
  EXPECT_EQ(r.equalities, 20);
  EXPECT_DOUBLE_EQ(r.max_ratio, 1.0);
}
