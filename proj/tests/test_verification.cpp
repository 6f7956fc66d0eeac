#include <gtest/gtest.h>

#include <cmath>

#include "eiszeta/verification.hpp"

using namespace eiszeta;

namespace {

// Closed-form values at 30 digits for the three check points.
struct MSCase {
  ComplexValue s;
  double T;
  double rhs_im;
};
const MSCase kCases[] = {
    {{0.6, 2.0}, 1.5, -0.0014570295746},
    {{0.3, 4.0}, 1.0, 7.857093496e-6},
    {{0.75, 1.0}, 2.0, -0.0541910941299},
};

}  // namespace

TEST(Truncated, SubtractsConstantTermAboveT) {
  const ComplexValue z(0.2, 3.0);
  const ComplexValue s(0.6, 2.0);
  const ComplexValue full = eisenstein_series(z, s, 0).value;
  const ComplexValue cut = truncated_eisenstein(z, s, 1.0, 0);
  EXPECT_LT(std::abs(full - a0(3.0, s) - cut), 1e-12 * std::abs(full));
  double bound = 0.0;
  for (long long n = 1; n <= 40; ++n) bound += 2.0 * std::abs(a_n(n, 3.0, s));
  EXPECT_LE(std::abs(cut), bound);
  EXPECT_EQ(truncated_eisenstein(z, s, 4.0, 0), full);
}

TEST(Truncated, JumpAtTEqualsConstantTerm) {
  const ComplexValue s(0.6, 2.0);
  const ComplexValue below = truncated_eisenstein({0.1, std::nextafter(2.0, 0.0)}, s, 2.0, 0);
  const ComplexValue above = truncated_eisenstein({0.1, 2.0}, s, 2.0, 0);
  EXPECT_NEAR(std::abs(below - above), std::abs(a0(2.0, s)), 1e-10 * std::abs(a0(2.0, s)));
}

TEST(Truncated, RequiresFundamentalDomain) {
  EXPECT_THROW(truncated_eisenstein({0.0, 0.5}, {0.6, 2.0}, 1.0, 0), DomainError);
  EXPECT_THROW(truncated_eisenstein({0.7, 2.0}, {0.6, 2.0}, 1.0, 0), DomainError);
  EXPECT_THROW(truncated_eisenstein({0.0, 2.0}, {0.6, 2.0}, 0.5, 0), DomainError);
}

TEST(MaassSelberg, ClosedFormRightSide) {
  for (const MSCase& c : kCases) {
    const ComplexValue rhs = maass_selberg_rhs(c.s, c.T);
    EXPECT_NEAR(rhs.real(), 0.0, 1e-15);
    EXPECT_NEAR(rhs.imag(), c.rhs_im, 1e-10 * std::abs(c.rhs_im));
  }
}

TEST(MaassSelberg, QuadratureMatches) {
  for (const MSCase& c : kCases) {
    const MSCheckReport r = maass_selberg_check(c.s, c.T, 12, 64);
    EXPECT_LE(r.abs_gap, 1e-4 * std::max(std::abs(r.lhs), std::abs(r.rhs))) << c.s;
    EXPECT_LE(r.abs_gap, 3.0 * r.quadrature_estimate + 1e-15) << c.s;
    EXPECT_FALSE(r.domain_note.empty());
  }
}

TEST(MaassSelberg, TrivialVanishing) {
  const MSCheckReport half = maass_selberg_check({0.5, 3.0}, 2.0);
  EXPECT_LT(std::abs(half.lhs), 1e-8);
  EXPECT_LT(std::abs(half.rhs), 1e-8);
  const MSCheckReport real = maass_selberg_check(0.7, 1.0);
  EXPECT_LT(std::abs(real.lhs), 1e-8);
  EXPECT_LT(std::abs(real.rhs), 1e-8);
}

TEST(MaassSelberg, RefinementConverges) {
  // Doubling the grid shrinks the change at least fourfold until rounding.
  const ComplexValue s(0.6, 2.0);
  const double l32 = std::abs(maass_selberg_check(s, 1.5, 12, 32).lhs);
  const double l64 = std::abs(maass_selberg_check(s, 1.5, 12, 64).lhs);
  const double l128 = std::abs(maass_selberg_check(s, 1.5, 12, 128).lhs);
  EXPECT_LE(std::abs(l64 - l128), std::max(std::abs(l32 - l64) / 4.0, 1e-14 * l128));
}

TEST(MaassSelberg, RhsVanishesWithConstantTerm) {
  // On the critical line a0(T, s) = a0(T, conj s); choose T with a0(T, s) = 0.
  const double t = 4.0;
  const ComplexValue s(0.5, t);
  const ComplexValue z = completed_zeta(ComplexValue(1.0, 2.0 * t));
  // a0(T, 1/2 + it) = 2 sqrt(T) Re(z T^{it}) vanishes when arg z + t log T = pi/2.
  const double log_t = (0.5 * kPi - std::arg(z)) / t;
  const double T = std::exp(log_t + kPi / t * std::ceil(-log_t * t / kPi));
  ASSERT_GE(T, 1.0);
  EXPECT_LT(std::abs(a0(T, s)), 1e-12);
  EXPECT_LT(std::abs(maass_selberg_rhs(s, T)), 1e-12);
}

TEST(MaassSelberg, Preconditions) {
  EXPECT_THROW(maass_selberg_check({0.6, 2.0}, 0.5), DomainError);
  EXPECT_THROW(maass_selberg_check({0.6, 2.0}, 1.5, 12, 16), DomainError);
  EXPECT_THROW(maass_selberg_check({1.2, 2.0}, 1.5), DomainError);
}
