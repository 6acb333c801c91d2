#include "qjc/grassmann.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qjc;
using C = std::complex<double>;

namespace {

GrassElement random_element(std::mt19937& rng, int g_max, bool homogeneous_parity = false,
                            int parity = 0) {
  std::uniform_int_distribution<int> deg(0, 3);
  std::uniform_int_distribution<int> num(-4, 4);
  GrassElement e(g_max);
  for (int t = 0; t < 4; ++t) {
    int u = deg(rng), v = deg(rng);
    if (homogeneous_parity && (u + v) % 2 != parity) continue;
    // dyadic coefficients keep products exact in double arithmetic
    double c = num(rng) * 0.25;
    if (c != 0.0) e += GrassElement::monomial(u, v, c, g_max);
  }
  return e;
}

}  // namespace

TEST(GrassMul, AnticommutingGenerators) {
  auto z = GrassElement::zeta();
  auto zb = GrassElement::zeta_bar();
  auto zzb = z * zb;
  auto zbz = zb * z;
  EXPECT_EQ(zzb.coeff(1, 1), C(1.0));
  EXPECT_EQ(zbz.coeff(1, 1), C(-1.0));
  EXPECT_TRUE((zzb + zbz).is_zero());
}

TEST(GrassMul, NotNilpotent) {
  auto z = GrassElement::zeta();
  auto z2 = z * z;
  EXPECT_EQ(z2.coeff(2, 0), C(1.0));
  EXPECT_FALSE((z2 * z2).is_zero());
}

TEST(GrassMul, PairSquare) {
  // (zeta zbar)^2 = -zeta^2 zbar^2: one zbar passes one zeta
  auto t = GrassElement::zeta() * GrassElement::zeta_bar();
  auto t2 = t * t;
  EXPECT_EQ(t2.coeff(2, 2), C(-1.0));
}

TEST(GrassMul, TruncationFlag) {
  auto z = GrassElement::zeta(4);
  auto p = z * z * z * z;  // degree 4, at the cutoff
  EXPECT_FALSE(p.truncated());
  auto over = p * z;  // degree 5 dropped
  EXPECT_TRUE(over.is_zero());
  EXPECT_TRUE(over.truncated());
}

TEST(GrassMul, AssociativeAndDistributive) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_element(rng, 8);
    auto b = random_element(rng, 8);
    auto c = random_element(rng, 8);
    auto lhs = (a * b) * c;
    auto rhs = a * (b * c);
    EXPECT_TRUE((lhs - rhs).is_zero()) << "associativity, trial " << trial;
    auto d1 = a * (b + c);
    auto d2 = a * b + a * c;
    EXPECT_TRUE((d1 - d2).is_zero()) << "distributivity, trial " << trial;
  }
}

TEST(GrassParity, Basics) {
  EXPECT_EQ(GrassElement::zeta().parity(), Parity::odd);
  EXPECT_EQ((GrassElement::zeta() * GrassElement::zeta_bar()).parity(), Parity::even);
  auto z3 = GrassElement::zeta() * GrassElement::zeta() * GrassElement::zeta();
  EXPECT_EQ(z3.parity(), Parity::odd);
  auto mixed = GrassElement::zeta() + GrassElement(1.0);
  EXPECT_THROW(mixed.parity(), std::domain_error);
}

TEST(GrassParity, ExchangeLaw) {
  // The pseudo-Grassmann algebra is not supercommutative (non-nilpotent
  // generators): the monomial exchange law is
  //   (u,v) (u',v') = (-1)^{v u' - u v'} (u',v') (u,v).
  // Even x even therefore always commute; even x odd need not.
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> deg(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    int u = deg(rng), v = deg(rng), up = deg(rng), vp = deg(rng);
    auto x = GrassElement::monomial(u, v, 0.5);
    auto y = GrassElement::monomial(up, vp, 0.25);
    double sign = ((v * up - u * vp) % 2) ? -1.0 : 1.0;
    EXPECT_TRUE((x * y - y * x * std::complex<double>(sign)).is_zero())
        << u << "," << v << " vs " << up << "," << vp;
  }
  for (int trial = 0; trial < 100; ++trial) {
    auto e1 = random_element(rng, 8, true, 0);
    auto e2 = random_element(rng, 8, true, 0);
    EXPECT_TRUE((e1 * e2 - e2 * e1).is_zero());
  }
  // witness of non-supercommutativity: [zeta zbar, zeta] = -2 zeta^2 zbar
  auto t = GrassElement::zeta() * GrassElement::zeta_bar();
  auto z = GrassElement::zeta();
  auto comm = t * z - z * t;
  EXPECT_EQ(comm.coeff(2, 1), C(-2.0));
}

TEST(GrassConj, ReversesAndConjugates) {
  auto z = GrassElement::zeta();
  auto zb = GrassElement::zeta_bar();
  EXPECT_EQ(z.conj().coeff(0, 1), C(1.0));
  auto e = GrassElement::monomial(1, 2, C(0.5, -1.0));
  auto ec = e.conj();
  EXPECT_EQ(ec.coeff(2, 1), C(0.5, 1.0));
  // involution
  EXPECT_TRUE((ec.conj() - e).is_zero());
  // conj(ab) = conj(b) conj(a)
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_element(rng, 8);
    auto b = random_element(rng, 8);
    EXPECT_TRUE(((a * b).conj() - b.conj() * a.conj()).is_zero());
  }
  (void)zb;
}

TEST(GrassReduce, ScalarShadow) {
  auto t = GrassElement::zeta() * GrassElement::zeta_bar();
  EXPECT_NEAR(std::abs(g_reduce(t, 0.2) - C(0.04)), 0.0, 1e-15);
  auto tb = GrassElement::zeta_bar() * GrassElement::zeta();  // stored as -zeta zbar
  EXPECT_NEAR(std::abs(g_reduce(tb, 0.2) - C(-0.04)), 0.0, 1e-15);
  EXPECT_EQ(g_reduce(GrassElement(1.0), 0.9), C(1.0));
}

TEST(GrassInvSqrt, PureScalar) {
  auto y = g_inv_sqrt_even(GrassElement(4.0));
  EXPECT_EQ(y.coeff(0, 0), C(0.5));
}

TEST(GrassInvSqrt, BinomialSeries) {
  // x = 1 + tau with tau = zeta zbar: y = 1 - tau/2 + (3/8) tau^2 - ...
  const int g = 8;
  auto tau = GrassElement::zeta(g) * GrassElement::zeta_bar(g);
  auto x = GrassElement(1.0, g) + tau;
  auto y = g_inv_sqrt_even(x, g);
  EXPECT_NEAR(std::abs(y.coeff(0, 0) - C(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(y.coeff(1, 1) - C(-0.5)), 0.0, 1e-14);
  // tau^2 = -zeta^2 zbar^2, so the (2,2) coefficient is -3/8
  EXPECT_NEAR(std::abs(y.coeff(2, 2) - C(-0.375)), 0.0, 1e-14);
  // oracle: y*y*x = 1 up to the grading cutoff
  auto check = y * y * x;
  EXPECT_NEAR(std::abs(check.coeff(0, 0) - C(1.0)), 0.0, 1e-13);
  auto defect = check - GrassElement(1.0, g);
  EXPECT_NEAR(defect.max_abs_coeff(), 0.0, 1e-12);
}

TEST(GrassInvSqrt, ScaledSeries) {
  const int g = 8;
  auto tau = GrassElement::zeta(g) * GrassElement::zeta_bar(g);
  auto x = (GrassElement(1.0, g) + tau) * C(2.5);
  auto y = g_inv_sqrt_even(x, g);
  auto check = y * y * x;
  EXPECT_NEAR((check - GrassElement(1.0, g)).max_abs_coeff(), 0.0, 1e-12);
}

TEST(GrassInvSqrt, Errors) {
  EXPECT_THROW(g_inv_sqrt_even(GrassElement(-1.0)), std::domain_error);
  EXPECT_THROW(g_inv_sqrt_even(GrassElement::zeta()), std::domain_error);
}

TEST(SignLemma, FloorHalfCongruence) {
  for (int m = 0; m <= 20; ++m)
    EXPECT_EQ((m / 2) % 2, (m * (m - 1) / 2) % 2) << "m=" << m;
}
