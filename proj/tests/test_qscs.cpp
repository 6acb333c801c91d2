#include "qjc/qscs.hpp"

#include <gtest/gtest.h>

#include <complex>

using namespace qjc;
using C = std::complex<double>;

TEST(ScsBuild, VacuumLabel) {
  SuperFockSpace sp(4, 3, 0.5);
  SCSLabel l{0.0, PsiMode::scalar, 0.0, 0.0};
  auto st = scs_build(l, sp, true);
  EXPECT_EQ(st.scalar_coeffs[sp.index(0, 0)], C(1.0));
  for (int i = 1; i < sp.dim(); ++i) EXPECT_EQ(st.scalar_coeffs[i], C(0.0));
}

TEST(ScsBuild, SignOfC21) {
  // c_{2,1} = -z^2 psi / sqrt([2]_B!) for any q (sign from floor(1/2)+1)
  SuperFockSpace sp(4, 3, 0.7);
  SCSLabel l{C(0.4, 0.1), PsiMode::scalar, 0.0, C(0.06, 0.02)};
  auto st = scs_build(l, sp, false);
  C z = l.z, psi = l.psi;
  C expected = -z * z * psi / std::sqrt(q_factorial(Mode::boson, 2, 0.7));
  EXPECT_NEAR(std::abs(st.scalar_coeffs[sp.index(2, 1)] - expected), 0.0, 1e-15);
}

TEST(ScsBuild, FormalCoefficientsMatchMechanicalExpansion) {
  // oracle: apply exp_Bq(z adag) exp_Fq(-psi Fdag) to the vacuum literally,
  // with Grassmann coefficients and Koszul signs, and compare
  const int g_max = 8;
  SuperFockSpace sp(5, 5, 0.5);
  SCSLabel l{C(0.3, 0.2), PsiMode::formal, 0.9, 0.0};
  auto st = scs_build(l, sp, false, g_max);

  auto fd = operator_matrix(Gen::Fdag, sp);
  auto ad = operator_matrix(Gen::adag, sp);
  C phase = std::exp(C(0.0, l.theta));
  GrassElement psi = GrassElement::monomial(1, 0, phase, g_max);

  // vacuum with Grassmann coefficients
  std::vector<GrassElement> v(sp.dim(), GrassElement::empty(g_max));
  v[sp.index(0, 0)] = GrassElement(1.0, g_max);

  // fermionic series: sum_m (-psi Fdag)^m / [m]_F!
  std::vector<GrassElement> acc = v;
  std::vector<GrassElement> term = v;
  for (int m = 1; m < sp.mf; ++m) {
    // one application of (-psi Fdag) with the Koszul sign: Fdag is odd
    std::vector<GrassElement> next(sp.dim(), GrassElement::empty(g_max));
    for (int i = 0; i < sp.dim(); ++i) {
      GrassElement k = term[i].even_part() - term[i].odd_part();
      for (int j = 0; j < sp.dim(); ++j) {
        C mij = fd.get(j, i);
        if (mij != C(0.0)) next[j] += (-psi) * (k * mij);
      }
    }
    term = next;
    for (int i = 0; i < sp.dim(); ++i)
      acc[i] += term[i] * C(1.0 / q_factorial(Mode::fermion, m, sp.q));
  }
  // bosonic series on top (adag is even: plain application)
  std::vector<GrassElement> full = acc;
  std::vector<GrassElement> bterm = acc;
  for (int n = 1; n < sp.nb; ++n) {
    std::vector<GrassElement> next(sp.dim(), GrassElement::empty(g_max));
    for (int i = 0; i < sp.dim(); ++i)
      for (int j = 0; j < sp.dim(); ++j) {
        C mij = ad.get(j, i);
        if (mij != C(0.0)) next[j] += bterm[i] * (mij * l.z);
      }
    bterm = next;
    for (int i = 0; i < sp.dim(); ++i)
      full[i] += bterm[i] * C(1.0 / q_factorial(Mode::boson, n, sp.q));
  }

  for (int n = 0; n < sp.nb; ++n)
    for (int m = 0; m < sp.mf; ++m) {
      auto diff = full[sp.index(n, m)] - st.formal_coeffs[sp.index(n, m)];
      EXPECT_NEAR(diff.max_abs_coeff(), 0.0, 1e-13) << "n=" << n << " m=" << m;
    }
}

TEST(ScsNormalization, PsiZero) {
  SCSLabel l{C(0.3, 0.0), PsiMode::scalar, 0.0, 0.0};
  double n = scs_normalization(l, 0.5);
  EXPECT_NEAR(n, 1.0 / std::sqrt(detail::exp_bq_series(0.09, 0.5)), 1e-14);
  SCSLabel vac{0.0, PsiMode::scalar, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(scs_normalization(vac, 0.5), 1.0);
}

TEST(ScsNormalization, FrozenOracle) {
  // N(z=0.3, psi=0.1, q=0.5) from exact rational series
  SCSLabel l{C(0.3, 0.0), PsiMode::scalar, 0.0, C(0.1, 0.0)};
  EXPECT_NEAR(scs_normalization(l, 0.5), 0.95153956895900726, 1e-13);
}

TEST(ScsNormalization, FormalInverseSquare) {
  // N_formal^2 * exp_Bq(|z|^2) exp_Fq(psibar psi) = 1 up to the grading cutoff
  const int g = 8;
  SCSLabel l{C(0.4, 0.0), PsiMode::formal, 0.3, 0.0};
  auto n = scs_normalization_formal(l, 0.5, g);
  double eb = detail::exp_bq_series(0.16, 0.5);
  GrassElement arg = GrassElement::zeta_bar(g) * GrassElement::zeta(g);
  auto ef = detail::exp_fq_grassmann(arg, 0.5, g);
  auto prod = n * n * ef * C(eb);
  EXPECT_NEAR((prod - GrassElement(1.0, g)).max_abs_coeff(), 0.0, 1e-12);
}

TEST(ScsOverlap, SelfIsOne) {
  SuperFockSpace sp(40, 6, 0.5);
  SCSLabel l{std::polar(0.6, 0.4), PsiMode::scalar, 0.0, C(0.08, 0.03)};
  auto ov = scs_overlap(l, l, sp);
  EXPECT_NEAR(std::abs(ov.direct - C(1.0)), 0.0, 1e-10);
}

TEST(ScsOverlap, FrozenBosonicOracle) {
  SuperFockSpace sp(40, 6, 0.5);
  SCSLabel l1{C(0.3, 0.0), PsiMode::scalar, 0.0, 0.0};
  SCSLabel l2{C(0.5, 0.0), PsiMode::scalar, 0.0, 0.0};
  auto ov = scs_overlap(l1, l2, sp);
  EXPECT_NEAR(ov.closed.real(), 0.98140822970854369, 1e-13);
  EXPECT_LT(ov.difference, 1e-8);
}

TEST(ScsOverlap, VacuumProjection) {
  SuperFockSpace sp(30, 4, 0.5);
  SCSLabel l1{C(0.4, 0.3), PsiMode::scalar, 0.0, C(0.05, 0.0)};
  SCSLabel vac{0.0, PsiMode::scalar, 0.0, 0.0};
  auto ov = scs_overlap(l1, vac, sp);
  EXPECT_NEAR(std::abs(ov.direct - C(scs_normalization(l1, 0.5))), 0.0, 1e-12);
}

TEST(ScsOverlap, SweepAgreementAndHermiticity) {
  for (double q : {0.3, 0.5, 0.9}) {
    SuperFockSpace sp(40, 6, q);
    for (double r1 : {0.2, 1.0})
      for (double r2 : {0.5, 0.9}) {
        SCSLabel l1{std::polar(r1, 0.8), PsiMode::scalar, 0.0, C(0.1, 0.0)};
        SCSLabel l2{std::polar(r2, 2.3), PsiMode::scalar, 0.0, C(0.0, 0.07)};
        auto ov = scs_overlap(l1, l2, sp);
        EXPECT_LT(ov.difference, 1e-8) << "q=" << q;
        auto flipped = scs_overlap(l2, l1, sp);
        EXPECT_NEAR(std::abs(ov.direct - std::conj(flipped.direct)), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(ov.closed - std::conj(flipped.closed)), 0.0, 1e-12);
      }
  }
}

TEST(ScsOverlap, FormalModeReportsDifference) {
  // direct vs closed agree at low Grassmann degree; the pseudo-Grassmann
  // defect appears from degree 4 on and is reported, not hidden
  SuperFockSpace sp(20, 6, 0.5);
  SCSLabel l1{C(0.3, 0.0), PsiMode::formal, 0.4, 0.0};
  SCSLabel l2{C(0.2, 0.1), PsiMode::formal, 1.1, 0.0};
  auto ov = scs_overlap_formal(l1, l2, sp);
  auto low = (ov.direct - ov.closed).truncate_degree(2);
  EXPECT_NEAR(low.max_abs_coeff(), 0.0, 1e-10);
}

TEST(EigenResidual, VacuumAndInterior) {
  SuperFockSpace sp(40, 6, 0.5);
  SCSLabel vac{0.0, PsiMode::scalar, 0.0, 0.0};
  EXPECT_EQ(eigen_residual(scs_build(vac, sp, true), Gen::a), 0.0);
  EXPECT_EQ(eigen_residual(scs_build(vac, sp, true), Gen::F), 0.0);

  SCSLabel l{C(0.5, 0.0), PsiMode::scalar, 0.0, C(0.05, 0.0)};
  auto st = scs_build(l, sp, true);
  EXPECT_LE(eigen_residual(st, Gen::a), 1e-10);
}

TEST(EigenResidual, BoundaryScalesWithTopCoefficient) {
  // halving |z| shrinks the dropped-top-level residual by at least 2^{nb-1}
  const int nb = 8;
  SuperFockSpace sp(nb, 3, 0.5);
  SCSLabel l1{C(0.8, 0.0), PsiMode::scalar, 0.0, 0.0};
  SCSLabel l2{C(0.4, 0.0), PsiMode::scalar, 0.0, 0.0};
  double r1 = eigen_residual(scs_build(l1, sp, false), Gen::a, true);
  double r2 = eigen_residual(scs_build(l2, sp, false), Gen::a, true);
  EXPECT_GT(r1, 0.0);
  EXPECT_GE(r1 / r2, std::pow(2.0, nb - 1));
}

TEST(EigenResidualFormal, KoszulSelectsConvention) {
  SuperFockSpace sp(12, 6, 0.5);
  SCSLabel l{C(0.5, 0.2), PsiMode::formal, 0.7, 0.0};
  EXPECT_EQ(eigen_residual_formal(l, sp, Gen::F, SignConvention::koszul), 0.0);
  EXPECT_GT(eigen_residual_formal(l, sp, Gen::F, SignConvention::plain), 0.5);
  EXPECT_EQ(eigen_residual_formal(l, sp, Gen::a, SignConvention::koszul), 0.0);
  // non-dyadic q still exact through the rational ratios
  SuperFockSpace sp3(10, 5, 0.3);
  EXPECT_EQ(eigen_residual_formal(l, sp3, Gen::F, SignConvention::koszul), 0.0);
}

TEST(Completeness, VacuumOnly) {
  SuperFockSpace sp(1, 1, 0.5);
  auto rep = completeness_check(0.5, sp, default_moment_quadrature(Mode::boson));
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_NEAR(rep.rows[0].diagonal, 1.0, 1e-9);
}

TEST(Completeness, DefaultQuadratureMeetsTolerance) {
  SuperFockSpace sp(6, 4, 0.5);
  auto rep = completeness_check(0.5, sp, default_moment_quadrature(Mode::boson));
  EXPECT_LE(rep.max_deviation, 1e-6);
  EXPECT_TRUE(rep.offdiagonals_exact_zero);
  EXPECT_EQ(angular_delta(2, 3), 0.0);
  EXPECT_EQ(angular_delta(3, 3), 1.0);
}

TEST(Reproduce, BasisAndCoherentTargets) {
  SuperFockSpace sp(6, 4, 0.5);
  auto quad = default_moment_quadrature(Mode::boson);
  EXPECT_LE(reproduce(basis_state(sp, 0, 0), 0.5, sp, quad), 1e-6);
  EXPECT_LE(reproduce(basis_state(sp, 2, 1), 0.5, sp, quad), 1e-6);
  SCSLabel l{C(0.4, 0.2), PsiMode::scalar, 0.0, C(0.05, 0.0)};
  EXPECT_LE(reproduce(scs_build(l, sp, true), 0.5, sp, quad), 1e-6);
}

TEST(SignLemma, BruteForceMatchesClosedForm) {
  for (int m = 0; m <= 12; ++m) EXPECT_EQ(scs_sign(m), scs_sign_brute(m)) << "m=" << m;
}
