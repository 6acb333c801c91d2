#include "qjc/opcalc.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qjc;

TEST(Parse, Basics) {
  auto e = parse("a adag");
  ASSERT_EQ(e.node, OpExpr::Node::prod);
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].gen.kind, LetterKind::A);
  EXPECT_EQ(e.children[1].gen.kind, LetterKind::Adag);
}

TEST(Parse, FqExpandsPerTransformation) {
  auto e = parse("fq");
  ASSERT_EQ(e.node, OpExpr::Node::prod);
  EXPECT_EQ(e.children[0].gen.kind, LetterKind::QM);
  EXPECT_EQ(e.children[0].gen.q4, -1);
  EXPECT_EQ(e.children[1].gen.kind, LetterKind::F);
  auto d = parse("fqdag");
  EXPECT_EQ(d.children[0].gen.kind, LetterKind::Fdag);
  EXPECT_EQ(d.children[1].gen.kind, LetterKind::QM);
}

TEST(Parse, SyntaxErrorsCarryColumn) {
  try {
    parse("a [unclosed");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column, 3);
  }
  EXPECT_THROW(parse("qN(1/3)"), ParseError);  // not a quarter multiple
  EXPECT_THROW(parse("blah"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(Parse, ScalarsPowersSums) {
  auto e = parse("3/2*s^-8 adag^2 + psi psibar");
  ASSERT_EQ(e.node, OpExpr::Node::sum);
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].children[0].scalar, LaurentPoly::term(Rational(3, 2), -8));
}

TEST(Parse, RenderRoundTrip) {
  for (const char* text :
       {"a adag", "fq fqdag", "qN(-1/4) a^3 Fdag", "2*s^4 psi psibar + -1/2 N M",
        "a adag adag", "qM(1/2) F psibar^2"}) {
    auto e = parse(text);
    auto again = parse(render(e));
    EXPECT_TRUE(e == again) << text << "  ->  " << render(e);
  }
}

TEST(NormalOrder, DefiningRelations) {
  // a adag -> q adag a + qN(-1)
  auto nf = normal_order(parse("a adag"));
  NFMono lead;
  lead.adag = 1;
  lead.a = 1;
  NFMono corr;
  corr.qn4 = -4;
  EXPECT_TRUE(nf.coefficient(lead) == LaurentPoly::q_power(1));
  EXPECT_TRUE(nf.coefficient(corr) == LaurentPoly(1));
  EXPECT_EQ(nf.terms().size(), 2u);

  // F Fdag -> 1 - q Fdag F
  auto nff = normal_order(parse("F Fdag"));
  NFMono leadf;
  leadf.fdag = 1;
  leadf.f = 1;
  EXPECT_TRUE(nff.coefficient(leadf) == LaurentPoly::term(-1, 4));
  EXPECT_TRUE(nff.coefficient(NFMono{}) == LaurentPoly(1));
}

TEST(NormalOrder, PaperExamples) {
  // a adag adag -> q^2 adag^2 a + [2]_B adag qN(-1)
  auto nf = normal_order(parse("a adag adag"));
  NFMono lead;
  lead.adag = 2;
  lead.a = 1;
  NFMono corr;
  corr.adag = 1;
  corr.qn4 = -4;
  EXPECT_TRUE(nf.coefficient(lead) == LaurentPoly::q_power(2));
  EXPECT_TRUE(nf.coefficient(corr) == q_int_laurent(Mode::boson, 2));

  // F Fdag Fdag -> (-q)^2 Fdag^2 F + [2]_F Fdag
  auto nff = normal_order(parse("F Fdag Fdag"));
  NFMono leadf;
  leadf.fdag = 2;
  leadf.f = 1;
  NFMono corrf;
  corrf.fdag = 1;
  EXPECT_TRUE(nff.coefficient(leadf) == LaurentPoly::q_power(2));
  EXPECT_TRUE(nff.coefficient(corrf) == q_int_laurent(Mode::fermion, 2));
}

TEST(NormalOrder, PsiSigns) {
  // psibar psi = -psi psibar
  auto nf = normal_order(parse("psibar psi"));
  NFMono m;
  m.psi = 1;
  m.psibar = 1;
  EXPECT_TRUE(nf.coefficient(m) == LaurentPoly(-1));
  // psi anticommutes with F, commutes with a and with qM
  auto nf2 = normal_order(parse("psi F"));
  NFMono m2;
  m2.f = 1;
  m2.psi = 1;
  EXPECT_TRUE(nf2.coefficient(m2) == LaurentPoly(-1));
  auto nf3 = normal_order(parse("psi a qM(1/4)"));
  NFMono m3;
  m3.a = 1;
  m3.qm4 = 1;
  m3.psi = 1;
  EXPECT_TRUE(nf3.coefficient(m3) == LaurentPoly(1));
}

TEST(NormalOrder, DiagonalExchange) {
  // qN(x) a = q^{-x} a qN(x); with x = 1/2: coefficient s^{-2}
  auto nf = normal_order(parse("qN(1/2) a"));
  NFMono m;
  m.a = 1;
  m.qn4 = 2;
  EXPECT_TRUE(nf.coefficient(m) == LaurentPoly::s_power(-2));
  // N adag = adag N + adag
  auto nf2 = normal_order(parse("N adag"));
  NFMono ma;
  ma.adag = 1;
  ma.npow = 1;
  NFMono mb;
  mb.adag = 1;
  EXPECT_TRUE(nf2.coefficient(ma) == LaurentPoly(1));
  EXPECT_TRUE(nf2.coefficient(mb) == LaurentPoly(1));
}

TEST(DeriveIteration, MatchesClosedFormsExactly) {
  for (int n = 1; n <= 12; ++n) {
    auto rb = derive_iteration(Mode::boson, n);
    EXPECT_TRUE(rb.matches_closed_form);
    EXPECT_TRUE(rb.coefficient == q_int_laurent(Mode::boson, n));
    auto rf = derive_iteration(Mode::fermion, n);
    EXPECT_TRUE(rf.matches_closed_form);
    EXPECT_TRUE(rf.coefficient == q_int_laurent(Mode::fermion, n));
  }
}

TEST(DeriveIteration, KnownCoefficients) {
  // boson n=3: s^8 + 1 + s^-8, i.e. q^2 + 1 + q^-2
  auto r = derive_iteration(Mode::boson, 3);
  LaurentPoly expect =
      LaurentPoly::q_power(2) + LaurentPoly(1) + LaurentPoly::q_power(-2);
  EXPECT_TRUE(r.coefficient == expect);
  // fermion n=3: 1 - q + q^2
  auto rf = derive_iteration(Mode::fermion, 3);
  LaurentPoly expectf =
      LaurentPoly(1) - LaurentPoly::q_power(1) + LaurentPoly::q_power(2);
  EXPECT_TRUE(rf.coefficient == expectf);
}

TEST(CheckTransformation, DressedRelationCollapses) {
  auto rep = check_transformation();
  EXPECT_TRUE(rep.anticommutator_zero);
  EXPECT_TRUE(rep.mutated_nonzero);
  EXPECT_TRUE(rep.m_commutator_zero);
}

namespace {

OpExpr random_word(std::mt19937& rng, int max_len) {
  static const LetterKind alphabet[] = {LetterKind::A,    LetterKind::Adag, LetterKind::F,
                                        LetterKind::Fdag, LetterKind::Nop,  LetterKind::Mop,
                                        LetterKind::QN,   LetterKind::QM,   LetterKind::Psi,
                                        LetterKind::Psibar};
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<int> quarter(-4, 4);
  std::vector<OpExpr> w;
  int L = len(rng);
  for (int i = 0; i < L; ++i) {
    LetterKind k = alphabet[pick(rng)];
    int q4 = (k == LetterKind::QN || k == LetterKind::QM) ? quarter(rng) : 0;
    w.push_back(OpExpr::make_gen(k, q4));
  }
  return OpExpr::make_prod(std::move(w));
}

}  // namespace

TEST(NormalOrder, ConfluenceAcrossStrategies) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    auto w = random_word(rng, 8);
    auto nf1 = detail::normal_order_impl(w, detail::Strategy::first_pair);
    auto nf2 = detail::normal_order_impl(w, detail::Strategy::last_pair);
    EXPECT_TRUE(nf1 == nf2) << "trial " << trial << ": " << render(w);
  }
}

TEST(NormalOrder, EvaluationHomomorphism) {
  // laurent-evaluating the normal form and mapping to matrices equals
  // mapping the word directly, on interior rows
  std::mt19937 rng(99);
  SuperFockSpace sp(9, 9, 0.5);
  auto word_matrix = [&](const OpExpr& e) {
    OperatorMatrix acc(sp.dim(), sp.dim());
    for (int i = 0; i < sp.dim(); ++i) acc.set(i, i, 1.0);
    for (const auto& g : e.children) {
      Gen gg;
      double x = 0.0;
      switch (g.gen.kind) {
        case LetterKind::A: gg = Gen::a; break;
        case LetterKind::Adag: gg = Gen::adag; break;
        case LetterKind::F: gg = Gen::F; break;
        case LetterKind::Fdag: gg = Gen::Fdag; break;
        case LetterKind::Nop: gg = Gen::N; break;
        case LetterKind::Mop: gg = Gen::M; break;
        case LetterKind::QN: gg = Gen::qpowN; x = g.gen.q4 / 4.0; break;
        default: gg = Gen::qpowM; x = g.gen.q4 / 4.0; break;
      }
      acc = acc * operator_matrix(gg, sp, x);
    }
    return acc;
  };
  static const LetterKind alphabet[] = {LetterKind::A,   LetterKind::Adag, LetterKind::F,
                                        LetterKind::Fdag, LetterKind::Nop, LetterKind::Mop,
                                        LetterKind::QN,  LetterKind::QM};
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<int> pick(0, 7);
  std::uniform_int_distribution<int> quarter(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<OpExpr> w;
    int L = len(rng);
    for (int i = 0; i < L; ++i) {
      LetterKind k = alphabet[pick(rng)];
      int q4 = (k == LetterKind::QN || k == LetterKind::QM) ? quarter(rng) : 0;
      w.push_back(OpExpr::make_gen(k, q4));
    }
    auto e = OpExpr::make_prod(w);
    auto direct = word_matrix(e);
    auto via_nf = normal_order(e).to_matrix(sp);
    EXPECT_LE(max_abs_interior(direct - via_nf, sp), 1e-10) << "trial " << trial;
  }
}

TEST(NormalForm, RenderedForms) {
  auto nf = normal_order(parse("a adag adag"));
  EXPECT_EQ(nf.to_string(), "q^2*adag^2 a + (q + q^-1)*adag qN(-1)");
}
