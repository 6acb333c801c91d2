#ifndef QJC_SUITES_HPP
#define QJC_SUITES_HPP

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qjc/jchamiltonian.hpp"
#include "qjc/opcalc.hpp"
#include "qjc/qcalculus.hpp"
#include "qjc/qnumbers.hpp"
#include "qjc/qscs.hpp"
#include "qjc/report.hpp"
#include "qjc/superfock.hpp"

namespace qjc {

struct RunConfig {
  std::string command;
  std::vector<double> qs{0.5};
  int nb = 40;
  int mf = 6;
  bool nb_set = false;  // whether the user supplied cutoffs explicitly
  bool mf_set = false;
  double xi = 0.0;
  int lattice_depth = 256;
  std::string format = "csv";  // csv | json | both
  std::string out_dir = ".";
  double tol_override = 0.0;  // 0 = per-check defaults
  bool strict = false;

  // point-query / rewrite extras
  std::string kind = "boson";
  int n = -1;
  std::string expr;
  std::string q_render = "symbolic";  // symbolic | numeric
  double omega1 = 0.5, omega2 = 0.5;
  double g = 0.1;

  double tol(double suite_default) const {
    double t = tol_override > 0.0 ? tol_override : suite_default;
    return strict ? t / 100.0 : t;
  }
  QuadratureConfig quadrature(Mode base) const {
    QuadratureConfig q = default_moment_quadrature(base);
    q.lattice_depth = lattice_depth;
    if (xi > 0.0) q.xi = xi;
    return q;
  }
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
  Report report;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      failures.push_back(what);
    }
  }
};

namespace detail {

inline std::string fmt_q(double q) { return format_double(q); }

inline void echo_common(Report& rep, const RunConfig& cfg) {
  std::ostringstream qs;
  for (std::size_t i = 0; i < cfg.qs.size(); ++i) qs << (i ? " " : "") << format_double(cfg.qs[i]);
  rep.add_config("command", cfg.command);
  rep.add_config("q", qs.str());
  rep.add_config("nb", std::to_string(cfg.nb));
  rep.add_config("mf", std::to_string(cfg.mf));
  rep.add_config("lattice_depth", std::to_string(cfg.lattice_depth));
  rep.add_config("xi", format_double(cfg.xi));
  rep.add_config("strict", cfg.strict ? "true" : "false");
  rep.add_config("format", cfg.format);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// q-number suite: sum/ratio agreement, exact recurrences, q -> 1 limits

inline SuiteResult run_qnum_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "qnum";
  res.report.name = "qnum";
  detail::echo_common(res.report, cfg);
  res.report.columns = {"q", "n", "boson_sum", "boson_ratio", "rel_diff", "fermion", "check"};
  const double tol = cfg.tol(1e-12);

  for (double q : cfg.qs) {
    for (int n = 0; n <= 20; ++n) {
      double sum_form = q_int(Mode::boson, n, q);
      double ratio_form =
          (q == 1.0) ? double(n) : (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
      double rel = n == 0 ? std::abs(sum_form - ratio_form)
                          : std::abs(sum_form - ratio_form) / std::abs(ratio_form);
      res.report.add_row({detail::fmt_q(q), (long long)n, sum_form, ratio_form, rel,
                          q_int(Mode::fermion, n, q), std::string("forms")});
      res.check(rel <= tol, "bosonic q-number sum/ratio agreement at q=" + detail::fmt_q(q) +
                                " n=" + std::to_string(n));
    }
  }
  // exact recurrences in Laurent arithmetic: [n+1]_B = q [n]_B + q^{-n},
  // [n+1]_F = 1 - q [n]_F
  for (int n = 0; n <= 20; ++n) {
    LaurentPoly lhs_b = q_int_laurent(Mode::boson, n + 1);
    LaurentPoly rhs_b =
        LaurentPoly::q_power(1) * q_int_laurent(Mode::boson, n) + LaurentPoly::q_power(-n);
    LaurentPoly lhs_f = q_int_laurent(Mode::fermion, n + 1);
    LaurentPoly rhs_f =
        LaurentPoly(1) - LaurentPoly::q_power(1) * q_int_laurent(Mode::fermion, n);
    bool ok = lhs_b == rhs_b && lhs_f == rhs_f;
    res.report.add_row({std::string("s-ring"), (long long)n, 0.0, 0.0, ok ? 0.0 : 1.0, 0.0,
                        std::string("recurrence")});
    res.check(ok, "q-number recurrence, exact Laurent arithmetic, n=" + std::to_string(n));
  }
  // q -> 1 limits: [n]_B -> n with monotone error, fermionic parity pattern
  for (int n = 1; n <= 20; ++n) {
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (int k = 2; k <= 6; ++k) {
      double q = 1.0 - std::pow(10.0, -k);
      double err = std::abs(q_int(Mode::boson, n, q) - n);
      if (err > prev * (1.0 + 1e-9) + 1e-15) monotone = false;
      prev = err;
    }
    res.check(monotone && prev < 1e-9 * n + 1e-12,
              "q->1 limit of [n]_B, n=" + std::to_string(n));
    double f1 = q_int(Mode::fermion, n, 1.0);
    res.check(std::abs(f1 - ((n % 2) ? 1.0 : 0.0)) == 0.0,
              "fermionic parity pattern at q=1, n=" + std::to_string(n));
  }
  return res;
}

/// Point query used by the CLI: a single q-number or q-factorial value.
inline double qnum_point(const std::string& kind, int n, double q, bool factorial = false) {
  Mode m = kind == "fermion" ? Mode::fermion : Mode::boson;
  return factorial ? q_factorial(m, n, q) : q_int(m, n, q);
}

// ---------------------------------------------------------------------------
// q-Euler suite

inline SuiteResult run_euler_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "euler";
  res.report.name = "euler";
  detail::echo_common(res.report, cfg);
  res.report.columns = {"check", "kind", "q", "n", "depth", "lhs", "rhs", "rel_err"};
  const double tol = cfg.tol(1e-6);

  for (double q : cfg.qs)
    for (Mode kind : {Mode::boson, Mode::fermion}) {
      std::string kn = kind == Mode::boson ? "boson" : "fermion";
      for (int n = 0; n <= 8; ++n) {
        auto e = euler_check(kind, n, q, cfg.quadrature(kind));
        res.report.add_row({std::string("euler"), kn, detail::fmt_q(q), (long long)n,
                            (long long)cfg.lattice_depth, e.lhs, e.rhs, e.rel_err});
        res.check(e.rel_err <= tol, "q-Euler (" + kn + ") rel_err at q=" + detail::fmt_q(q) +
                                        " n=" + std::to_string(n));
      }
    }

  // lattice-depth monotonicity at the slowest-converging tested q
  const double qmono = 0.9;
  for (Mode kind : {Mode::boson, Mode::fermion}) {
    std::string kn = kind == Mode::boson ? "boson" : "fermion";
    double prev = std::numeric_limits<double>::infinity();
    for (int depth : {32, 64, 128, 256}) {
      QuadratureConfig quad = default_moment_quadrature(kind);
      quad.lattice_depth = depth;
      auto e = euler_check(kind, 2, qmono, quad);
      res.report.add_row({std::string("monotone"), kn, detail::fmt_q(qmono), 2LL,
                          (long long)depth, e.lhs, e.rhs, e.rel_err});
      res.check(e.rel_err < prev || e.rel_err < 1e-12,
                "q-Euler depth monotonicity (" + kn + ") at depth " + std::to_string(depth));
      prev = e.rel_err;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Fock representation suite

inline SuiteResult run_fock_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "fock-verify";
  res.report.name = "fock-verify";
  detail::echo_common(res.report, cfg);
  res.report.columns = {"q", "relation", "residual"};
  const double tol = cfg.tol(1e-12);
  const int nb = cfg.nb_set ? cfg.nb : 8;
  const int mf = cfg.mf_set ? cfg.mf : 6;

  for (double q : cfg.qs) {
    SuperFockSpace sp(nb, mf, q);
    auto rep = verify_algebra(sp);
    res.report.add_row({detail::fmt_q(q), std::string("boson_ccr"), rep.boson_ccr});
    res.report.add_row({detail::fmt_q(q), std::string("fermion_ccr"), rep.fermion_ccr});
    res.report.add_row({detail::fmt_q(q), std::string("number_comms"), rep.number_comms});
    res.report.add_row({detail::fmt_q(q), std::string("cross_comms"), rep.cross_comms});
    res.report.add_row({detail::fmt_q(q), std::string("boundary_boson"), rep.boundary_boson});
    res.check(rep.boson_ccr <= tol, "deformed boson relation a adag - q adag a = q^-N, interior residual at q=" + detail::fmt_q(q));
    res.check(rep.fermion_ccr <= tol, "deformed fermion relation F Fdag + q Fdag F = 1, interior residual at q=" + detail::fmt_q(q));
    res.check(rep.number_comms <= tol, "number-operator commutators [N,a], [M,F], interior residual at q=" + detail::fmt_q(q));
    res.check(rep.cross_comms == 0.0, "boson-fermion cross commutators at q=" + detail::fmt_q(q));

    // Gram matrix of the basis states is exactly the identity
    bool gram_ok = true;
    for (int i = 0; i < sp.dim() && gram_ok; ++i) {
      auto vi = sp.state_vector(sp.boson_level(i), sp.fermion_level(i));
      for (int j = 0; j < sp.dim(); ++j) {
        std::complex<double> dot = 0.0;
        auto vj = sp.state_vector(sp.boson_level(j), sp.fermion_level(j));
        for (int k = 0; k < sp.dim(); ++k) dot += std::conj(vi[k]) * vj[k];
        if (dot != std::complex<double>(i == j ? 1.0 : 0.0)) {
          gram_ok = false;
          break;
        }
      }
    }
    res.report.add_row({detail::fmt_q(q), std::string("gram_identity"), gram_ok ? 0.0 : 1.0});
    res.check(gram_ok, "basis orthogonality: Gram matrix exact identity at q=" + detail::fmt_q(q));

    // n = 1 reduces to the defining relations; entries stay O([nb]) at any q
    double it_b1 = iterate_identity(Mode::boson, 1, sp);
    double it_f1 = iterate_identity(Mode::fermion, 1, sp);
    res.report.add_row({detail::fmt_q(q), std::string("iterate_boson_n1"), it_b1});
    res.report.add_row({detail::fmt_q(q), std::string("iterate_fermion_n1"), it_f1});
    res.check(it_b1 <= tol, "iterated boson ladder identity n=1 at q=" + detail::fmt_q(q));
    res.check(it_f1 <= tol, "iterated fermion ladder identity n=1 at q=" + detail::fmt_q(q));
  }
  // deeper iterations at the pinned q = 0.5 examples (entries stay O(1) there;
  // at small q the matrix scale itself exceeds tol/eps)
  {
    SuperFockSpace sp(8, 8, 0.5);
    double rb = iterate_identity(Mode::boson, 3, sp);
    double rf = iterate_identity(Mode::fermion, 4, sp);
    res.report.add_row({std::string("0.5"), std::string("iterate_boson_n3"), rb});
    res.report.add_row({std::string("0.5"), std::string("iterate_fermion_n4"), rf});
    res.check(rb <= tol, "iterated boson ladder identity n=3 at q=0.5");
    res.check(rf <= tol, "iterated fermion ladder identity n=4 at q=0.5");
  }
  return res;
}

// ---------------------------------------------------------------------------
// symbolic derivation suite

inline SuiteResult run_rewrite_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "rewrite";
  res.report.name = "rewrite";
  detail::echo_common(res.report, cfg);
  res.report.columns = {"check", "kind", "n", "coefficient", "ok"};

  for (Mode kind : {Mode::boson, Mode::fermion}) {
    std::string kn = kind == Mode::boson ? "boson" : "fermion";
    for (int n = 1; n <= 12; ++n) {
      bool ok = true;
      std::string coeff;
      try {
        auto it = derive_iteration(kind, n);
        coeff = it.coefficient.to_string();
        ok = it.matches_closed_form;
      } catch (const DerivationError& e) {
        ok = false;
        coeff = e.derived;
      }
      res.report.add_row({std::string("iteration"), kn, (long long)n, coeff, ok ? 1LL : 0LL});
      res.check(ok, "derived ladder-identity coefficient (" + kn + ") n=" + std::to_string(n));
    }
  }
  auto tr = check_transformation();
  res.report.add_row({std::string("transformation"), std::string("-"), 0LL,
                      std::string("fq fqdag + q^1/2 fqdag fq - qM(-1/2)"),
                      tr.anticommutator_zero ? 1LL : 0LL});
  res.report.add_row({std::string("transformation_mutated"), std::string("-"), 0LL, tr.residual,
                      tr.mutated_nonzero ? 1LL : 0LL});
  res.report.add_row({std::string("m_commutator"), std::string("-"), 0LL,
                      std::string("[M, fqdag] - fqdag"), tr.m_commutator_zero ? 1LL : 0LL});
  res.check(tr.anticommutator_zero, "dressed anticommutator fq fqdag + q^1/2 fqdag fq - q^-M/2 collapses to zero");
  res.check(tr.mutated_nonzero, "mutated control (q^{+M/4} dressing) must not vanish");
  res.check(tr.m_commutator_zero, "[M, fqdag] = fqdag");
  return res;
}

// ---------------------------------------------------------------------------
// coherent-state suite

inline SuiteResult run_overlap_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "scs-overlap";
  res.report.name = "scs-overlap";
  detail::echo_common(res.report, cfg);
  res.report.columns = {"check", "q",      "z1_re", "z1_im", "z2_re",
                        "z2_im", "direct", "closed", "diff"};
  const double tol = cfg.tol(1e-8);
  const int nb = cfg.nb;

  const std::vector<std::complex<double>> grid = {
      std::polar(0.1, 0.0), std::polar(0.3, 0.7), std::polar(0.5, 2.1), std::polar(0.7, 4.0),
      std::polar(0.9, 5.5)};

  for (double q : cfg.qs) {
    SuperFockSpace sp(nb, cfg.mf, q);
    for (auto z1 : grid)
      for (auto z2 : grid) {
        SCSLabel l1{z1, PsiMode::scalar, 0.0, 0.0};
        SCSLabel l2{z2, PsiMode::scalar, 0.0, 0.0};
        auto ov = scs_overlap(l1, l2, sp);
        res.report.add_row({std::string("overlap"), detail::fmt_q(q), z1.real(), z1.imag(),
                            z2.real(), z2.imag(), std::abs(ov.direct), std::abs(ov.closed),
                            ov.difference});
        res.check(ov.difference <= tol, "overlap direct-vs-closed-form at q=" +
                                            detail::fmt_q(q));
      }
    // normalized self-overlap within the computed boson tail bound
    SCSLabel l{std::polar(0.9, 1.3), PsiMode::scalar, 0.0, 0.05};
    auto st = scs_build(l, sp, true);
    std::complex<double> self = 0.0;
    for (int i = 0; i < sp.dim(); ++i) self += std::conj(st.scalar_coeffs[i]) * st.scalar_coeffs[i];
    res.report.add_row({std::string("self_overlap"), detail::fmt_q(q), l.z.real(), l.z.imag(),
                        l.z.real(), l.z.imag(), std::abs(self), 1.0, std::abs(self - 1.0)});
    res.check(std::abs(self - 1.0) <= st.boson_tail + 1e-12,
              "normalized self-overlap within tail bound at q=" + detail::fmt_q(q));
  }
  // sign lemma floor(m/2) == m(m-1)/2 (mod 2) and the brute-force reordering
  for (int m = 0; m <= 20; ++m) {
    bool lemma = ((m / 2) % 2) == ((m * (m - 1) / 2) % 2);
    bool brute = scs_sign(m) == scs_sign_brute(m);
    res.report.add_row({std::string("sign_lemma"), std::string("-"), (double)m, 0.0, 0.0, 0.0,
                        scs_sign(m), scs_sign_brute(m), lemma && brute ? 0.0 : 1.0});
    res.check(lemma && brute, "coherent-coefficient sign lemma at m=" + std::to_string(m));
  }
  return res;
}

// ---------------------------------------------------------------------------
// completeness suite

inline SuiteResult run_complete_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "complete";
  res.report.name = "complete";
  detail::echo_common(res.report, cfg);
  res.report.columns = {"q", "n", "m", "diagonal", "deviation"};
  const double tol = cfg.tol(1e-6);
  const int nb = cfg.nb_set ? cfg.nb : 6;
  const int mf = cfg.mf_set ? cfg.mf : 4;

  for (double q : cfg.qs) {
    SuperFockSpace sp(nb, mf, q);
    auto rep = completeness_check(q, sp, cfg.quadrature(Mode::boson));
    for (const auto& row : rep.rows)
      res.report.add_row(
          {detail::fmt_q(q), (long long)row.n, (long long)row.m, row.diagonal, row.deviation});
    res.check(rep.max_deviation <= tol,
              "resolved-identity diagonal at q=" + detail::fmt_q(q));
    res.check(rep.offdiagonals_exact_zero, "angular-delta off-diagonals exact zero");

    double r00 = reproduce(basis_state(sp, 0, 0), q, sp, cfg.quadrature(Mode::boson));
    double r21 = reproduce(basis_state(sp, std::min(2, nb - 1), std::min(1, mf - 1)), q, sp,
                           cfg.quadrature(Mode::boson));
    SCSLabel scs{std::complex<double>(0.4, 0.2), PsiMode::scalar, 0.0, 0.05};
    double rscs = reproduce(scs_build(scs, sp, true), q, sp, cfg.quadrature(Mode::boson));
    res.report.add_row({detail::fmt_q(q), -1LL, -1LL, r00, r00});
    res.report.add_row({detail::fmt_q(q), -2LL, -2LL, r21, r21});
    res.report.add_row({detail::fmt_q(q), -3LL, -3LL, rscs, rscs});
    res.check(r00 <= tol && r21 <= tol, "basis-state reproduction at q=" + detail::fmt_q(q));
    res.check(rscs <= tol, "coherent-state reproduction at q=" + detail::fmt_q(q));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Hamiltonian suite

inline SuiteResult run_jc_trace_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "jc-trace";
  res.report.name = "jc-trace";
  detail::echo_common(res.report, cfg);
  res.report.columns = {"q", "check", "value1", "value2", "err"};
  const int nb = cfg.nb_set ? cfg.nb : 6;
  const int mf = cfg.mf_set ? cfg.mf : 4;

  for (double q : cfg.qs) {
    ModelParams params{cfg.omega1, cfg.omega2, q, CouplingMode::scalar,
                       std::complex<double>(cfg.g, 0.0), 0.0};
    SuperFockSpace sp(nb, mf, q);
    auto tr = trace_compare(params, sp, cfg.quadrature(Mode::boson));
    res.report.add_row(
        {detail::fmt_q(q), std::string("trace"), tr.direct, tr.phase_space, tr.rel_err});
    res.check(tr.rel_err <= cfg.tol(1e-5), "phase-space vs direct trace at q=" + detail::fmt_q(q));

    SuperFockSpace big(cfg.nb, cfg.mf, q);
    SCSLabel label{std::polar(0.5, 0.9), PsiMode::scalar, 0.0, 0.05};
    auto st = scs_build(label, big, true);
    double ra = eigen_residual(st, Gen::a);
    res.report.add_row({detail::fmt_q(q), std::string("a_eigen_residual"), ra, 0.0, ra});
    res.check(ra <= cfg.tol(1e-10), "bosonic annihilation eigenvalue residual at q=" + detail::fmt_q(q));

    double rf_koszul = eigen_residual_formal(label, big, Gen::F, SignConvention::koszul);
    double rf_plain = eigen_residual_formal(label, big, Gen::F, SignConvention::plain);
    res.report.add_row(
        {detail::fmt_q(q), std::string("F_eigen_formal"), rf_koszul, rf_plain, rf_koszul});
    res.check(rf_koszul == 0.0, "fermionic eigenvalue, Koszul convention, q=" +
                                     detail::fmt_q(q));
    res.check(rf_plain > 0.1, "fermionic eigenvalue must fail without Koszul signs");

    // diagonal element: formal-mode bracket vs closed form through Grassmann degree 2
    // (the closed form's full degree); scalar psi = 0 case exact
    SCSLabel lf{std::polar(0.4, 0.9), PsiMode::formal, 0.7, 0.0};
    auto diagf = scs_diagonal_formal(lf, params, big);
    res.report.add_row({detail::fmt_q(q), std::string("diagonal_bracket_formal"),
                        diagf.difference_low_degree, diagf.difference_full,
                        diagf.difference_low_degree});
    res.check(diagf.difference_low_degree <= cfg.tol(1e-8),
              "diagonal closed form vs graded bracket at q=" + detail::fmt_q(q));
    res.report.add_row({detail::fmt_q(q), std::string("diagonal_third_term_order"),
                        diagf.difference_low_degree, diagf.difference_low_alt,
                        diagf.psi_psibar_order_matches ? 0.0 : 1.0});
    res.check(diagf.psi_psibar_order_matches,
              "diagonal third-term ordering (psi psibar) decided by the bracket at q=" +
                  detail::fmt_q(q));
    SCSLabel l0{std::polar(0.4, 0.9), PsiMode::scalar, 0.0, 0.0};
    auto diag0 = scs_diagonal(l0, params, big);
    res.report.add_row({detail::fmt_q(q), std::string("diagonal_bracket_boson"),
                        std::abs(diag0.closed), std::abs(diag0.bracket), diag0.difference});
    res.check(diag0.difference <= cfg.tol(1e-8),
              "diagonal bracket, psi = 0 case, at q=" + detail::fmt_q(q));
    // scalar shadow reported with its exactly predicted defect
    SCSLabel ls{std::polar(0.4, 0.9), PsiMode::scalar, 0.0, std::complex<double>(0.05, 0.03)};
    auto diags = scs_diagonal(ls, params, big);
    double shadow_defect = std::abs(diags.bracket - scs_diagonal_shadow(ls, params));
    res.report.add_row({detail::fmt_q(q), std::string("diagonal_shadow_defect"),
                        diags.difference, shadow_defect, shadow_defect});
    res.check(shadow_defect <= 1e-10,
              "scalar-shadow bracket must equal its predicted value at q=" +
                  detail::fmt_q(q));

    // off-diagonal element: the graded bracket decides the fermionic exponential's order
    SCSLabel lf2{std::polar(0.25, 2.1), PsiMode::formal, 1.9, 0.0};
    auto offf = scs_offdiagonal_formal(lf, lf2, params, big);
    res.report.add_row({detail::fmt_q(q), std::string("offdiagonal_bracket_formal"),
                        offf.difference_low_overlap, offf.difference_low,
                        offf.difference_low_overlap});
    res.check(offf.difference_low_overlap <= cfg.tol(1e-8),
              "off-diagonal closed form (overlap order) vs bracket at q=" +
                  detail::fmt_q(q));
    res.check(offf.overlap_order_matches,
              "off-diagonal argument-order decision at q=" + detail::fmt_q(q));
  }

  // hand-summed oracle: nb=2, mf=2, omega=0.5, q=0.5
  {
    ModelParams params{0.5, 0.5, 0.5, CouplingMode::scalar, 0.0, 0.0};
    SuperFockSpace sp(2, 2, 0.5);
    auto tr = trace_compare(params, sp, cfg.quadrature(Mode::boson));
    double expected = 2.0 + 2.0 * std::sqrt(0.5);
    res.report.add_row({std::string("0.5"), std::string("trace_2x2_hand"), tr.direct, expected,
                        std::abs(tr.direct - expected)});
    res.check(std::abs(tr.direct - expected) <= 1e-12, "hand-summed 2x2 trace");
  }
  return res;
}

// ---------------------------------------------------------------------------
// spectrum suite (incl. the classical q -> 1 limit)

inline SuiteResult run_jc_spectrum_suite(const RunConfig& cfg) {
  SuiteResult res;
  res.name = "jc-spectrum";
  res.report.name = "jc-spectrum";
  detail::echo_common(res.report, cfg);
  res.report.columns = {"q", "index", "eigenvalue"};

  for (double q : cfg.qs) {
    ModelParams params{cfg.omega1, cfg.omega2, q, CouplingMode::scalar,
                       std::complex<double>(cfg.g, 0.0), 0.0};
    SuperFockSpace sp(cfg.nb, cfg.mf, q);
    auto ev = spectrum(build_h(params, sp));
    for (std::size_t i = 0; i < ev.size(); ++i)
      res.report.add_row({detail::fmt_q(q), (long long)i, ev[i]});
  }

  // classical JC limit: q = 1 - 1e-4, mf = 2
  {
    const double q = 1.0 - 1e-4;
    ModelParams params{cfg.omega1, cfg.omega2, q, CouplingMode::scalar,
                       std::complex<double>(cfg.g, 0.0), 0.0};
    SuperFockSpace sp(cfg.nb, 2, q);
    auto ev_q = spectrum(build_h(params, sp));
    auto ev_cl = spectrum(classical_jc_matrix(cfg.omega1, cfg.omega2,
                                              std::complex<double>(cfg.g, 0.0), cfg.nb));
    double worst = 0.0;
    for (std::size_t i = 0; i < ev_q.size(); ++i) worst = std::max(worst, std::abs(ev_q[i] - ev_cl[i]));
    res.report.add_row({std::string("classical_limit"), (long long)ev_q.size(), worst});
    res.check(worst <= cfg.tol(1e-3), "classical JC limit at q = 1 - 1e-4");
  }
  return res;
}

// ---------------------------------------------------------------------------
// report emission

inline std::vector<std::string> emit_report(const Report& rep, const RunConfig& cfg) {
  namespace fs = std::filesystem;
  std::string dir = cfg.out_dir;
  if (const char* env = std::getenv("QJC_OUTPUT_DIR")) dir = env;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto write_one = [&](const std::string& ext) {
    fs::path p = fs::path(dir) / (rep.name + "." + ext);
    std::ofstream os(p);
    if (!os) throw std::runtime_error("emit_report: cannot write " + p.string());
    if (ext == "csv")
      write_csv(os, rep);
    else
      write_json(os, rep);
    written.push_back(p.string());
  };
  if (cfg.format == "csv" || cfg.format == "both") write_one("csv");
  if (cfg.format == "json" || cfg.format == "both") write_one("json");
  return written;
}

}  // namespace qjc

#endif  // QJC_SUITES_HPP
