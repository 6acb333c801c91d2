#ifndef QJC_QSCS_HPP
#define QJC_QSCS_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qjc/grassmann.hpp"
#include "qjc/qcalculus.hpp"
#include "qjc/qnumbers.hpp"
#include "qjc/superfock.hpp"

namespace qjc {

enum class PsiMode { formal, scalar };

/// Coherent-state label (z, psi).  In formal mode psi = zeta e^{i theta} with
/// zeta the pseudo-Grassmann generator; in scalar mode psi is an ordinary
/// complex number (the "scalar shadow") constrained to the exp_Fq disc.
struct SCSLabel {
  std::complex<double> z{0.0, 0.0};
  PsiMode psi_mode = PsiMode::scalar;
  double theta = 0.0;                  // formal-mode phase
  std::complex<double> psi{0.0, 0.0};  // scalar-mode value

  double r() const { return std::abs(z); }
  double phi() const { return std::arg(z); }
};

/// Sign of Eq: (-1)^{floor(m/2) + m}, produced by reordering (-psi Fdag)^m.
inline double scs_sign(int m) { return ((m / 2 + m) % 2) ? -1.0 : 1.0; }

/// The same sign obtained mechanically: expand (-psi Fdag)^m and bubble every
/// psi to the left, counting odd-odd transpositions.
inline double scs_sign_brute(int m) {
  std::vector<int> w;
  for (int i = 0; i < m; ++i) {
    w.push_back(0);  // psi
    w.push_back(1);  // Fdag
  }
  long swaps = 0;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == 1 && w[i + 1] == 0) {
        std::swap(w[i], w[i + 1]);
        ++swaps;
        moved = true;
      }
  }
  double reorder = (swaps % 2) ? -1.0 : 1.0;
  return ((m % 2) ? -1.0 : 1.0) * reorder;
}

struct SCState {
  SuperFockSpace space;
  PsiMode mode;
  SCSLabel label;
  bool normalized = false;
  double boson_tail = 0.0;  // sum_{n >= nb} |z|^{2n} / [n]_B!
  std::vector<std::complex<double>> scalar_coeffs;  // flat index, scalar mode
  std::vector<GrassElement> formal_coeffs;          // flat index, formal mode
};

namespace detail {

inline double boson_tail_bound(double z2, int nb, double q) {
  double fact = q_factorial(Mode::boson, nb, q);
  double term = std::pow(z2, nb) / fact;
  double tail = 0.0;
  for (int n = nb; n < nb + 400; ++n) {
    tail += term;
    term *= z2 / q_int(Mode::boson, n + 1, q);
    if (term < 1e-30 * (tail + 1e-300)) break;
  }
  return tail;
}

/// exp_Fq(psibar psi) as an even Grassmann series, truncated by the grading.
inline GrassElement exp_fq_grassmann(const GrassElement& arg, double q, int g_max) {
  GrassElement sum(1.0, g_max);
  GrassElement pow(1.0, g_max);
  double fact = 1.0;
  for (int k = 1; k <= g_max; ++k) {
    pow = pow * arg;
    if (pow.is_zero()) break;
    fact *= q_int(Mode::fermion, k, q);
    sum += pow * std::complex<double>(1.0 / fact);
  }
  return sum;
}

}  // namespace detail

/// Normalization N = (exp_Bq(|z|^2) exp_Fq(psibar psi))^{-1/2}, scalar mode.
inline double scs_normalization(const SCSLabel& label, double q) {
  check_q(q);
  double eb = detail::exp_bq_series(std::norm(label.z), q);
  double ef = 1.0;
  if (label.psi_mode == PsiMode::scalar && label.psi != std::complex<double>(0.0)) {
    if (std::abs(label.psi) > q_exp_fermion_radius(q))
      throw ConvergenceError(1.0 / (1.0 + q));
    ef = detail::exp_fq_product(std::norm(label.psi), q);
  }
  return 1.0 / std::sqrt(eb * ef);
}

/// Formal-mode normalization: an even Grassmann series.
inline GrassElement scs_normalization_formal(const SCSLabel& label, double q,
                                             int g_max = GrassElement::default_g_max) {
  check_q(q);
  double eb = detail::exp_bq_series(std::norm(label.z), q);
  // psibar psi = zbar zeta (theta cancels)
  GrassElement arg = GrassElement::zeta_bar(g_max) * GrassElement::zeta(g_max);
  GrassElement ef = detail::exp_fq_grassmann(arg, q, g_max);
  return g_inv_sqrt_even(ef * std::complex<double>(eb), g_max);
}

/// Builds the coherent state with coefficients
///   c_{n,m} = (-1)^{floor(m/2)+m} z^n psi^m / sqrt([n]_B! [m]_F!).
inline SCState scs_build(const SCSLabel& label, const SuperFockSpace& space, bool normalize,
                         int g_max = GrassElement::default_g_max) {
  const double q = space.q;
  if (label.psi_mode == PsiMode::scalar && std::abs(label.psi) > q_exp_fermion_radius(q) &&
      label.psi != std::complex<double>(0.0))
    throw ConvergenceError(1.0 / (1.0 + q));

  SCState st{space, label.psi_mode, label, normalize, 0.0, {}, {}};
  st.boson_tail = detail::boson_tail_bound(std::norm(label.z), space.nb, q);

  std::vector<double> inv_sqrt_bf(space.nb), inv_sqrt_ff(space.mf);
  {
    double f = 1.0;
    for (int n = 0; n < space.nb; ++n) {
      if (n > 0) f *= q_int(Mode::boson, n, q);
      inv_sqrt_bf[n] = 1.0 / std::sqrt(f);
    }
    f = 1.0;
    for (int m = 0; m < space.mf; ++m) {
      if (m > 0) f *= q_int(Mode::fermion, m, q);
      inv_sqrt_ff[m] = 1.0 / std::sqrt(f);
    }
  }

  if (label.psi_mode == PsiMode::scalar) {
    st.scalar_coeffs.assign(space.dim(), 0.0);
    double norm = normalize ? scs_normalization(label, q) : 1.0;
    for (int n = 0; n < space.nb; ++n)
      for (int m = 0; m < space.mf; ++m)
        st.scalar_coeffs[space.index(n, m)] = norm * scs_sign(m) * std::pow(label.z, n) *
                                              std::pow(label.psi, m) * inv_sqrt_bf[n] *
                                              inv_sqrt_ff[m];
  } else {
    st.formal_coeffs.assign(space.dim(), GrassElement::empty(g_max));
    GrassElement norm = normalize ? scs_normalization_formal(label, q, g_max)
                                  : GrassElement(1.0, g_max);
    for (int n = 0; n < space.nb; ++n)
      for (int m = 0; m < space.mf; ++m) {
        std::complex<double> phase = std::exp(std::complex<double>(0.0, m * label.theta));
        std::complex<double> c = scs_sign(m) * std::pow(label.z, n) * phase * inv_sqrt_bf[n] *
                                 inv_sqrt_ff[m];
        st.formal_coeffs[space.index(n, m)] =
            norm * GrassElement::monomial(m, 0, c, g_max);
      }
  }
  return st;
}

// ---------------------------------------------------------------------------
// overlap

struct OverlapResult {
  std::complex<double> direct{0.0};
  std::complex<double> closed{0.0};
  double difference = 0.0;
};

/// Scalar-mode overlap: direct sum over coefficients and the closed form
/// N1 N2 exp_Bq(conj(z1) z2) exp_Fq(conj(psi1) psi2), both returned.
inline OverlapResult scs_overlap(const SCSLabel& l1, const SCSLabel& l2,
                                 const SuperFockSpace& space) {
  if (l1.psi_mode != PsiMode::scalar || l2.psi_mode != PsiMode::scalar)
    throw std::domain_error("scs_overlap: scalar-mode labels required (use scs_overlap_formal)");
  const double q = space.q;
  auto s1 = scs_build(l1, space, true);
  auto s2 = scs_build(l2, space, true);
  OverlapResult res;
  for (int i = 0; i < space.dim(); ++i)
    res.direct += std::conj(s1.scalar_coeffs[i]) * s2.scalar_coeffs[i];
  double n1 = scs_normalization(l1, q), n2 = scs_normalization(l2, q);
  std::complex<double> zz = std::conj(l1.z) * l2.z;
  std::complex<double> pp = std::conj(l1.psi) * l2.psi;
  std::complex<double> eb = 0.0, term = 1.0;
  for (int k = 0; k < 400; ++k) {
    eb += term;
    term *= zz / q_int(Mode::boson, k + 1, q);
    if (std::abs(term) < 1e-25) break;
  }
  std::complex<double> ef = 1.0, fterm = 1.0;
  for (int k = 0; k < 400 && pp != std::complex<double>(0.0); ++k) {
    if (k > 0) ef += fterm;
    fterm *= pp / q_int(Mode::fermion, k + 1, q);
    if (std::abs(fterm) < 1e-25) break;
  }
  res.closed = n1 * n2 * eb * ef;
  res.difference = std::abs(res.direct - res.closed);
  return res;
}

struct OverlapResultFormal {
  GrassElement direct;
  GrassElement closed;
  double max_coeff_difference = 0.0;  // nonzero from degree 4 on (pseudo-Grassmann)
};

/// Formal-mode overlap with Grassmann conjugation-reordering on the bra side.
inline OverlapResultFormal scs_overlap_formal(const SCSLabel& l1, const SCSLabel& l2,
                                              const SuperFockSpace& space,
                                              int g_max = GrassElement::default_g_max) {
  const double q = space.q;
  auto s1 = scs_build(l1, space, true, g_max);
  auto s2 = scs_build(l2, space, true, g_max);
  OverlapResultFormal res;
  res.direct = GrassElement::empty(g_max);
  for (int i = 0; i < space.dim(); ++i)
    res.direct += s1.formal_coeffs[i].conj() * s2.formal_coeffs[i];

  GrassElement n1 = scs_normalization_formal(l1, q, g_max);
  GrassElement n2 = scs_normalization_formal(l2, q, g_max);
  std::complex<double> zz = std::conj(l1.z) * l2.z;
  std::complex<double> ebc = 0.0, cterm = 1.0;
  for (int k = 0; k < 400; ++k) {
    ebc += cterm;
    cterm *= zz / q_int(Mode::boson, k + 1, q);
    if (std::abs(cterm) < 1e-25) break;
  }
  std::complex<double> phase = std::exp(std::complex<double>(0.0, l2.theta - l1.theta));
  GrassElement arg = (GrassElement::zeta_bar(g_max) * GrassElement::zeta(g_max)) * phase;
  GrassElement ef = detail::exp_fq_grassmann(arg, q, g_max);
  res.closed = n1 * n2 * ef * ebc;

  GrassElement diff = res.direct - res.closed;
  res.max_coeff_difference = diff.max_abs_coeff();
  return res;
}

// ---------------------------------------------------------------------------
// eigenvalue property

/// Numeric (scalar-mode) residual of (X - lambda)|state>, 2-norm; lambda = z
/// for a, psi for F.  By default restricted to levels below cutoff-1 where the
/// identity is exact; with include_boundary the dropped-top-level row enters,
/// whose norm scales as the dropped coefficient.
inline double eigen_residual(const SCState& st, Gen gen, bool include_boundary = false) {
  if (st.mode != PsiMode::scalar)
    throw std::domain_error("eigen_residual: scalar-mode state required (use eigen_residual_formal)");
  if (gen != Gen::a && gen != Gen::F) throw std::domain_error("eigen_residual: gen must be a or F");
  const auto& sp = st.space;
  double acc = 0.0;
  const int n_max = (gen == Gen::a) ? (include_boundary ? sp.nb - 1 : sp.nb - 2) : sp.nb - 1;
  const int m_max = (gen == Gen::F) ? (include_boundary ? sp.mf - 1 : sp.mf - 2) : sp.mf - 1;
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= m_max; ++m) {
      std::complex<double> applied = 0.0;
      if (gen == Gen::a)
        applied = (n + 1 < sp.nb) ? std::sqrt(q_int(Mode::boson, n + 1, sp.q)) *
                                        st.scalar_coeffs[sp.index(n + 1, m)]
                                  : std::complex<double>(0.0);
      else
        applied = (m + 1 < sp.mf) ? std::sqrt(q_int(Mode::fermion, m + 1, sp.q)) *
                                        st.scalar_coeffs[sp.index(n, m + 1)]
                                  : std::complex<double>(0.0);
      std::complex<double> lambda = gen == Gen::a ? st.label.z : st.label.psi;
      acc += std::norm(applied - lambda * st.scalar_coeffs[sp.index(n, m)]);
    }
  return std::sqrt(acc);
}

enum class SignConvention { koszul, plain };

/// Formal-mode eigenvalue residual, computed symbolically: the square-root
/// ratios sqrt([k+1] [k]!/[k+1]!) are formed in exact rational arithmetic
/// (identically 1), so the residual reduces to the sign bookkeeping.  Under
/// the Koszul convention the fermionic residual is exactly zero; under the
/// plain convention it is not, which is what selects the convention.
inline double eigen_residual_formal(const SCSLabel& label, const SuperFockSpace& sp, Gen gen,
                                    SignConvention conv = SignConvention::koszul) {
  if (gen != Gen::a && gen != Gen::F)
    throw std::domain_error("eigen_residual_formal: gen must be a or F");
  const Rational qr = rational_from_double(sp.q);
  double worst = 0.0;
  if (gen == Gen::a) {
    for (int n = 0; n + 1 < sp.nb; ++n) {
      Rational ratio = q_int_rational(Mode::boson, n + 1, qr) *
                       q_factorial_rational(Mode::boson, n, qr) /
                       q_factorial_rational(Mode::boson, n + 1, qr);
      double root = std::sqrt(static_cast<double>(ratio));
      // a is even: no Koszul sign either way; magnitudes weighted by |z|^n
      double defect = std::abs(root - 1.0) * std::pow(std::abs(label.z), n);
      worst = std::max(worst, defect);
    }
    return worst;
  }
  for (int m = 0; m + 1 < sp.mf; ++m) {
    Rational ratio = q_int_rational(Mode::fermion, m + 1, qr) *
                     q_factorial_rational(Mode::fermion, m, qr) /
                     q_factorial_rational(Mode::fermion, m + 1, qr);
    double root = std::sqrt(static_cast<double>(ratio));
    double koszul_sign = (conv == SignConvention::koszul) ? ((m + 1) % 2 ? -1.0 : 1.0) : 1.0;
    // coefficient of |n,m> in F|state> is koszul_sign sqrt([m+1]) c_{n,m+1};
    // the target is psi c_{n,m}
    double defect = std::abs(koszul_sign * scs_sign(m + 1) * root - scs_sign(m));
    worst = std::max(worst, defect);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// completeness

/// Angular integrals of Eq-type exp(i(n-n')phi): exact Kronecker deltas, never
/// evaluated by numeric quadrature.
inline double angular_delta(int n, int nprime) { return n == nprime ? 1.0 : 0.0; }

struct CompletenessRow {
  int n, m;
  double diagonal;
  double deviation;
};

struct CompletenessReport {
  std::vector<CompletenessRow> rows;
  double max_deviation = 0.0;
  bool offdiagonals_exact_zero = true;  // structural: angular deltas
};

/// Computational proof of the resolution of unity: angular parts are exact
/// deltas, the radial parts reduce per mode to the two q-Euler identities.
inline CompletenessReport completeness_check(double q, const SuperFockSpace& space,
                                             const QuadratureConfig& quad) {
  CompletenessReport rep;
  std::vector<double> ratio_b(space.nb), ratio_f(space.mf);
  for (int n = 0; n < space.nb; ++n) {
    try {
      auto e = euler_check(Mode::boson, n, q, quad);
      ratio_b[n] = e.lhs / e.rhs;
    } catch (const std::exception& e) {
      throw std::runtime_error("completeness_check: quadrature failed at boson mode n=" +
                               std::to_string(n) + ": " + e.what());
    }
  }
  for (int m = 0; m < space.mf; ++m) {
    try {
      auto e = euler_check(Mode::fermion, m, q, quad);
      ratio_f[m] = e.lhs / e.rhs;
    } catch (const std::exception& e) {
      throw std::runtime_error("completeness_check: quadrature failed at fermion mode m=" +
                               std::to_string(m) + ": " + e.what());
    }
  }
  for (int n = 0; n < space.nb; ++n)
    for (int m = 0; m < space.mf; ++m) {
      double d = ratio_b[n] * ratio_f[m];
      rep.rows.push_back({n, m, d, std::abs(d - 1.0)});
      rep.max_deviation = std::max(rep.max_deviation, std::abs(d - 1.0));
    }
  return rep;
}

/// Reconstructs the target through the resolution-of-identity expansion and
/// returns the max coefficient deviation.
inline double reproduce(const SCState& target, double q, const SuperFockSpace& space,
                        const QuadratureConfig& quad) {
  if (target.mode != PsiMode::scalar)
    throw std::domain_error("reproduce: scalar-mode target required");
  auto rep = completeness_check(q, space, quad);
  double worst = 0.0;
  for (const auto& row : rep.rows) {
    std::complex<double> c = target.scalar_coeffs[space.index(row.n, row.m)];
    worst = std::max(worst, std::abs((row.diagonal - 1.0) * c));
  }
  return worst;
}

/// Basis state |n,m> wrapped as a scalar-mode SCState (reproduce() target).
inline SCState basis_state(const SuperFockSpace& space, int n, int m) {
  SCState st{space, PsiMode::scalar, SCSLabel{}, true, 0.0, {}, {}};
  st.scalar_coeffs.assign(space.dim(), 0.0);
  st.scalar_coeffs[space.index(n, m)] = 1.0;
  return st;
}

}  // namespace qjc

#endif  // QJC_QSCS_HPP
