#ifndef QJC_QNUMBERS_HPP
#define QJC_QNUMBERS_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qjc/laurent.hpp"

namespace qjc {

enum class Mode { boson, fermion };

struct DeformParams {
  double q = 0.5;
  int series_terms = 64;
  double tol = 1e-10;

  void validate() const {
    if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("DeformParams: q must lie in (0,1]");
    if (series_terms < 1) throw std::domain_error("DeformParams: series_terms must be >= 1");
    if (tol < 0.0) throw std::domain_error("DeformParams: tol must be nonnegative");
  }
};

inline void check_q(double q) {
  if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("q must lie in (0,1]");
}

/// Bosonic q-integer via the symmetric sum q^{n-1} + q^{n-3} + ... + q^{1-n}.
/// The ratio form (q^n - q^{-n})/(q - q^{-1}) is equivalent but 0/0 at q = 1.
inline double q_int(Mode kind, int n, double q) {
  if (n < 0) throw std::domain_error("q_int: n must be nonnegative");
  check_q(q);
  if (n == 0) return 0.0;
  if (kind == Mode::boson) {
    double v = 0.0;
    for (int j = 0; j < n; ++j) v += std::pow(q, n - 1 - 2 * j);
    return v;
  }
  // fermionic: (1 - (-q)^n)/(1 + q)
  return (1.0 - std::pow(-q, n)) / (1.0 + q);
}

inline double q_factorial(Mode kind, int n, double q) {
  if (n < 0) throw std::domain_error("q_factorial: n must be nonnegative");
  check_q(q);
  double p = 1.0;
  for (int k = 1; k <= n; ++k) p *= q_int(kind, k, q);
  return p;
}

/// [n] as an exact Laurent polynomial in s = q^{1/4}.
inline LaurentPoly q_int_laurent(Mode kind, int n) {
  if (n < 0) throw std::domain_error("q_int_laurent: n must be nonnegative");
  LaurentPoly p;
  if (kind == Mode::boson) {
    for (int j = 0; j < n; ++j) p += LaurentPoly::q_power(n - 1 - 2 * j);
  } else {
    for (int k = 0; k < n; ++k) p += LaurentPoly::term((k % 2) ? -1 : 1, 4 * k);
  }
  return p;
}

inline LaurentPoly q_factorial_laurent(Mode kind, int n) {
  LaurentPoly p(1);
  for (int k = 1; k <= n; ++k) p *= q_int_laurent(kind, k);
  return p;
}

/// Exact rational [n] and [n]! at a rational q (used by the symbolic
/// eigenvalue checks, where exactness matters).
inline Rational q_int_rational(Mode kind, int n, const Rational& q) {
  if (n < 0) throw std::domain_error("q_int_rational: n must be nonnegative");
  Rational v = 0;
  if (kind == Mode::boson) {
    // q^{n-1} + q^{n-3} + ... + q^{1-n} with exact rational powers
    for (int j = 0; j < n; ++j) {
      int e = n - 1 - 2 * j;
      Rational t = 1;
      for (int i = 0; i < std::abs(e); ++i) t *= q;
      v += (e >= 0) ? t : Rational(1) / t;
    }
  } else {
    Rational t = 1;
    for (int i = 0; i < n; ++i) t *= -q;
    v = (1 - t) / (1 + q);
  }
  return v;
}

inline Rational q_factorial_rational(Mode kind, int n, const Rational& q) {
  Rational p = 1;
  for (int k = 1; k <= n; ++k) p *= q_int_rational(kind, k, q);
  return p;
}

struct ConvergenceError : std::domain_error {
  double radius;
  explicit ConvergenceError(double r)
      : std::domain_error("q_exp(fermion): |x| outside the convergence disc, radius " +
                          std::to_string(r)),
        radius(r) {}
};

struct QExpResult {
  std::complex<double> value;
  double tail_bound;  // bound on the omitted series tail
  int terms_used;
};

/// Safe numeric-mode radius for exp_Fq: the series has radius 1/(1+q), the
/// convergence factor [m]_F tends to 1/(1+q); keep a margin.
inline double q_exp_fermion_radius(double q) { return 0.9 / (1.0 + q); }

/// Truncated q-exponential series sum_{k=0}^{series_terms} x^k/[k]!.
inline QExpResult q_exp(Mode kind, std::complex<double> x, const DeformParams& params) {
  params.validate();
  const double q = params.q;
  if (kind == Mode::fermion) {
    if (q == 1.0)
      throw std::domain_error("q_exp(fermion): undefined at q = 1 ([2]_F! vanishes)");
    if (std::abs(x) > q_exp_fermion_radius(q)) throw ConvergenceError(1.0 / (1.0 + q));
  }
  std::complex<double> sum = 0.0;
  std::complex<double> term = 1.0;
  const int K = params.series_terms;
  for (int k = 0; k <= K; ++k) {
    sum += term;
    term *= x / q_int(kind, k + 1, q);
  }
  // `term` is now the first omitted term x^{K+1}/[K+1]!.
  double tail = std::numeric_limits<double>::infinity();
  if (kind == Mode::boson) {
    double r = std::abs(x) / q_int(Mode::boson, K + 2, q);
    if (r < 1.0) tail = std::abs(term) / (1.0 - r);
  } else {
    // inf_{k>K} [k]_F >= (1 - q^{Ke})/(1+q) with Ke the smallest even integer > K
    int ke = (K + 1) % 2 == 0 ? K + 1 : K + 2;
    double inf_qint = (1.0 - std::pow(q, ke)) / (1.0 + q);
    double r = std::abs(x) / inf_qint;
    if (r < 1.0) tail = std::abs(term) / (1.0 - r);
  }
  return {sum, tail, K + 1};
}

/// Formal mode: the truncated coefficient sequence 1/[k]! for k = 0..terms.
inline std::vector<double> q_exp_coefficients(Mode kind, int terms, double q) {
  check_q(q);
  if (kind == Mode::fermion && q == 1.0 && terms >= 2)
    throw std::domain_error("q_exp_coefficients(fermion): undefined at q = 1 beyond k = 1");
  std::vector<double> c(terms + 1);
  double f = 1.0;
  c[0] = 1.0;
  for (int k = 1; k <= terms; ++k) {
    f *= q_int(kind, k, q);
    c[k] = 1.0 / f;
  }
  return c;
}

inline double laurent_eval(const LaurentPoly& c, double q) { return c.eval_q(q); }

}  // namespace qjc

#endif  // QJC_QNUMBERS_HPP
