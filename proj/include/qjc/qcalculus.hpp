#ifndef QJC_QCALCULUS_HPP
#define QJC_QCALCULUS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "qjc/qnumbers.hpp"

namespace qjc {

/// Geometric-lattice quadrature settings.
///
/// Two Jackson-type measures share the node families:
///   dual   — the literal inverse of the q-derivative (telescoping / FTC);
///            satisfies int_0^xi x^n d_q x = xi^{n+1}/[n+1].
///   moment — same geometric lattices, weights chosen so the moments of the
///            presented measure are exactly the q-factorials; this is the
///            measure under which the two q-Euler formulas hold, and the one
///            the completeness machinery uses.
struct QuadratureConfig {
  enum class Measure { dual, moment };

  double xi = 1.0;           // dual: lattice anchor; moment: optional node cap (0 = full)
  int lattice_depth = 256;   // K
  Mode base = Mode::boson;
  Measure measure = Measure::dual;
};

struct QuadResult {
  double value = 0.0;
  double truncation = 0.0;  // magnitude of the smallest retained contribution
};

struct PreconditionError : std::domain_error {
  double required_xi;
  PreconditionError(const std::string& what, double xi)
      : std::domain_error(what), required_xi(xi) {}
};

// ---------------------------------------------------------------------------
// q-derivatives

/// Fq-derivative (f(x) - f(-qx)) / (x + qx).
template <class F>
  requires std::is_invocable_r_v<double, F&, double>
double fq_derivative(F&& f, double x, double q) {
  check_q(q);
  if (x == 0.0)
    throw std::domain_error("fq_derivative: removable singularity at x = 0; "
                            "supply polynomial coefficients for the analytic limit");
  return (f(x) - f(-q * x)) / (x + q * x);
}

/// Symmetric bosonic q-derivative (f(qx) - f(x/q)) / ((q - 1/q) x).
template <class F>
  requires std::is_invocable_r_v<double, F&, double>
double sym_q_derivative(F&& f, double x, double q) {
  check_q(q);
  if (q == 1.0) throw std::domain_error("sym_q_derivative: q = 1 is degenerate");
  if (x == 0.0)
    throw std::domain_error("sym_q_derivative: removable singularity at x = 0; "
                            "supply polynomial coefficients for the analytic limit");
  return (f(q * x) - f(x / q)) / ((q - 1.0 / q) * x);
}

/// Polynomial overloads: coeffs[j] is the coefficient of x^j.  At x = 0 the
/// analytic limit coeffs[1] is returned; elsewhere the difference quotient is
/// evaluated on the polynomial.
inline double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

inline double fq_derivative(const std::vector<double>& coeffs, double x, double q) {
  check_q(q);
  if (x == 0.0) return coeffs.size() > 1 ? coeffs[1] : 0.0;
  return fq_derivative([&](double t) { return poly_eval(coeffs, t); }, x, q);
}

inline double sym_q_derivative(const std::vector<double>& coeffs, double x, double q) {
  check_q(q);
  if (x == 0.0) return coeffs.size() > 1 ? coeffs[1] : 0.0;
  return sym_q_derivative([&](double t) { return poly_eval(coeffs, t); }, x, q);
}

// ---------------------------------------------------------------------------
// internal q-exponential evaluators used by the quadrature

namespace detail {

/// exp_Bq(x) summed adaptively; entire, coefficients decay like q^{k(k-1)/2}.
/// At large negative arguments the alternating sum cancels catastrophically;
/// the moment-measure weights divide by the same value, so the garbage cancels
/// exactly as long as every caller goes through this one routine.
inline double exp_bq_series(double x, double q) {
  double sum = 0.0, term = 1.0, max_term = 1.0;
  for (int k = 0; k < 100000; ++k) {
    sum += term;
    term *= x / q_int(Mode::boson, k + 1, q);
    double a = std::abs(term);
    if (a > max_term) max_term = a;
    if (a < 1e-40 * max_term) break;
  }
  return sum;
}

/// exp_Fq(y) through its product form 1/((1+q) y; -q)_inf, valid beyond the
/// |y| < 1/(1+q) radius of the defining series (analytic continuation).
inline double exp_fq_product(double y, double q) {
  double prod = 1.0;
  double f = (1.0 + q) * y;
  for (int j = 0; j < 100000; ++j) {
    prod *= (1.0 - f);
    f *= -q;
    if (std::abs(f) < 1e-18) break;
  }
  return 1.0 / prod;
}

inline double exp_kind(Mode kind, double x, double q) {
  return kind == Mode::boson ? exp_bq_series(x, q) : exp_fq_product(x, q);
}

/// Lattice with integrand-independent weights whose presented moments
///   sum_k W_k e_kind(-x_k) x_k^n  =  [n]_kind!
/// are exact.  rho_k = W_k * e_kind(-x_k) is stored alongside.
struct MomentLattice {
  std::vector<double> nodes;
  std::vector<double> rho;  // moment weights (rho-moments are the q-factorials)
};

/// Fermionic side: the q-Euler distribution in base p = -q.
///   nodes  x_k = p^k/(1-p),  rho_k = p^k (p;p)_inf/(p;p)_k
/// Moments are [n]_F! exactly (Euler's theorem: sum z^k/(p;p)_k = 1/(z;p)_inf).
inline MomentLattice moment_lattice_fermion(double q, int depth) {
  const double p = -q;
  double pp_inf = 1.0, pj = p;
  while (std::abs(pj) > 1e-18) {
    pp_inf *= (1.0 - pj);
    pj *= p;
  }
  MomentLattice lat;
  double node = 1.0 / (1.0 - p), pk = 1.0, pp_k = 1.0;
  for (int k = 0; k <= depth; ++k) {
    lat.nodes.push_back(node);
    lat.rho.push_back(pk * pp_inf / pp_k);
    node *= p;
    pk *= p;
    pp_k *= (1.0 - pk);
  }
  return lat;
}

/// Bosonic side: multiplicative convolution of a theta measure on q^{-k}
/// (moments q^{-n(n-1)/2}) with the base-Q Euler distribution, Q = q^2
/// (moments (Q;Q)_n/(1-Q)^n).  Product nodes collapse onto the bilateral
/// lattice z_m = q^{-m}/(1-Q) and the combined moments are [n]_B! exactly.
inline MomentLattice moment_lattice_boson(double q, int depth) {
  const double Q = q * q;
  const double lq = std::log(q), lQ = std::log(Q);
  // theta1 = sum_{k in Z} q^{(k^2+k)/2} = 2 sum_{k>=0} q^{k(k+1)/2}
  double theta1 = 0.0;
  for (int k = 0;; ++k) {
    double t = std::exp(0.5 * k * (k + 1) * lq);
    theta1 += 2.0 * t;
    if (t < 1e-20 * theta1) break;
  }
  double qq_inf = 1.0, Qj = Q;
  while (Qj > 1e-18) {
    qq_inf *= (1.0 - Qj);
    Qj *= Q;
  }
  const int jmax = std::max(64, static_cast<int>(std::ceil(115.0 / -lQ)));
  std::vector<double> qq(jmax + 1);
  qq[0] = 1.0;
  for (int j = 1; j <= jmax; ++j) qq[j] = qq[j - 1] * (1.0 - std::exp(j * lQ));

  auto omega = [&](int m) {
    double s = 0.0;
    for (int j = 0; j <= jmax; ++j) {
      double k = m + 2.0 * j;
      double le = 0.5 * k * (k + 1.0) * lq + j * lQ;
      if (le < -745.0) continue;
      s += std::exp(le) / theta1 * qq_inf / qq[j];
    }
    return s;
  };

  // keep nodes where the euler integrands z^n exp_Bq(-z), n <= 12, stay
  // within double range: the peak series term has magnitude
  // exp(ln^2 z / (2 ln(1/q))), so require 12 ln z + ln^2 z/(2L) < 690
  const double L = -lq;
  const double ln_z_cap = -12.0 * L + std::sqrt(144.0 * L * L + 1380.0 * L);

  MomentLattice lat;
  const int m_lo = std::min(4096, std::max(depth, 8));
  for (int m = -m_lo; m <= depth; ++m) {
    double lz = -m * lq - std::log(1.0 - Q);
    if (lz > ln_z_cap) break;
    double w = omega(m);
    if (w <= 0.0) continue;
    lat.nodes.push_back(std::exp(lz));
    lat.rho.push_back(w);
  }
  return lat;
}

inline MomentLattice moment_lattice(Mode base, double q, int depth) {
  return base == Mode::boson ? moment_lattice_boson(q, depth)
                             : moment_lattice_fermion(q, depth);
}

/// Lattices are immutable once built; cache them per (base, q, depth).
inline const MomentLattice& moment_lattice_cached(Mode base, double q, int depth) {
  static std::map<std::tuple<int, double, int>, MomentLattice> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(static_cast<int>(base), q, depth);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, moment_lattice(base, q, depth)).first;
  return it->second;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// q-integral

/// Jackson-type lattice sum over [0, xi] (dual measure) or over the frozen
/// moment lattice.  Reports the magnitude of the last retained term as a
/// truncation estimate.
template <class F>
QuadResult q_integral(F&& f, const QuadratureConfig& cfg, double q) {
  check_q(q);
  if (q == 1.0) throw std::domain_error("q_integral: q = 1 lattice is degenerate");
  if (cfg.lattice_depth < 1) throw std::domain_error("q_integral: lattice_depth must be >= 1");

  auto require_finite = [&](double v, double x, int k) {
    if (!std::isfinite(v))
      throw std::runtime_error("q_integral: non-finite integrand at lattice point " +
                               std::to_string(k) + " (x = " + std::to_string(x) + ")");
  };

  QuadResult r;
  if (cfg.measure == QuadratureConfig::Measure::dual) {
    if (!(cfg.xi > 0.0)) throw std::domain_error("q_integral: xi must be positive");
    double term = 0.0;
    if (cfg.base == Mode::boson) {
      // nodes xi q^{2k+1}, weights (1/q - q) xi q^{2k+1}; dual to sym_q_derivative
      const double c = 1.0 / q - q;
      for (int k = 0; k <= cfg.lattice_depth; ++k) {
        double x = cfg.xi * std::pow(q, 2 * k + 1);
        if (x == 0.0) break;  // geometric underflow: every later node is zero too
        double fx = f(x);
        require_finite(fx, x, k);
        term = c * x * fx;
        r.value += term;
      }
    } else {
      // nodes (-q)^k xi, weights (1+q) xi (-q)^k; dual to the Fq-derivative
      double node = cfg.xi;
      for (int k = 0; k <= cfg.lattice_depth; ++k) {
        if (node == 0.0) break;
        double fx = f(node);
        require_finite(fx, node, k);
        term = (1.0 + q) * node * fx;
        r.value += term;
        node *= -q;
      }
    }
    r.truncation = std::abs(term);
    return r;
  }

  const auto& lat = detail::moment_lattice_cached(cfg.base, q, cfg.lattice_depth);
  double first = 0.0, last = 0.0;
  for (std::size_t k = 0; k < lat.nodes.size(); ++k) {
    double x = lat.nodes[k];
    if (cfg.xi > 0.0 && std::abs(x) > cfg.xi) continue;
    double e = detail::exp_kind(cfg.base, -x, q);
    if (e == 0.0) continue;  // node exactly at a zero of the weight function
    double fx = f(x);
    require_finite(fx, x, static_cast<int>(k));
    double term = lat.rho[k] / e * fx;
    r.value += term;
    if (k == 0) first = std::abs(term);
    last = std::abs(term);
  }
  r.truncation = std::max(first, last);
  return r;
}

// ---------------------------------------------------------------------------
// q-Euler formulas

struct EulerResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
};

/// Smallest top-node magnitude adequate for euler_check(kind, n, q): nodes
/// above it contribute less than 1e-9 of [n]! to the moment sum.
inline double euler_xi_min(Mode kind, int n, double q) {
  const auto& lat = detail::moment_lattice_cached(kind, q, 2048);
  const double fact = q_factorial(kind, n, q);
  // scan caps from the largest node magnitude downward
  std::vector<double> mags;
  for (double x : lat.nodes) mags.push_back(std::abs(x));
  std::sort(mags.begin(), mags.end());
  for (std::size_t i = 0; i < mags.size(); ++i) {
    double cap = mags[i];
    double dropped = 0.0;
    for (std::size_t k = 0; k < lat.nodes.size(); ++k)
      if (std::abs(lat.nodes[k]) > cap) dropped += std::abs(lat.rho[k] * std::pow(lat.nodes[k], n));
    if (dropped < 1e-9 * fact) return cap;
  }
  return mags.empty() ? 0.0 : mags.back();
}

/// Checks int_0^xi x^n exp(-x) d x = [n]! for the configured kind, under the
/// frozen moment measure (the definition selected by this very oracle).
inline EulerResult euler_check(Mode kind, int n, double q, QuadratureConfig cfg) {
  if (n < 0 || n > 12)
    throw std::domain_error("euler_check: n must lie in [0, 12]");
  check_q(q);
  if (q == 1.0) throw std::domain_error("euler_check: q = 1 is out of the quadrature domain");
  if (cfg.xi > 0.0) {
    double xi_min = euler_xi_min(kind, n, q);
    if (cfg.xi < xi_min)
      throw PreconditionError("euler_check: xi too small, required xi_min = " +
                                  std::to_string(xi_min),
                              xi_min);
  }
  cfg.base = kind;
  cfg.measure = QuadratureConfig::Measure::moment;
  auto integrand = [&](double x) {
    return std::pow(x, n) * detail::exp_kind(kind, -x, q);
  };
  EulerResult res;
  res.lhs = q_integral(integrand, cfg, q).value;
  res.rhs = q_factorial(kind, n, q);
  res.rel_err = std::abs(res.lhs - res.rhs) / std::abs(res.rhs);
  return res;
}

/// Default quadrature for the completeness / trace machinery.
inline QuadratureConfig default_moment_quadrature(Mode base) {
  QuadratureConfig cfg;
  cfg.xi = 0.0;  // full frozen lattice
  cfg.lattice_depth = 256;
  cfg.base = base;
  cfg.measure = QuadratureConfig::Measure::moment;
  return cfg;
}

}  // namespace qjc

#endif  // QJC_QCALCULUS_HPP
