#ifndef QJC_GRASSMANN_HPP
#define QJC_GRASSMANN_HPP

#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace qjc {

enum class Parity { even, odd };

/// Element of the pseudo-Grassmann coefficient algebra: a complex linear
/// combination of monomials zeta^u zbar^v.  The generators anticommute
/// (zbar zeta = -zeta zbar) but are NOT nilpotent, so arbitrary powers
/// survive.  Canonical order puts all zeta factors before all zbar factors;
/// monomials of total degree above g_max are dropped and flagged.
class GrassElement {
 public:
  using Key = std::pair<int, int>;  // (u, v) for zeta^u zbar^v
  using Complex = std::complex<double>;

  static constexpr int default_g_max = 8;

  GrassElement() = default;
  GrassElement(const Complex& c, int g_max = default_g_max) : m_gmax(g_max) {
    insert(0, 0, c);
  }

  /// Zero element carrying a grading cutoff.
  static GrassElement empty(int g_max) {
    GrassElement g;
    g.m_gmax = g_max;
    return g;
  }

  static GrassElement zeta(int g_max = default_g_max) {
    GrassElement g = empty(g_max);
    g.insert(1, 0, 1.0);
    return g;
  }
  static GrassElement zeta_bar(int g_max = default_g_max) {
    GrassElement g = empty(g_max);
    g.insert(0, 1, 1.0);
    return g;
  }
  static GrassElement monomial(int u, int v, const Complex& c, int g_max = default_g_max) {
    GrassElement g = empty(g_max);
    g.insert(u, v, c);
    return g;
  }

  int g_max() const { return m_gmax; }
  bool truncated() const { return m_truncated; }
  bool is_zero() const { return m_terms.empty(); }
  const std::map<Key, Complex>& terms() const { return m_terms; }

  Complex coeff(int u, int v) const {
    auto it = m_terms.find({u, v});
    return it == m_terms.end() ? Complex(0.0) : it->second;
  }
  Complex scalar_part() const { return coeff(0, 0); }

  GrassElement& operator+=(const GrassElement& o) {
    m_truncated = m_truncated || o.m_truncated;
    for (const auto& [k, c] : o.m_terms) insert(k.first, k.second, c);
    return *this;
  }
  GrassElement& operator-=(const GrassElement& o) {
    m_truncated = m_truncated || o.m_truncated;
    for (const auto& [k, c] : o.m_terms) insert(k.first, k.second, -c);
    return *this;
  }
  friend GrassElement operator+(GrassElement a, const GrassElement& b) { return a += b; }
  friend GrassElement operator-(GrassElement a, const GrassElement& b) { return a -= b; }
  friend GrassElement operator-(const GrassElement& a) {
    GrassElement r = empty(a.m_gmax);
    for (const auto& [k, c] : a.m_terms) r.insert(k.first, k.second, -c);
    r.m_truncated = a.m_truncated;
    return r;
  }

  GrassElement& operator*=(const Complex& s) {
    if (s == 0.0) {
      m_terms.clear();
      return *this;
    }
    for (auto& [k, c] : m_terms) c *= s;
    return *this;
  }
  friend GrassElement operator*(GrassElement a, const Complex& s) { return a *= s; }
  friend GrassElement operator*(const Complex& s, GrassElement a) { return a *= s; }

  /// Bilinear product with sign bookkeeping: moving zbar^{v1} left past
  /// zeta^{u2} costs (-1)^{v1 u2}.
  friend GrassElement operator*(const GrassElement& a, const GrassElement& b) {
    GrassElement r = empty(std::max(a.m_gmax, b.m_gmax));
    r.m_truncated = a.m_truncated || b.m_truncated;
    for (const auto& [ka, ca] : a.m_terms)
      for (const auto& [kb, cb] : b.m_terms) {
        double sign = ((ka.second * kb.first) % 2) ? -1.0 : 1.0;
        r.insert(ka.first + kb.first, ka.second + kb.second, sign * ca * cb);
      }
    return r;
  }

  /// Parity of a homogeneous element; mixed parity is an error.
  Parity parity() const {
    if (m_terms.empty()) return Parity::even;
    int p = (m_terms.begin()->first.first + m_terms.begin()->first.second) % 2;
    for (const auto& [k, c] : m_terms)
      if ((k.first + k.second) % 2 != p)
        throw std::domain_error("GrassElement::parity: mixed-parity element");
    return p ? Parity::odd : Parity::even;
  }

  GrassElement even_part() const {
    GrassElement r = empty(m_gmax);
    for (const auto& [k, c] : m_terms)
      if ((k.first + k.second) % 2 == 0) r.insert(k.first, k.second, c);
    return r;
  }
  GrassElement odd_part() const {
    GrassElement r = empty(m_gmax);
    for (const auto& [k, c] : m_terms)
      if ((k.first + k.second) % 2 == 1) r.insert(k.first, k.second, c);
    return r;
  }

  /// External conjugation: reverses generator order and conjugates scalars.
  /// The reversed-starred word zeta^v zbar^u is already canonical, so the map
  /// is (u,v) -> (v,u) with no extra sign.
  GrassElement conj() const {
    GrassElement r = empty(m_gmax);
    r.m_truncated = m_truncated;
    for (const auto& [k, c] : m_terms) r.insert(k.second, k.first, std::conj(c));
    return r;
  }

  /// Substitutes zeta -> value, zbar -> conj(value) into the canonical form.
  Complex reduce(const Complex& zeta_value) const {
    Complex s = 0.0;
    for (const auto& [k, c] : m_terms)
      s += c * std::pow(zeta_value, k.first) * std::pow(std::conj(zeta_value), k.second);
    return s;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [k, c] : m_terms) m = std::max(m, std::abs(c));
    return m;
  }

  /// Restriction to total degree <= d.
  GrassElement truncate_degree(int d) const {
    GrassElement r = empty(m_gmax);
    for (const auto& [k, c] : m_terms)
      if (k.first + k.second <= d) r.insert(k.first, k.second, c);
    return r;
  }

  /// Deterministic rendering "c*zeta^u*zbar^v + ...".
  std::string to_string() const {
    if (m_terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : m_terms) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.real();
      if (c.imag() != 0.0) os << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
      os << ")";
      if (k.first) os << "*zeta" << (k.first > 1 ? "^" + std::to_string(k.first) : "");
      if (k.second) os << "*zbar" << (k.second > 1 ? "^" + std::to_string(k.second) : "");
    }
    return os.str();
  }

 private:
  void insert(int u, int v, const Complex& c) {
    if (c == 0.0) return;
    if (u + v > m_gmax) {
      m_truncated = true;
      return;
    }
    auto [it, fresh] = m_terms.try_emplace({u, v}, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0.0) m_terms.erase(it);
    }
  }

  std::map<Key, Complex> m_terms;
  int m_gmax = default_g_max;
  bool m_truncated = false;
};

inline GrassElement g_mul(const GrassElement& a, const GrassElement& b) { return a * b; }
inline Parity g_parity(const GrassElement& x) { return x.parity(); }
inline std::complex<double> g_reduce(const GrassElement& x, std::complex<double> zeta_value) {
  return x.reduce(zeta_value);
}

/// Inverse square root of an even element with positive real scalar part,
/// through the binomial series in (x/scalar - 1).  The identity
/// y*y*x = 1 holds up to monomials of total degree > g_max.
inline GrassElement g_inv_sqrt_even(const GrassElement& x, int g_max = GrassElement::default_g_max) {
  if (x.parity() != Parity::even)
    throw std::domain_error("g_inv_sqrt_even: element must be even");
  std::complex<double> s = x.scalar_part();
  if (!(s.imag() == 0.0) || !(s.real() > 0.0))
    throw std::domain_error("g_inv_sqrt_even: scalar part must be real and positive");
  const double c = s.real();
  GrassElement u = x * std::complex<double>(1.0 / c) - GrassElement(1.0, g_max);
  // (1+u)^{-1/2} = sum binom(-1/2, k) u^k; u has positive degree, so the
  // series terminates at the grading cutoff
  GrassElement acc(1.0, g_max);
  GrassElement upow(1.0, g_max);
  double binom = 1.0;
  for (int k = 1; k <= g_max + 1; ++k) {
    upow = upow * u;
    if (upow.is_zero()) break;
    binom *= (-0.5 - (k - 1)) / k;
    acc += upow * std::complex<double>(binom);
  }
  return acc * std::complex<double>(1.0 / std::sqrt(c));
}

}  // namespace qjc

#endif  // QJC_GRASSMANN_HPP
