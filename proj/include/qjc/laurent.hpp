#ifndef QJC_LAURENT_HPP
#define QJC_LAURENT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qjc {

using Rational = boost::multiprecision::cpp_rational;

/// Exact rational value of a finite double (every finite double is dyadic).
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite value");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  auto mi = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(mi);
  boost::multiprecision::cpp_int two_abs_exp = boost::multiprecision::pow(
      boost::multiprecision::cpp_int(2), static_cast<unsigned>(exp < 0 ? -exp : exp));
  if (exp > 0)
    r *= Rational(two_abs_exp);
  else if (exp < 0)
    r /= Rational(two_abs_exp);
  return r;
}

/// Exact Laurent polynomial in the formal symbol s = q^{1/4}, with rational
/// coefficients.  This is the coefficient ring of the symbolic engine: all
/// q-integers and the quarter powers q^{k/4} appearing in the deformed algebra
/// live here.  Canonical form: no stored zero coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c) {
    if (c != 0) m_coeff[0] = c;
  }
  LaurentPoly(long c) : LaurentPoly(Rational(c)) {}

  /// s^e with coefficient c.
  static LaurentPoly term(const Rational& c, int e) {
    LaurentPoly p;
    if (c != 0) p.m_coeff[e] = c;
    return p;
  }
  static LaurentPoly s_power(int e) { return term(1, e); }
  /// q^k = s^{4k}.
  static LaurentPoly q_power(int k) { return term(1, 4 * k); }

  bool is_zero() const { return m_coeff.empty(); }

  /// True when the polynomial is a plain scalar (only the s^0 term).
  bool is_scalar() const {
    return m_coeff.empty() || (m_coeff.size() == 1 && m_coeff.begin()->first == 0);
  }

  Rational scalar_part() const {
    auto it = m_coeff.find(0);
    return it == m_coeff.end() ? Rational(0) : it->second;
  }

  const std::map<int, Rational>& coefficients() const { return m_coeff; }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.m_coeff) {
      Rational& r = m_coeff[e];
      r += c;
      if (r == 0) m_coeff.erase(e);
    }
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.m_coeff) {
      Rational& r = m_coeff[e];
      r -= c;
      if (r == 0) m_coeff.erase(e);
    }
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) { return LaurentPoly() - a; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.m_coeff)
      for (const auto& [eb, cb] : b.m_coeff) {
        Rational& c = r.m_coeff[ea + eb];
        c += ca * cb;
        if (c == 0) r.m_coeff.erase(ea + eb);
      }
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly pow(unsigned n) const {
    LaurentPoly r(1);
    LaurentPoly base = *this;
    while (n) {
      if (n & 1u) r *= base;
      base *= base;
      n >>= 1u;
    }
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.m_coeff == b.m_coeff;
  }

  /// Numeric evaluation by substituting s = q^{1/4}.
  double eval_q(double q) const {
    if (q <= 0.0) throw std::domain_error("LaurentPoly::eval_q: q must be positive");
    double s = std::pow(q, 0.25);
    double v = 0.0;
    for (const auto& [e, c] : m_coeff) v += static_cast<double>(c) * std::pow(s, e);
    return v;
  }

  /// Rendering with q-powers regrouped: exponents divisible by 4 print as
  /// powers of q, the rest as powers of s.
  std::string to_string() const {
    if (m_coeff.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = m_coeff.rbegin(); it != m_coeff.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational a = c;
      if (first) {
        if (a < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      std::string var;
      if (e != 0) {
        int qe = e / 4;
        if (e % 4 == 0)
          var = (qe == 1) ? "q" : "q^" + std::to_string(qe);
        else
          var = "s^" + std::to_string(e);
      }
      if (var.empty())
        os << a;
      else if (a == 1)
        os << var;
      else
        os << a << "*" << var;
    }
    return os.str();
  }

 private:
  std::map<int, Rational> m_coeff;  // exponent of s -> coefficient
};

}  // namespace qjc

#endif  // QJC_LAURENT_HPP
