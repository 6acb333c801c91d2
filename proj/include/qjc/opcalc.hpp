#ifndef QJC_OPCALC_HPP
#define QJC_OPCALC_HPP

#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qjc/laurent.hpp"
#include "qjc/qnumbers.hpp"
#include "qjc/superfock.hpp"

namespace qjc {

// ---------------------------------------------------------------------------
// letters and canonical order
//
// Normal form target:  ADAG^i A^j N^p qN(x) FDAG^r F^s M^t qM(y) PSI^u PSIBAR^v
// The rank below IS that target order; a word is normal-ordered when ranks are
// nondecreasing left to right.

enum class LetterKind : int {
  Adag = 0, A = 1, Nop = 2, QN = 3,
  Fdag = 4, F = 5, Mop = 6, QM = 7,
  Psi = 8, Psibar = 9,
};

struct Letter {
  LetterKind kind;
  int q4 = 0;  // quarter-power numerator, only for QN/QM (exponent = q4/4)

  friend bool operator==(const Letter&, const Letter&) = default;
};

inline bool is_fermionic_op(LetterKind k) { return k == LetterKind::F || k == LetterKind::Fdag; }

// ---------------------------------------------------------------------------
// expression AST

struct ParseError : std::runtime_error {
  int column;  // 1-based
  ParseError(const std::string& msg, int col)
      : std::runtime_error(msg + " at column " + std::to_string(col)), column(col) {}
};

struct OpExpr {
  enum class Node { scalar, gen, prod, sum, pow };
  Node node = Node::scalar;
  LaurentPoly scalar;             // Node::scalar
  Letter gen{};                   // Node::gen
  std::vector<OpExpr> children;   // prod / sum / pow (single child)
  unsigned exponent = 0;          // Node::pow

  static OpExpr make_scalar(LaurentPoly c) {
    OpExpr e;
    e.node = Node::scalar;
    e.scalar = std::move(c);
    return e;
  }
  static OpExpr make_gen(LetterKind k, int q4 = 0) {
    OpExpr e;
    e.node = Node::gen;
    e.gen = {k, q4};
    return e;
  }
  static OpExpr make_prod(std::vector<OpExpr> ch) {
    OpExpr e;
    e.node = Node::prod;
    e.children = std::move(ch);
    return e;
  }
  static OpExpr make_sum(std::vector<OpExpr> ch) {
    OpExpr e;
    e.node = Node::sum;
    e.children = std::move(ch);
    return e;
  }
  static OpExpr make_pow(OpExpr base, unsigned n) {
    OpExpr e;
    e.node = Node::pow;
    e.children.push_back(std::move(base));
    e.exponent = n;
    return e;
  }

  friend bool operator==(const OpExpr& a, const OpExpr& b) {
    if (a.node != b.node) return false;
    switch (a.node) {
      case Node::scalar: return a.scalar == b.scalar;
      case Node::gen: return a.gen == b.gen;
      case Node::pow: return a.exponent == b.exponent && a.children == b.children;
      default: return a.children == b.children;
    }
  }
};

// ---------------------------------------------------------------------------
// parser
//
// expr   := term ('+' term)*
// term   := factor+
// factor := gen ('^' uint)?
// gen    := 'a' | 'adag' | 'F' | 'Fdag' | 'qN(' rat ')' | 'qM(' rat ')'
//         | 'psi' | 'psibar' | 'fq' | 'fqdag' | 'N' | 'M' | scalar
// scalar := rational ('*' 's^' int)?
//
// fq / fqdag expand into their q^{-M/4}-dressed forms at parse time.

namespace detail {

class Parser {
 public:
  explicit Parser(std::string text) : m_text(std::move(text)) {}

  OpExpr parse() {
    skip_ws();
    OpExpr e = parse_expr();
    skip_ws();
    if (m_pos != m_text.size()) fail("unexpected input (expected '+', generator, or end)");
    return e;
  }

 private:
  OpExpr parse_expr() {
    std::vector<OpExpr> terms;
    terms.push_back(parse_term());
    skip_ws();
    while (peek() == '+') {
      ++m_pos;
      terms.push_back(parse_term());
      skip_ws();
    }
    return terms.size() == 1 ? terms.front() : OpExpr::make_sum(std::move(terms));
  }

  OpExpr parse_term() {
    std::vector<OpExpr> factors;
    auto push = [&](OpExpr f) {
      // splice macro-expanded products so the AST is flat
      if (f.node == OpExpr::Node::prod)
        for (auto& c : f.children) factors.push_back(std::move(c));
      else
        factors.push_back(std::move(f));
    };
    push(parse_factor());
    while (true) {
      skip_ws();
      char c = peek();
      if (c == '\0' || c == '+' || c == ')') break;
      push(parse_factor());
    }
    return factors.size() == 1 ? factors.front() : OpExpr::make_prod(std::move(factors));
  }

  OpExpr parse_factor() {
    OpExpr base = parse_gen();
    skip_ws();
    if (peek() == '^') {
      ++m_pos;
      skip_ws();
      unsigned n = parse_uint();
      return OpExpr::make_pow(std::move(base), n);
    }
    return base;
  }

  OpExpr parse_gen() {
    skip_ws();
    char c = peek();
    if (c == '\0') fail("expected generator or scalar, found end of input");
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id = read_ident();
      if (id == "a") return OpExpr::make_gen(LetterKind::A);
      if (id == "adag") return OpExpr::make_gen(LetterKind::Adag);
      if (id == "F") return OpExpr::make_gen(LetterKind::F);
      if (id == "Fdag") return OpExpr::make_gen(LetterKind::Fdag);
      if (id == "psi") return OpExpr::make_gen(LetterKind::Psi);
      if (id == "psibar") return OpExpr::make_gen(LetterKind::Psibar);
      if (id == "N") return OpExpr::make_gen(LetterKind::Nop);
      if (id == "M") return OpExpr::make_gen(LetterKind::Mop);
      if (id == "fq")
        return OpExpr::make_prod({OpExpr::make_gen(LetterKind::QM, -1),
                                  OpExpr::make_gen(LetterKind::F)});
      if (id == "fqdag")
        return OpExpr::make_prod({OpExpr::make_gen(LetterKind::Fdag),
                                  OpExpr::make_gen(LetterKind::QM, -1)});
      if (id == "qN" || id == "qM") {
        expect('(');
        int q4 = parse_quarter_rational();
        expect(')');
        return OpExpr::make_gen(id == "qN" ? LetterKind::QN : LetterKind::QM, q4);
      }
      fail("unknown generator '" + id + "' (expected a, adag, F, Fdag, qN(..), qM(..), "
           "psi, psibar, fq, fqdag, N, M, or a scalar)");
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return parse_scalar();
    fail(std::string("unexpected character '") + c + "'");
    return {};  // unreachable
  }

  OpExpr parse_scalar() {
    Rational r = parse_rational();
    int e = 0;
    skip_ws();
    if (peek() == '*') {
      ++m_pos;
      skip_ws();
      if (read_ident() != "s") fail("expected 's^<int>' after '*'");
      expect('^');
      e = parse_int();
    }
    return OpExpr::make_scalar(LaurentPoly::term(r, e));
  }

  // rational constrained to a multiple of 1/4; returns the exponent in
  // quarter units
  int parse_quarter_rational() {
    int col = column();
    Rational r = parse_rational();
    Rational four = r * 4;
    if (boost::multiprecision::denominator(four) != 1)
      throw ParseError("qN/qM exponent must be a multiple of 1/4", col);
    return static_cast<int>(boost::multiprecision::numerator(four));
  }

  Rational parse_rational() {
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++m_pos;
    }
    long long num = static_cast<long long>(parse_uint());
    long long den = 1;
    skip_ws();
    if (peek() == '/') {
      ++m_pos;
      skip_ws();
      den = static_cast<long long>(parse_uint());
      if (den == 0) fail("zero denominator");
    }
    Rational r(num, den);
    return neg ? -r : r;
  }

  unsigned parse_uint() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected unsigned integer");
    unsigned v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<unsigned>(m_text[m_pos] - '0');
      ++m_pos;
    }
    return v;
  }

  int parse_int() {
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++m_pos;
    }
    int v = static_cast<int>(parse_uint());
    return neg ? -v : v;
  }

  std::string read_ident() {
    std::size_t start = m_pos;
    while (m_pos < m_text.size() && std::isalpha(static_cast<unsigned char>(m_text[m_pos])))
      ++m_pos;
    return m_text.substr(start, m_pos - start);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++m_pos;
  }

  char peek() const { return m_pos < m_text.size() ? m_text[m_pos] : '\0'; }
  void skip_ws() {
    while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos])))
      ++m_pos;
  }
  int column() const { return static_cast<int>(m_pos) + 1; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("syntax error: " + msg, column()); }

  std::string m_text;
  std::size_t m_pos = 0;
};

}  // namespace detail

inline OpExpr parse(const std::string& text) { return detail::Parser(text).parse(); }

inline std::string render(const OpExpr& e) {
  std::ostringstream os;
  switch (e.node) {
    case OpExpr::Node::scalar: {
      // grammar form: rational ('*' 's^' int)?; general polynomials render as sums
      const auto& cs = e.scalar.coefficients();
      if (cs.empty()) {
        os << "0";
        break;
      }
      bool first = true;
      for (const auto& [exp, c] : cs) {
        if (!first) os << " + ";
        first = false;
        os << c;
        if (exp != 0) os << "*s^" << exp;
      }
      break;
    }
    case OpExpr::Node::gen:
      switch (e.gen.kind) {
        case LetterKind::A: os << "a"; break;
        case LetterKind::Adag: os << "adag"; break;
        case LetterKind::F: os << "F"; break;
        case LetterKind::Fdag: os << "Fdag"; break;
        case LetterKind::Psi: os << "psi"; break;
        case LetterKind::Psibar: os << "psibar"; break;
        case LetterKind::Nop: os << "N"; break;
        case LetterKind::Mop: os << "M"; break;
        case LetterKind::QN:
        case LetterKind::QM: {
          os << (e.gen.kind == LetterKind::QN ? "qN(" : "qM(");
          int n = e.gen.q4;
          if (n % 4 == 0)
            os << n / 4;
          else
            os << n << "/4";
          os << ")";
          break;
        }
      }
      break;
    case OpExpr::Node::pow:
      os << render(e.children[0]) << "^" << e.exponent;
      break;
    case OpExpr::Node::prod: {
      bool first = true;
      for (const auto& c : e.children) {
        if (!first) os << " ";
        first = false;
        os << render(c);
      }
      break;
    }
    case OpExpr::Node::sum: {
      bool first = true;
      for (const auto& c : e.children) {
        if (!first) os << " + ";
        first = false;
        os << render(c);
      }
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// normal form

/// Canonical monomial exponents, compared lexicographically.
struct NFMono {
  int adag = 0, a = 0, npow = 0, qn4 = 0;
  int fdag = 0, f = 0, mpow = 0, qm4 = 0;
  int psi = 0, psibar = 0;

  friend auto operator<=>(const NFMono&, const NFMono&) = default;
};

class NormalForm {
 public:
  NormalForm() = default;

  void add(const NFMono& m, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = m_terms.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) m_terms.erase(it);
    }
  }

  bool is_zero() const { return m_terms.empty(); }
  const std::map<NFMono, LaurentPoly>& terms() const { return m_terms; }

  LaurentPoly coefficient(const NFMono& m) const {
    auto it = m_terms.find(m);
    return it == m_terms.end() ? LaurentPoly() : it->second;
  }

  friend bool operator==(const NormalForm& x, const NormalForm& y) {
    return x.m_terms == y.m_terms;
  }
  friend NormalForm operator+(const NormalForm& x, const NormalForm& y) {
    NormalForm r = x;
    for (const auto& [m, c] : y.m_terms) r.add(m, c);
    return r;
  }
  friend NormalForm operator-(const NormalForm& x, const NormalForm& y) {
    NormalForm r = x;
    for (const auto& [m, c] : y.m_terms) r.add(m, -c);
    return r;
  }

  std::string to_string() const {
    if (m_terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = m_terms.rbegin(); it != m_terms.rend(); ++it) {
      const auto& [m, c] = *it;
      if (!first) os << " + ";
      first = false;
      if (c.is_scalar() && c.scalar_part() == 1 && !mono_empty(m)) {
        // coefficient 1 elided
      } else {
        bool needs_parens = c.coefficients().size() > 1;
        if (needs_parens) os << "(";
        os << c.to_string();
        if (needs_parens) os << ")";
        if (!mono_empty(m)) os << "*";
      }
      bool first_f = true;
      auto emit = [&](const std::string& name, int p) {
        if (!p) return;
        if (!first_f) os << " ";
        first_f = false;
        os << name;
        if (p > 1) os << "^" << p;
      };
      emit("adag", m.adag);
      emit("a", m.a);
      emit("N", m.npow);
      if (m.qn4) {
        if (!first_f) os << " ";
        first_f = false;
        os << "qN(" << (m.qn4 % 4 == 0 ? std::to_string(m.qn4 / 4)
                                       : std::to_string(m.qn4) + "/4")
           << ")";
      }
      emit("Fdag", m.fdag);
      emit("F", m.f);
      emit("M", m.mpow);
      if (m.qm4) {
        if (!first_f) os << " ";
        first_f = false;
        os << "qM(" << (m.qm4 % 4 == 0 ? std::to_string(m.qm4 / 4)
                                       : std::to_string(m.qm4) + "/4")
           << ")";
      }
      emit("psi", m.psi);
      emit("psibar", m.psibar);
      if (mono_empty(m) && (c.is_scalar() && c.scalar_part() == 1)) os << "1";
    }
    return os.str();
  }

  /// Numeric evaluation on a truncated space (psi-free normal forms only).
  OperatorMatrix to_matrix(const SuperFockSpace& sp) const {
    OperatorMatrix out(sp.dim(), sp.dim());
    for (const auto& [m, c] : m_terms) {
      if (m.psi || m.psibar)
        throw std::domain_error("NormalForm::to_matrix: psi generators have no scalar matrix");
      OperatorMatrix acc(sp.dim(), sp.dim());
      for (int i = 0; i < sp.dim(); ++i) acc.set(i, i, 1.0);
      auto mul_pow = [&](Gen g, int p, double x = 0.0) {
        for (int k = 0; k < p; ++k) acc = acc * operator_matrix(g, sp, x);
      };
      mul_pow(Gen::adag, m.adag);
      mul_pow(Gen::a, m.a);
      mul_pow(Gen::N, m.npow);
      if (m.qn4) acc = acc * operator_matrix(Gen::qpowN, sp, m.qn4 / 4.0);
      mul_pow(Gen::Fdag, m.fdag);
      mul_pow(Gen::F, m.f);
      mul_pow(Gen::M, m.mpow);
      if (m.qm4) acc = acc * operator_matrix(Gen::qpowM, sp, m.qm4 / 4.0);
      out = out + std::complex<double>(c.eval_q(sp.q)) * acc;
    }
    return out;
  }

 private:
  static bool mono_empty(const NFMono& m) {
    return !(m.adag || m.a || m.npow || m.qn4 || m.fdag || m.f || m.mpow || m.qm4 || m.psi ||
             m.psibar);
  }
  std::map<NFMono, LaurentPoly> m_terms;
};

// ---------------------------------------------------------------------------
// rewriting

namespace detail {

struct Term {
  LaurentPoly coef;
  std::vector<Letter> word;
};

inline int rank(LetterKind k) { return static_cast<int>(k); }

/// Applies the rewrite rule to the adjacent pair (w[i], w[i+1]) of a
/// disordered term and appends the replacement terms to `out`.
inline void rewrite_pair(const Term& t, std::size_t i, std::vector<Term>& out) {
  const Letter L = t.word[i];
  const Letter R = t.word[i + 1];
  auto make = [&](LaurentPoly scale, std::vector<Letter> mid) {
    Term nt;
    nt.coef = t.coef * scale;
    nt.word.assign(t.word.begin(), t.word.begin() + i);
    nt.word.insert(nt.word.end(), mid.begin(), mid.end());
    nt.word.insert(nt.word.end(), t.word.begin() + i + 2, t.word.end());
    out.push_back(std::move(nt));
  };
  const LaurentPoly one(1);
  const LaurentPoly q = LaurentPoly::q_power(1);
  const LaurentPoly minus_q = LaurentPoly::term(-1, 4);

  switch (L.kind) {
    case LetterKind::A:
      if (R.kind == LetterKind::Adag) {  // a adag = q adag a + q^{-N}
        make(q, {R, L});
        make(one, {{LetterKind::QN, -4}});
        return;
      }
      break;
    case LetterKind::Nop:
      if (R.kind == LetterKind::A) {  // N a = a N - a
        make(one, {R, L});
        make(LaurentPoly(-1), {R});
        return;
      }
      if (R.kind == LetterKind::Adag) {  // N adag = adag N + adag
        make(one, {R, L});
        make(one, {R});
        return;
      }
      break;
    case LetterKind::QN:
      if (R.kind == LetterKind::A) {  // q^{xN} a = q^{-x} a q^{xN}
        make(LaurentPoly::s_power(-L.q4), {R, L});
        return;
      }
      if (R.kind == LetterKind::Adag) {
        make(LaurentPoly::s_power(L.q4), {R, L});
        return;
      }
      if (R.kind == LetterKind::Nop) {
        make(one, {R, L});
        return;
      }
      break;
    case LetterKind::F:
      if (R.kind == LetterKind::Fdag) {  // F Fdag = 1 - q Fdag F
        make(minus_q, {R, L});
        make(one, {});
        return;
      }
      break;
    case LetterKind::Mop:
      if (R.kind == LetterKind::F) {  // M F = F M - F
        make(one, {R, L});
        make(LaurentPoly(-1), {R});
        return;
      }
      if (R.kind == LetterKind::Fdag) {
        make(one, {R, L});
        make(one, {R});
        return;
      }
      break;
    case LetterKind::QM:
      if (R.kind == LetterKind::F) {
        make(LaurentPoly::s_power(-L.q4), {R, L});
        return;
      }
      if (R.kind == LetterKind::Fdag) {
        make(LaurentPoly::s_power(L.q4), {R, L});
        return;
      }
      if (R.kind == LetterKind::Mop) {
        make(one, {R, L});
        return;
      }
      break;
    case LetterKind::Psi:
    case LetterKind::Psibar:
      // psi/psibar commute with the boson family and the number operators,
      // anticommute with F, Fdag and with each other
      if (rank(R.kind) < rank(L.kind)) {
        LaurentPoly sign =
            (is_fermionic_op(R.kind) || R.kind == LetterKind::Psi) ? LaurentPoly(-1) : one;
        make(sign, {R, L});
        return;
      }
      break;
    default:
      break;
  }
  // remaining disordered pairs are cross-family: they commute
  make(one, {R, L});
}

inline void expand(const OpExpr& e, std::vector<Term>& acc) {
  switch (e.node) {
    case OpExpr::Node::scalar: {
      for (auto& t : acc) t.coef *= e.scalar;
      return;
    }
    case OpExpr::Node::gen: {
      for (auto& t : acc) t.word.push_back(e.gen);
      return;
    }
    case OpExpr::Node::pow: {
      for (unsigned k = 0; k < e.exponent; ++k) expand(e.children[0], acc);
      return;
    }
    case OpExpr::Node::prod: {
      for (const auto& c : e.children) expand(c, acc);
      return;
    }
    case OpExpr::Node::sum: {
      std::vector<Term> result;
      for (const auto& c : e.children) {
        std::vector<Term> branch = acc;
        expand(c, branch);
        result.insert(result.end(), branch.begin(), branch.end());
      }
      acc = std::move(result);
      return;
    }
  }
}

enum class Strategy { first_pair, last_pair };

inline std::optional<std::size_t> find_disorder(const std::vector<Letter>& w, Strategy s) {
  if (s == Strategy::first_pair) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (rank(w[i].kind) > rank(w[i + 1].kind)) return i;
  } else {
    for (std::size_t i = w.size(); i-- > 1;)
      if (rank(w[i - 1].kind) > rank(w[i].kind)) return i - 1;
  }
  return std::nullopt;
}

inline void fold_term(const Term& t, NormalForm& nf) {
  NFMono m;
  for (const Letter& l : t.word) switch (l.kind) {
      case LetterKind::Adag: ++m.adag; break;
      case LetterKind::A: ++m.a; break;
      case LetterKind::Nop: ++m.npow; break;
      case LetterKind::QN: m.qn4 += l.q4; break;
      case LetterKind::Fdag: ++m.fdag; break;
      case LetterKind::F: ++m.f; break;
      case LetterKind::Mop: ++m.mpow; break;
      case LetterKind::QM: m.qm4 += l.q4; break;
      case LetterKind::Psi: ++m.psi; break;
      case LetterKind::Psibar: ++m.psibar; break;
    }
  nf.add(m, t.coef);
}

inline NormalForm normal_order_impl(const OpExpr& e, Strategy strat) {
  std::vector<Term> work{Term{LaurentPoly(1), {}}};
  expand(e, work);
  NormalForm nf;
  while (!work.empty()) {
    Term t = std::move(work.back());
    work.pop_back();
    if (t.coef.is_zero()) continue;
    auto pos = find_disorder(t.word, strat);
    if (!pos) {
      fold_term(t, nf);
      continue;
    }
    rewrite_pair(t, *pos, work);
  }
  return nf;
}

}  // namespace detail

/// Rewrites an expression to its unique normal-ordered form.  Each rule
/// strictly reduces the (inversion count, word length) measure in
/// lexicographic order, so the rewriting terminates.
inline NormalForm normal_order(const OpExpr& e) {
  return detail::normal_order_impl(e, detail::Strategy::first_pair);
}

// ---------------------------------------------------------------------------
// derived identities

struct DerivationError : std::runtime_error {
  std::string derived, closed_form;
  DerivationError(std::string d, std::string c)
      : std::runtime_error("derive_iteration: extracted coefficient " + d +
                           " does not match closed form " + c),
        derived(std::move(d)),
        closed_form(std::move(c)) {}
};

struct IterationResult {
  NormalForm nf;
  LaurentPoly coefficient;  // the extracted [n]
  bool matches_closed_form = false;
};

/// Normal-orders X (X+)^n and verifies
///   a (adag)^n = q^n (adag)^n a + [n]_B (adag)^{n-1} q^{-N}
///   F (Fdag)^n = (-q)^n (Fdag)^n F + [n]_F (Fdag)^{n-1}
/// exactly in the Laurent ring, returning the extracted q-integer.
inline IterationResult derive_iteration(Mode kind, int n) {
  if (n < 1 || n > 12) throw std::domain_error("derive_iteration: n must lie in [1, 12]");
  const LetterKind lower = kind == Mode::boson ? LetterKind::A : LetterKind::F;
  const LetterKind raise = kind == Mode::boson ? LetterKind::Adag : LetterKind::Fdag;

  std::vector<OpExpr> word{OpExpr::make_gen(lower)};
  for (int k = 0; k < n; ++k) word.push_back(OpExpr::make_gen(raise));
  IterationResult res;
  res.nf = normal_order(OpExpr::make_prod(std::move(word)));

  NFMono lead;  // lambda^n (X+)^n X
  NFMono corr;  // [n] (X+)^{n-1} D
  if (kind == Mode::boson) {
    lead.adag = n;
    lead.a = 1;
    corr.adag = n - 1;
    corr.qn4 = -4;
  } else {
    lead.fdag = n;
    lead.f = 1;
    corr.fdag = n - 1;
  }
  LaurentPoly lambda_n = kind == Mode::boson
                             ? LaurentPoly::q_power(n)
                             : LaurentPoly::term((n % 2) ? -1 : 1, 4 * n);
  const LaurentPoly closed = q_int_laurent(kind, n);

  NormalForm expected;
  expected.add(lead, lambda_n);
  expected.add(corr, closed);

  res.coefficient = res.nf.coefficient(corr);
  res.matches_closed_form = (res.nf == expected) && (res.coefficient == closed);
  if (!res.matches_closed_form)
    throw DerivationError(res.coefficient.to_string(), closed.to_string());
  return res;
}

struct TransformReport {
  bool anticommutator_zero = false;  // fq fqdag + q^{1/2} fqdag fq - q^{-M/2} == 0
  bool mutated_nonzero = false;      // same with the q^{+M/4} sign mutation
  bool m_commutator_zero = false;    // [M, fqdag] - fqdag == 0
  std::string residual;              // normal form of the mutated control
};

/// Substitutes f_q = q^{-M/4} F, f_q+ = F+ q^{-M/4} and checks that the
/// dressed anticommutation relation collapses to the undressed one.
inline TransformReport check_transformation() {
  TransformReport rep;
  auto qm = [](int q4) { return OpExpr::make_gen(LetterKind::QM, q4); };
  auto g = [](LetterKind k) { return OpExpr::make_gen(k); };
  const LaurentPoly sqrt_q = LaurentPoly::s_power(2);  // q^{1/2}

  auto relation = [&](int dress4) {
    // fq fqdag + q^{1/2} fqdag fq - q^{-M/2}, with f_q = q^{dress/4 M} F
    OpExpr t1 = OpExpr::make_prod({qm(dress4), g(LetterKind::F), g(LetterKind::Fdag), qm(dress4)});
    OpExpr t2 = OpExpr::make_prod({OpExpr::make_scalar(sqrt_q), g(LetterKind::Fdag), qm(dress4),
                                   qm(dress4), g(LetterKind::F)});
    OpExpr t3 = OpExpr::make_prod({OpExpr::make_scalar(LaurentPoly(-1)), qm(-2)});
    return normal_order(OpExpr::make_sum({t1, t2, t3}));
  };

  rep.anticommutator_zero = relation(-1).is_zero();
  NormalForm mutated = relation(+1);
  rep.mutated_nonzero = !mutated.is_zero();
  rep.residual = mutated.to_string();

  // [M, fqdag] - fqdag
  OpExpr c1 = OpExpr::make_prod({g(LetterKind::Mop), g(LetterKind::Fdag), qm(-1)});
  OpExpr c2 = OpExpr::make_prod({OpExpr::make_scalar(LaurentPoly(-1)), g(LetterKind::Fdag), qm(-1),
                                 g(LetterKind::Mop)});
  OpExpr c3 = OpExpr::make_prod({OpExpr::make_scalar(LaurentPoly(-1)), g(LetterKind::Fdag), qm(-1)});
  rep.m_commutator_zero = normal_order(OpExpr::make_sum({c1, c2, c3})).is_zero();
  return rep;
}

}  // namespace qjc

#endif  // QJC_OPCALC_HPP
