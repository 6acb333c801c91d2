#ifndef QJC_SUPERFOCK_HPP
#define QJC_SUPERFOCK_HPP

#include <cmath>
#include <complex>
#include <iomanip>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qjc/qnumbers.hpp"

namespace qjc {

/// Truncated super-Fock space with basis |n,m>, n = 0..nb-1, m = 0..mf-1,
/// ordered lexicographically (n major, m minor).
struct SuperFockSpace {
  int nb;
  int mf;
  double q;

  SuperFockSpace(int nb_, int mf_, double q_) : nb(nb_), mf(mf_), q(q_) {
    if (nb < 1 || mf < 1) throw std::domain_error("SuperFockSpace: cutoffs must be >= 1");
    check_q(q);
  }

  int dim() const { return nb * mf; }
  int index(int n, int m) const { return n * mf + m; }
  int boson_level(int idx) const { return idx / mf; }
  int fermion_level(int idx) const { return idx % mf; }

  std::vector<std::complex<double>> state_vector(int n, int m) const {
    if (n < 0 || n >= nb || m < 0 || m >= mf)
      throw std::domain_error("SuperFockSpace::state_vector: level out of range");
    std::vector<std::complex<double>> v(dim(), 0.0);
    v[index(n, m)] = 1.0;
    return v;
  }
};

/// Row-major sparse matrix over an arbitrary scalar (complex for numeric work,
/// GrassElement entries in graded mode).
template <class T>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : m_rows(rows), m_cols(cols), m_data(rows) {}

  int rows() const { return m_rows; }
  int cols() const { return m_cols; }

  void set(int r, int c, const T& v) {
    if (v == T{})
      m_data[r].erase(c);
    else
      m_data[r][c] = v;
  }
  void add(int r, int c, const T& v) {
    auto [it, fresh] = m_data[r].try_emplace(c, v);
    if (!fresh) {
      it->second += v;
      if (it->second == T{}) m_data[r].erase(it);
    }
  }
  T get(int r, int c) const {
    auto it = m_data[r].find(c);
    return it == m_data[r].end() ? T{} : it->second;
  }
  const std::map<int, T>& row(int r) const { return m_data[r]; }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix r = a;
    for (int i = 0; i < b.m_rows; ++i)
      for (const auto& [c, v] : b.m_data[i]) r.add(i, c, v);
    return r;
  }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix r = a;
    for (int i = 0; i < b.m_rows; ++i)
      for (const auto& [c, v] : b.m_data[i]) r.add(i, c, -v);
    return r;
  }
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix r(a.m_rows, b.m_cols);
    for (int i = 0; i < a.m_rows; ++i)
      for (const auto& [k, va] : a.m_data[i])
        for (const auto& [j, vb] : b.m_data[k]) r.add(i, j, va * vb);
    return r;
  }
  friend SparseMatrix operator*(const T& s, const SparseMatrix& a) {
    SparseMatrix r(a.m_rows, a.m_cols);
    for (int i = 0; i < a.m_rows; ++i)
      for (const auto& [c, v] : a.m_data[i]) r.add(i, c, s * v);
    return r;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(m_rows, T{});
    for (int i = 0; i < m_rows; ++i)
      for (const auto& [c, m] : m_data[i]) out[i] += m * v[c];
    return out;
  }

 private:
  int m_rows = 0, m_cols = 0;
  std::vector<std::map<int, T>> m_data;
};

using OperatorMatrix = SparseMatrix<std::complex<double>>;

inline OperatorMatrix adjoint(const OperatorMatrix& a) {
  OperatorMatrix r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (const auto& [c, v] : a.row(i)) r.add(c, i, std::conj(v));
  return r;
}

inline double max_abs(const OperatorMatrix& a) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (const auto& [c, v] : a.row(i)) m = std::max(m, std::abs(v));
  return m;
}

enum class Gen { a, adag, F, Fdag, N, M, qpowN, qpowM };

inline std::string gen_name(Gen g) {
  switch (g) {
    case Gen::a: return "a";
    case Gen::adag: return "adag";
    case Gen::F: return "F";
    case Gen::Fdag: return "Fdag";
    case Gen::N: return "N";
    case Gen::M: return "M";
    case Gen::qpowN: return "qpowN";
    case Gen::qpowM: return "qpowM";
  }
  return "?";
}

inline SuperFockSpace build_space(int nb, int mf, double q) { return SuperFockSpace(nb, mf, q); }

/// Generator matrices per the super-Fock actions:
///   a|n,m> = sqrt([n]_B)|n-1,m>,  adag|n,m> = sqrt([n+1]_B)|n+1,m>,
///   F|n,m> = sqrt([m]_F)|n,m-1>,  Fdag|n,m> = sqrt([m+1]_F)|n,m+1>,
/// raising operators annihilate the top level (hard truncation).
/// For qpowN/qpowM, `x` is the exponent: diag(q^{x n}) resp. diag(q^{x m}).
inline OperatorMatrix operator_matrix(Gen g, const SuperFockSpace& sp, double x = 0.0) {
  OperatorMatrix mat(sp.dim(), sp.dim());
  for (int n = 0; n < sp.nb; ++n)
    for (int m = 0; m < sp.mf; ++m) {
      int col = sp.index(n, m);
      switch (g) {
        case Gen::a:
          if (n > 0) mat.set(sp.index(n - 1, m), col, std::sqrt(q_int(Mode::boson, n, sp.q)));
          break;
        case Gen::adag:
          if (n + 1 < sp.nb)
            mat.set(sp.index(n + 1, m), col, std::sqrt(q_int(Mode::boson, n + 1, sp.q)));
          break;
        case Gen::F:
          if (m > 0) mat.set(sp.index(n, m - 1), col, std::sqrt(q_int(Mode::fermion, m, sp.q)));
          break;
        case Gen::Fdag:
          if (m + 1 < sp.mf)
            mat.set(sp.index(n, m + 1), col, std::sqrt(q_int(Mode::fermion, m + 1, sp.q)));
          break;
        case Gen::N: mat.set(col, col, static_cast<double>(n)); break;
        case Gen::M: mat.set(col, col, static_cast<double>(m)); break;
        case Gen::qpowN: mat.set(col, col, std::pow(sp.q, x * n)); break;
        case Gen::qpowM: mat.set(col, col, std::pow(sp.q, x * m)); break;
      }
    }
  return mat;
}

/// Max |entry| over rows and columns strictly below the top level of the
/// excluded sectors; cutoff artifacts live only on those boundary slices.
inline double max_abs_interior(const OperatorMatrix& a, const SuperFockSpace& sp,
                               bool drop_top_boson = true, bool drop_top_fermion = true) {
  double mx = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    if (drop_top_boson && sp.boson_level(i) == sp.nb - 1) continue;
    if (drop_top_fermion && sp.fermion_level(i) == sp.mf - 1) continue;
    for (const auto& [c, v] : a.row(i)) {
      if (drop_top_boson && sp.boson_level(c) == sp.nb - 1) continue;
      if (drop_top_fermion && sp.fermion_level(c) == sp.mf - 1) continue;
      mx = std::max(mx, std::abs(v));
    }
  }
  return mx;
}

struct AlgebraReport {
  double boson_ccr = 0.0;       // a adag - q adag a - q^{-N}, interior
  double fermion_ccr = 0.0;     // F Fdag + q Fdag F - 1, interior
  double number_comms = 0.0;    // [N,a]+a, [N,adag]-adag, [M,F]+F, [M,Fdag]-Fdag
  double cross_comms = 0.0;     // all boson-fermion commutators
  double boundary_boson = 0.0;  // documented cutoff artifact on the top row

  double max_interior() const {
    return std::max(std::max(boson_ccr, fermion_ccr), std::max(number_comms, cross_comms));
  }
};

/// Numeric verification of the defining relations on the truncated space.
inline AlgebraReport verify_algebra(const SuperFockSpace& sp) {
  if (sp.nb < 2 || sp.mf < 2)
    throw std::domain_error("verify_algebra: need dimension >= 2 in each sector");
  const auto a = operator_matrix(Gen::a, sp);
  const auto ad = operator_matrix(Gen::adag, sp);
  const auto f = operator_matrix(Gen::F, sp);
  const auto fd = operator_matrix(Gen::Fdag, sp);
  const auto nn = operator_matrix(Gen::N, sp);
  const auto mm = operator_matrix(Gen::M, sp);
  const auto qmn = operator_matrix(Gen::qpowN, sp, -1.0);
  const std::complex<double> q(sp.q);
  OperatorMatrix one(sp.dim(), sp.dim());
  for (int i = 0; i < sp.dim(); ++i) one.set(i, i, 1.0);

  AlgebraReport rep;
  auto r1 = a * ad - q * (ad * a) - qmn;
  rep.boson_ccr = max_abs_interior(r1, sp, true, false);
  // boundary artifact on the top boson row: q[nb-1]_B + q^{-(nb-1)}
  rep.boundary_boson = max_abs(r1) ;

  auto r2 = f * fd + q * (fd * f) - one;
  rep.fermion_ccr = max_abs_interior(r2, sp, false, true);

  double nc = 0.0;
  nc = std::max(nc, max_abs_interior(nn * a - a * nn + a, sp, true, false));
  nc = std::max(nc, max_abs_interior(nn * ad - ad * nn - ad, sp, true, false));
  nc = std::max(nc, max_abs_interior(mm * f - f * mm + f, sp, false, true));
  nc = std::max(nc, max_abs_interior(mm * fd - fd * mm - fd, sp, false, true));
  rep.number_comms = nc;

  double cc = 0.0;
  const OperatorMatrix* bos[] = {&a, &ad, &nn};
  const OperatorMatrix* fer[] = {&f, &fd, &mm};
  for (auto* b : bos)
    for (auto* x : fer) cc = std::max(cc, max_abs((*b) * (*x) - (*x) * (*b)));
  rep.cross_comms = cc;
  return rep;
}

/// Residual of the iterated relations
///   a (adag)^n - q^n (adag)^n a - [n]_B (adag)^{n-1} q^{-N}   (boson)
///   F (Fdag)^n - (-q)^n (Fdag)^n F - [n]_F (Fdag)^{n-1}       (fermion)
/// on interior rows.
inline double iterate_identity(Mode kind, int n, const SuperFockSpace& sp) {
  int cutoff = kind == Mode::boson ? sp.nb : sp.mf;
  if (n + 1 >= cutoff)
    throw std::domain_error("iterate_identity: n + 1 must be below the sector cutoff");
  const Gen lower = kind == Mode::boson ? Gen::a : Gen::F;
  const Gen raise = kind == Mode::boson ? Gen::adag : Gen::Fdag;
  const auto x = operator_matrix(lower, sp);
  const auto xd = operator_matrix(raise, sp);
  OperatorMatrix xdn = x;  // placeholder, reassigned below
  {
    OperatorMatrix acc(sp.dim(), sp.dim());
    for (int i = 0; i < sp.dim(); ++i) acc.set(i, i, 1.0);
    for (int k = 0; k < n; ++k) acc = acc * xd;
    xdn = acc;
  }
  OperatorMatrix xdn1(sp.dim(), sp.dim());
  {
    OperatorMatrix acc(sp.dim(), sp.dim());
    for (int i = 0; i < sp.dim(); ++i) acc.set(i, i, 1.0);
    for (int k = 0; k + 1 < n; ++k) acc = acc * xd;
    xdn1 = acc;
  }
  std::complex<double> lambda_n = kind == Mode::boson ? std::pow(sp.q, n) : std::pow(-sp.q, n);
  std::complex<double> qn(q_int(kind, n, sp.q));
  OperatorMatrix d(sp.dim(), sp.dim());
  if (kind == Mode::boson)
    d = operator_matrix(Gen::qpowN, sp, -1.0);
  else
    for (int i = 0; i < sp.dim(); ++i) d.set(i, i, 1.0);
  auto residual = x * xdn - lambda_n * (xdn * x) - qn * (xdn1 * d);
  return max_abs_interior(residual, sp, kind == Mode::boson, kind == Mode::fermion);
}

/// Coordinate-triplet text export (row, col, value), deterministic order.
inline void write_triplets(std::ostream& os, const OperatorMatrix& m) {
  os << std::setprecision(17);
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& [c, v] : m.row(i)) {
      os << i << " " << c << " " << v.real();
      if (v.imag() != 0.0) os << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
      os << "\n";
    }
}

}  // namespace qjc

#endif  // QJC_SUPERFOCK_HPP
