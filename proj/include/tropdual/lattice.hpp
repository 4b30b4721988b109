#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "tropdual/rational.hpp"

namespace tropdual {

using IVec = std::vector<Int>;
using QVec = std::vector<Rational>;
using IMat = std::vector<IVec>;
using QMat = std::vector<QVec>;

inline QVec to_q(const IVec& v) {
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

template <typename V>
V vec_add(const V& a, const V& b) {
  V r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <typename V>
V vec_sub(const V& a, const V& b) {
  V r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <typename V, typename S>
V vec_scale(const S& c, const V& v) {
  V r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

template <typename V>
V vec_neg(const V& v) {
  V r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

template <typename V>
bool is_zero_vec(const V& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& x) { return x == 0; });
}

inline Int dot(const IVec& a, const IVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const QVec& a, const IVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
  return s;
}

inline Rational dot(const IVec& a, const QVec& b) { return dot(b, a); }

inline Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int gcd_vec(const IVec& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

// v / gcd(|v_i|), sign preserved.
inline IVec primitive(const IVec& v) {
  Int g = gcd_vec(v);
  if (g == 0) throw MathError("no primitive form of the zero vector");
  IVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

// Primitive integer vector with the direction of a rational vector.
inline IVec primitive_direction(const QVec& v) {
  Int lcm = 1;
  for (const Rational& x : v) lcm = boost::multiprecision::lcm(lcm, denominator(x));
  IVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    w[i] = numerator(v[i]) * (lcm / denominator(v[i]));
  return primitive(w);
}

inline bool parallel(const IVec& a, const IVec& b) {
  // sign-insensitive: a || b iff rank{a,b} <= 1; both assumed nonzero by callers
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

// Exact determinant, fraction-free Bareiss elimination.
inline Int det_int(IMat m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw MathError("det_int: matrix not square");
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline int rank_q(QMat m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    for (std::size_t i = row + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[row][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    ++row;
    ++rank;
  }
  return rank;
}

inline int rank_i(const IMat& m) {
  QMat q(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) q[i] = to_q(m[i]);
  return rank_q(q);
}

// dim(span U cap span V) = rank U + rank V - rank(U u V)
inline int subspace_intersection_dim(const IMat& u, const IMat& v) {
  for (const auto& a : u)
    for (const auto& b : v)
      if (a.size() != b.size()) throw MathError("mismatched ambient dimensions");
  IMat both = u;
  both.insert(both.end(), v.begin(), v.end());
  return rank_i(u) + rank_i(v) - rank_i(both);
}

// <p - facet_point, inward_normal>; callers enforce sidedness.
inline Rational lattice_distance(const QVec& p, const QVec& facet_point, const IVec& inward_normal) {
  return dot(vec_sub(p, facet_point), inward_normal);
}

namespace detail {

// Row Hermite normal form of a; if u is non-null it accumulates the unimodular
// row transform (u * original = result).
inline void hnf_rows(IMat& a, IMat* u) {
  const std::size_t m = a.size();
  if (u) {
    u->assign(m, IVec(m, 0));
    for (std::size_t i = 0; i < m; ++i) (*u)[i][i] = 1;
  }
  if (m == 0) return;
  const std::size_t n = a[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    // clear entries below a[row][col] with gcd row combinations
    for (std::size_t i = row + 1; i < m; ++i) {
      while (a[i][col] != 0) {
        if (a[row][col] == 0) {
          std::swap(a[row], a[i]);
          if (u) std::swap((*u)[row], (*u)[i]);
          break;
        }
        Int q = a[i][col] / a[row][col];
        if (q != 0) {
          for (std::size_t j = 0; j < n; ++j) a[i][j] -= q * a[row][j];
          if (u)
            for (std::size_t j = 0; j < m; ++j) (*u)[i][j] -= q * (*u)[row][j];
        }
        if (a[i][col] != 0) {
          std::swap(a[row], a[i]);
          if (u) std::swap((*u)[row], (*u)[i]);
        }
      }
    }
    if (a[row][col] == 0) continue;
    if (a[row][col] < 0) {
      a[row] = vec_neg(a[row]);
      if (u) (*u)[row] = vec_neg((*u)[row]);
    }
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < row; ++i) {
      Int q = a[i][col] / a[row][col];
      if (a[i][col] - q * a[row][col] < 0) q -= 1;
      if (q != 0) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] -= q * a[row][j];
        if (u)
          for (std::size_t j = 0; j < m; ++j) (*u)[i][j] -= q * (*u)[row][j];
      }
    }
    ++row;
  }
}

}  // namespace detail

// Canonical HNF basis of the lattice generated by the rows (zero rows dropped).
inline IMat hnf_basis(IMat rows) {
  detail::hnf_rows(rows, nullptr);
  IMat out;
  for (auto& r : rows)
    if (!is_zero_vec(r)) out.push_back(std::move(r));
  return out;
}

// Basis of {x in Z^ambient : <x, row> = 0 for all rows}.
inline IMat integer_kernel(const IMat& rows, std::size_t ambient) {
  IMat m(ambient, IVec(rows.size()));
  for (std::size_t i = 0; i < ambient; ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m[i][j] = rows[j][i];
  IMat u;
  detail::hnf_rows(m, &u);
  IMat ker;
  for (std::size_t i = 0; i < ambient; ++i)
    if (is_zero_vec(m[i])) ker.push_back(u[i]);
  return hnf_basis(std::move(ker));
}

// Canonical basis of span_Q(rows) cap Z^ambient.
inline IMat saturation(const IMat& rows, std::size_t ambient) {
  return integer_kernel(integer_kernel(rows, ambient), ambient);
}

// One solution of A x = b with free variables set to 0, or nullopt.
inline std::optional<QVec> solve_particular(QMat a, QVec b) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t piv = row;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[row], a[piv]);
    std::swap(b[row], b[piv]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[row][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (b[i] != 0) return std::nullopt;
  QVec x(n, Rational(0));
  for (std::size_t r = 0; r < pivot_col.size(); ++r)
    x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
  return x;
}

// Rational kernel basis of {x : A x = 0}.
inline QMat kernel_q(QMat a, std::size_t n) {
  const std::size_t m = a.size();
  std::vector<int> pivot_of_col(n, -1);
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t piv = row;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[row], a[piv]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[row][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_of_col[c] = static_cast<int>(row);
    ++row;
  }
  QMat ker;
  for (std::size_t c = 0; c < n; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    QVec v(n, Rational(0));
    v[c] = 1;
    for (std::size_t d = 0; d < n; ++d)
      if (pivot_of_col[d] >= 0) {
        int r = pivot_of_col[d];
        v[d] = -a[r][c] / a[r][d];
      }
    ker.push_back(std::move(v));
  }
  return ker;
}

// Standard directions of the p0 = 0 section of R^{n+1}: e_i the unit vectors,
// e_0 = -(e_1 + ... + e_n).
inline IVec section_dir(int i, int n) {
  IVec v(n, 0);
  if (i == 0)
    std::fill(v.begin(), v.end(), Int(-1));
  else
    v[i - 1] = 1;
  return v;
}

inline IVec rot90(const IVec& v) { return IVec{-v[1], v[0]}; }

template <typename V>
int lex_compare(const V& a, const V& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

}  // namespace tropdual
