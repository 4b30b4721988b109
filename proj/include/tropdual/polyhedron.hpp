#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "tropdual/lattice.hpp"

namespace tropdual {

// Constraint rows act on the homogenized point (1, x): row a means
// a[0] + a[1]x_1 + ... + a[dim]x_dim >= 0 (or = 0 for eq rows).
struct HRep {
  int dim = 0;
  IMat ineq;
  IMat eq;
};

namespace detail {

// Double description of a cone in R^D, constraints added incrementally.
// Lineality is carried explicitly; rays are extreme modulo lineality.
struct ConeDD {
  int D;
  IMat lin;
  IMat rays;
  std::vector<std::vector<char>> tight;  // per ray, per processed inequality
  std::size_t n_proc = 0;

  explicit ConeDD(int dim) : D(dim) {
    lin.resize(D);
    for (int i = 0; i < D; ++i) {
      lin[i] = IVec(D, 0);
      lin[i][i] = 1;
    }
  }

  void add_inequality(const IVec& a) {
    std::size_t pivot = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        pivot = i;
        break;
      }
    if (pivot < lin.size()) {
      IVec l0 = lin[pivot];
      Int val = dot(a, l0);
      if (val < 0) {
        l0 = vec_neg(l0);
        val = -val;
      }
      IMat new_lin;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == pivot) continue;
        Int s = dot(a, lin[i]);
        new_lin.push_back(s == 0 ? lin[i] : primitive(vec_sub(vec_scale(val, lin[i]), vec_scale(s, l0))));
      }
      lin = std::move(new_lin);
      for (auto& r : rays) {
        Int s = dot(a, r);
        if (s != 0) r = primitive(vec_sub(vec_scale(val, r), vec_scale(s, l0)));
      }
      // all surviving rays are tight on the new constraint; l0 is not,
      // but was tight on every earlier constraint (it lay in the lineality)
      for (auto& t : tight) t.push_back(1);
      rays.push_back(l0);
      tight.emplace_back(std::vector<char>(n_proc, 1));
      tight.back().push_back(0);
      ++n_proc;
      return;
    }

    std::vector<Int> s(rays.size());
    bool has_neg = false;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      s[i] = dot(a, rays[i]);
      if (s[i] < 0) has_neg = true;
    }
    if (!has_neg) {
      for (std::size_t i = 0; i < rays.size(); ++i) tight[i].push_back(s[i] == 0);
      ++n_proc;
      return;
    }

    IMat new_rays;
    std::vector<std::vector<char>> new_tight;
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (s[p] <= 0) continue;
      for (std::size_t m = 0; m < rays.size(); ++m) {
        if (s[m] >= 0) continue;
        std::vector<char> z(tight[p].size());
        for (std::size_t k = 0; k < z.size(); ++k) z[k] = tight[p][k] & tight[m][k];
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == m) continue;
          bool contains = true;
          for (std::size_t k = 0; k < z.size(); ++k)
            if (z[k] && !tight[r][k]) {
              contains = false;
              break;
            }
          if (contains) adjacent = false;
        }
        if (!adjacent) continue;
        IVec w = primitive(vec_sub(vec_scale(s[p], rays[m]), vec_scale(s[m], rays[p])));
        bool dup = false;
        for (const auto& nr : new_rays)
          if (nr == w) {
            dup = true;
            break;
          }
        if (dup) continue;
        z.push_back(1);
        new_rays.push_back(std::move(w));
        new_tight.push_back(std::move(z));
      }
    }
    IMat kept;
    std::vector<std::vector<char>> kept_tight;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (s[i] < 0) continue;
      kept.push_back(std::move(rays[i]));
      tight[i].push_back(s[i] == 0);
      kept_tight.push_back(std::move(tight[i]));
    }
    kept.insert(kept.end(), std::make_move_iterator(new_rays.begin()), std::make_move_iterator(new_rays.end()));
    kept_tight.insert(kept_tight.end(), std::make_move_iterator(new_tight.begin()),
                      std::make_move_iterator(new_tight.end()));
    rays = std::move(kept);
    tight = std::move(kept_tight);
    ++n_proc;
  }

  void add_equality(const IVec& a) {
    add_inequality(a);
    add_inequality(vec_neg(a));
  }
};

inline IVec homogenize_point(const QVec& v) {
  Int lcm = 1;
  for (const Rational& x : v) lcm = boost::multiprecision::lcm(lcm, denominator(x));
  IVec g(v.size() + 1);
  g[0] = lcm;
  for (std::size_t i = 0; i < v.size(); ++i) g[i + 1] = numerator(v[i]) * (lcm / denominator(v[i]));
  return g;
}

inline IVec prepend_zero(const IVec& v) {
  IVec g(v.size() + 1);
  g[0] = 0;
  std::copy(v.begin(), v.end(), g.begin() + 1);
  return g;
}

}  // namespace detail

struct Polyhedron {
  int ambient = 0;
  QMat vertices;   // sorted, reduced modulo lineality
  IMat rays;       // primitive, sorted, reduced modulo lineality
  IMat lineality;  // HNF basis of the saturated lineality lattice

  bool empty() const { return vertices.empty() && rays.empty() && lineality.empty(); }

  int dim() const {
    if (empty()) return -1;
    QMat dirs;
    for (std::size_t i = 1; i < vertices.size(); ++i) dirs.push_back(vec_sub(vertices[i], vertices[0]));
    for (const auto& r : rays) dirs.push_back(to_q(r));
    for (const auto& l : lineality) dirs.push_back(to_q(l));
    return rank_q(dirs);
  }

  bool operator==(const Polyhedron&) const = default;
};

namespace detail {

// Zero out the pivot coordinates of v against the HNF lineality basis.
template <typename V>
QVec reduce_mod_lineality(const V& v, const IMat& lin) {
  QVec x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = v[i];
  for (const auto& b : lin) {
    std::size_t piv = 0;
    while (piv < b.size() && b[piv] == 0) ++piv;
    if (piv == b.size()) continue;
    Rational f = x[piv] / Rational(b[piv]);
    if (f != 0)
      for (std::size_t j = 0; j < b.size(); ++j) x[j] -= f * Rational(b[j]);
  }
  return x;
}

inline Polyhedron finalize(int ambient, QMat verts, IMat rays, IMat lin) {
  Polyhedron p;
  p.ambient = ambient;
  p.lineality = hnf_basis(saturation(lin, ambient));
  for (auto& v : verts) p.vertices.push_back(reduce_mod_lineality(v, p.lineality));
  std::sort(p.vertices.begin(), p.vertices.end(),
            [](const QVec& a, const QVec& b) { return lex_compare(a, b) < 0; });
  p.vertices.erase(std::unique(p.vertices.begin(), p.vertices.end()), p.vertices.end());
  for (auto& r : rays) {
    QVec red = reduce_mod_lineality(r, p.lineality);
    if (is_zero_vec(red)) throw MathError("ray inside lineality space");
    p.rays.push_back(primitive_direction(red));
  }
  std::sort(p.rays.begin(), p.rays.end(), [](const IVec& a, const IVec& b) { return lex_compare(a, b) < 0; });
  p.rays.erase(std::unique(p.rays.begin(), p.rays.end()), p.rays.end());
  return p;
}

}  // namespace detail

// Minimal V-representation from constraint rows; canonical output.
inline Polyhedron from_hrep(const HRep& h) {
  detail::ConeDD dd(h.dim + 1);
  IVec y0(h.dim + 1, 0);
  y0[0] = 1;
  dd.add_inequality(y0);
  for (const auto& e : h.eq) dd.add_equality(e);
  for (const auto& i : h.ineq) dd.add_inequality(i);

  QMat verts;
  IMat rays;
  bool nonempty = false;
  for (const auto& r : dd.rays)
    if (r[0] > 0) nonempty = true;
  if (!nonempty) return Polyhedron{h.dim, {}, {}, {}};
  for (const auto& r : dd.rays) {
    if (r[0] > 0) {
      QVec v(h.dim);
      for (int j = 0; j < h.dim; ++j) v[j] = Rational(r[j + 1], r[0]);
      verts.push_back(std::move(v));
    } else {
      rays.push_back(IVec(r.begin() + 1, r.end()));
    }
  }
  IMat lin;
  for (const auto& l : dd.lin) {
    if (l[0] != 0) throw MathError("homogenization produced vertical lineality");
    lin.push_back(IVec(l.begin() + 1, l.end()));
  }
  return detail::finalize(h.dim, std::move(verts), std::move(rays), std::move(lin));
}

// Facet/equation description from generators (empty input not allowed).
inline HRep to_hrep_from_generators(int ambient, const QMat& verts, const IMat& rays, const IMat& lin) {
  detail::ConeDD dd(ambient + 1);
  for (const auto& v : verts) dd.add_inequality(detail::homogenize_point(v));
  for (const auto& r : rays) dd.add_inequality(detail::prepend_zero(r));
  for (const auto& l : lin) dd.add_equality(detail::prepend_zero(l));
  HRep h;
  h.dim = ambient;
  for (const auto& a : dd.rays) {
    if (is_zero_vec(IVec(a.begin() + 1, a.end()))) continue;  // trivial 1 >= 0
    h.ineq.push_back(a);
  }
  for (const auto& a : dd.lin) {
    if (is_zero_vec(IVec(a.begin() + 1, a.end()))) continue;
    h.eq.push_back(a);
  }
  std::sort(h.ineq.begin(), h.ineq.end(), [](const IVec& x, const IVec& y) { return lex_compare(x, y) < 0; });
  std::sort(h.eq.begin(), h.eq.end(), [](const IVec& x, const IVec& y) { return lex_compare(x, y) < 0; });
  return h;
}

inline HRep to_hrep(const Polyhedron& p) {
  if (p.empty()) throw MathError("empty polyhedron has no H-representation");
  return to_hrep_from_generators(p.ambient, p.vertices, p.rays, p.lineality);
}

// Canonical polyhedron from arbitrary generators.
inline Polyhedron make_polyhedron(int ambient, const QMat& verts, const IMat& rays = {}, const IMat& lin = {}) {
  if (verts.empty() && rays.empty() && lin.empty()) return Polyhedron{ambient, {}, {}, {}};
  if (verts.empty()) throw MathError("generators without a vertex do not describe a polyhedron here");
  return from_hrep(to_hrep_from_generators(ambient, verts, rays, lin));
}

inline Polyhedron make_point(const QVec& v) {
  Polyhedron p;
  p.ambient = static_cast<int>(v.size());
  p.vertices = {v};
  return p;
}

inline QVec q_point(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline bool contains_point(const HRep& h, const QVec& x) {
  for (const auto& a : h.ineq) {
    Rational s = Rational(a[0]);
    for (int j = 0; j < h.dim; ++j) s += Rational(a[j + 1]) * x[j];
    if (s < 0) return false;
  }
  for (const auto& a : h.eq) {
    Rational s = Rational(a[0]);
    for (int j = 0; j < h.dim; ++j) s += Rational(a[j + 1]) * x[j];
    if (s != 0) return false;
  }
  return true;
}

inline bool contains_point(const Polyhedron& p, const QVec& x) {
  if (p.empty()) return false;
  return contains_point(to_hrep(p), x);
}

// Closed convex containment: every generator of q satisfies p's constraints.
inline bool contains_polyhedron(const Polyhedron& p, const Polyhedron& q) {
  if (q.empty()) return true;
  if (p.empty()) return false;
  HRep h = to_hrep(p);
  for (const auto& v : q.vertices)
    if (!contains_point(h, v)) return false;
  auto dir_ok = [&](const IVec& d, bool both_signs) {
    for (const auto& a : h.ineq) {
      Int s = dot(IVec(a.begin() + 1, a.end()), d);
      if (s < 0 || (both_signs && s != 0)) return false;
    }
    for (const auto& a : h.eq)
      if (dot(IVec(a.begin() + 1, a.end()), d) != 0) return false;
    return true;
  };
  for (const auto& r : q.rays)
    if (!dir_ok(r, false)) return false;
  for (const auto& l : q.lineality)
    if (!dir_ok(l, true)) return false;
  return true;
}

inline Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  if (p.empty() || q.empty()) return Polyhedron{p.ambient, {}, {}, {}};
  HRep a = to_hrep(p), b = to_hrep(q);
  a.ineq.insert(a.ineq.end(), b.ineq.begin(), b.ineq.end());
  a.eq.insert(a.eq.end(), b.eq.begin(), b.eq.end());
  return from_hrep(a);
}

// - r: a[0] + <a[1..], x> >= 0 appended as an inequality.
inline Polyhedron cut_with(const Polyhedron& p, const IVec& row, bool as_equality = false) {
  if (p.empty()) return p;
  HRep h = to_hrep(p);
  if (as_equality)
    h.eq.push_back(row);
  else
    h.ineq.push_back(row);
  return from_hrep(h);
}

inline Polyhedron negate(const Polyhedron& p) {
  QMat verts;
  for (const auto& v : p.vertices) verts.push_back(vec_neg(v));
  IMat rays;
  for (const auto& r : p.rays) rays.push_back(vec_neg(r));
  if (p.empty()) return p;
  return make_polyhedron(p.ambient, verts, rays, p.lineality);
}

inline Polyhedron translate(const Polyhedron& p, const QVec& t) {
  if (p.empty()) return p;
  QMat verts;
  for (const auto& v : p.vertices) verts.push_back(vec_add(v, t));
  return make_polyhedron(p.ambient, verts, p.rays, p.lineality);
}

// A point in the relative interior: vertex average plus the ray sum.
inline QVec relint_point(const Polyhedron& p) {
  if (p.empty()) throw MathError("relative interior of the empty set");
  QVec z(p.ambient, Rational(0));
  for (const auto& v : p.vertices) z = vec_add(z, v);
  Rational inv(1, static_cast<long>(p.vertices.size()));
  for (auto& c : z) c *= inv;
  for (const auto& r : p.rays) z = vec_add(z, to_q(r));
  return z;
}

inline bool recession_contains(const HRep& h, const IVec& d) {
  for (const auto& a : h.ineq)
    if (dot(IVec(a.begin() + 1, a.end()), d) < 0) return false;
  for (const auto& a : h.eq)
    if (dot(IVec(a.begin() + 1, a.end()), d) != 0) return false;
  return true;
}

inline bool recession_contains(const Polyhedron& p, const IVec& d) {
  if (p.empty()) return false;
  return recession_contains(to_hrep(p), d);
}

inline Polyhedron recession_cone(const Polyhedron& p) {
  if (p.empty()) return p;
  HRep h = to_hrep(p);
  for (auto& a : h.ineq) a[0] = 0;
  for (auto& a : h.eq) a[0] = 0;
  return from_hrep(h);
}

// Direction space of the affine hull.
inline IMat direction_space(const Polyhedron& p) {
  IMat dirs;
  for (std::size_t i = 1; i < p.vertices.size(); ++i)
    dirs.push_back(primitive_direction(vec_sub(p.vertices[i], p.vertices[0])));
  for (const auto& r : p.rays) dirs.push_back(r);
  for (const auto& l : p.lineality) dirs.push_back(l);
  return dirs;
}

namespace detail {

inline bool covered_rec(const Polyhedron& target, const std::vector<Polyhedron>& pieces,
                        std::vector<int> active) {
  if (target.empty()) return true;
  std::vector<int> still;
  for (int i : active) {
    if (contains_polyhedron(pieces[i], target)) return true;
    if (!intersect(pieces[i], target).empty()) still.push_back(i);
  }
  if (still.empty()) return false;
  for (int i : still) {
    HRep h = to_hrep(pieces[i]);
    IMat rows = h.ineq;
    for (const auto& e : h.eq) {
      rows.push_back(e);
      rows.push_back(vec_neg(e));
    }
    for (const auto& row : rows) {
      Polyhedron plus = cut_with(target, row);
      Polyhedron minus = cut_with(target, vec_neg(row));
      if (plus.empty() || minus.empty()) continue;
      if (plus == target || minus == target) continue;  // no proper split
      return covered_rec(plus, pieces, still) && covered_rec(minus, pieces, still);
    }
  }
  // No constraint of any intersecting piece splits the target properly, and no
  // piece contains it: its relative interior is uncovered.
  return false;
}

}  // namespace detail

// Is target contained in the union of the pieces?
inline bool is_covered_by(const Polyhedron& target, const std::vector<Polyhedron>& pieces) {
  std::vector<int> idx(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) idx[i] = static_cast<int>(i);
  return detail::covered_rec(target, pieces, idx);
}

// All nonempty proper faces, canonical, every dimension.
inline std::vector<Polyhedron> all_proper_faces(const Polyhedron& p) {
  std::vector<Polyhedron> out;
  std::vector<Polyhedron> stack{p};
  while (!stack.empty()) {
    Polyhedron q = stack.back();
    stack.pop_back();
    HRep h = to_hrep(q);
    for (const auto& row : h.ineq) {
      Polyhedron f = cut_with(q, row, true);
      if (f.empty() || f == q) continue;
      if (std::find(out.begin(), out.end(), f) == out.end()) {
        out.push_back(f);
        stack.push_back(f);
      }
    }
  }
  return out;
}

inline Polyhedron convex_join(const Polyhedron& a, const Polyhedron& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  QMat verts = a.vertices;
  verts.insert(verts.end(), b.vertices.begin(), b.vertices.end());
  IMat rays = a.rays;
  rays.insert(rays.end(), b.rays.begin(), b.rays.end());
  IMat lin = a.lineality;
  lin.insert(lin.end(), b.lineality.begin(), b.lineality.end());
  return make_polyhedron(a.ambient, verts, rays, lin);
}

// Deterministic total order on canonical polyhedra: dimension, then generators.
inline bool poly_less(const Polyhedron& a, const Polyhedron& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  auto cmp = [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (int c = lex_compare(x[i], y[i])) return c;
    return 0;
  };
  if (int c = cmp(a.vertices, b.vertices)) return c < 0;
  if (int c = cmp(a.rays, b.rays)) return c < 0;
  return cmp(a.lineality, b.lineality) < 0;
}

inline bool same_support(const std::vector<Polyhedron>& a, const std::vector<Polyhedron>& b) {
  for (const auto& p : a)
    if (!is_covered_by(p, b)) return false;
  for (const auto& q : b)
    if (!is_covered_by(q, a)) return false;
  return true;
}

// All nonempty faces of conv(points) as sorted index subsets (including the
// full set). Points need not be in convex position.
inline std::vector<std::vector<int>> polytope_faces(const QMat& points) {
  std::vector<std::vector<int>> out;
  std::vector<int> all(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) all[i] = static_cast<int>(i);
  if (points.empty()) return out;

  std::vector<std::vector<int>> stack{all};
  while (!stack.empty()) {
    std::vector<int> face = stack.back();
    stack.pop_back();
    if (std::find(out.begin(), out.end(), face) != out.end()) continue;
    out.push_back(face);
    if (face.size() == 1) continue;
    QMat pts;
    for (int i : face) pts.push_back(points[i]);
    HRep h = to_hrep_from_generators(static_cast<int>(points[0].size()), pts, {}, {});
    for (const auto& a : h.ineq) {
      std::vector<int> sub;
      for (int i : face) {
        Rational s = Rational(a[0]);
        for (std::size_t j = 0; j + 1 < a.size(); ++j) s += Rational(a[j + 1]) * points[i][j];
        if (s == 0) sub.push_back(i);
      }
      if (!sub.empty() && sub.size() < face.size()) stack.push_back(sub);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tropdual
