#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <tropdual/polyhedron.hpp>
#include <tropdual/trop.hpp>

namespace tropdual {

struct WeightedCell {
  Polyhedron cell;
  Int multiplicity = 1;
};

struct WeightedComplex {
  int n = 2;
  std::vector<WeightedCell> cells;
};

struct DecoratedComplex {
  WeightedComplex base;
  QMat marks;
};

namespace detail {

// Exact CCW order of nonzero integer directions, starting at the positive x-axis.
inline bool angle_less(const IVec& a, const IVec& b) {
  auto half = [](const IVec& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; };
  if (half(a) != half(b)) return half(a) < half(b);
  return a[0] * b[1] - a[1] * b[0] > 0;
}

inline IVec cell_direction(const Polyhedron& c) {
  if (!c.lineality.empty()) return c.lineality[0];
  if (!c.rays.empty()) return c.rays[0];
  return primitive_direction(vec_sub(c.vertices[1], c.vertices[0]));
}

// A 1-dimensional polyhedron without lineality as base + t*dir, t in [0,len] or [0,inf).
struct Piece {
  QVec base;
  IVec dir;
  Rational len;
  bool bounded = false;
};

inline Rational param_along(const Piece& p, const QVec& x) {
  for (std::size_t k = 0; k < p.dir.size(); ++k)
    if (p.dir[k] != 0) return (x[k] - p.base[k]) / Rational(p.dir[k]);
  throw MathError("zero direction");
}

inline Piece parametrize(const Polyhedron& c) {
  Piece p;
  p.base = c.vertices[0];
  if (c.vertices.size() == 2) {
    p.dir = primitive_direction(vec_sub(c.vertices[1], c.vertices[0]));
    p.len = param_along(p, c.vertices[1]);
    p.bounded = true;
  } else {
    p.dir = c.rays[0];
  }
  return p;
}

inline QVec point_at(const Piece& p, const Rational& t) {
  return vec_add(p.base, vec_scale(t, to_q(p.dir)));
}

// Outgoing directions of a 1-cell at a point of it; both signs for interior points.
inline std::vector<IVec> cell_germs_at(const Polyhedron& c, const QVec& v) {
  if (c.dim() != 1 || !contains_point(c, v)) return {};
  if (!c.lineality.empty()) return {c.lineality[0], vec_neg(c.lineality[0])};
  Piece p = parametrize(c);
  Rational t = param_along(p, v);
  if (t == 0) return {p.dir};
  if (p.bounded && t == p.len) return {vec_neg(p.dir)};
  return {p.dir, vec_neg(p.dir)};
}

// Joins two collinear equal-multiplicity pieces sharing an endpoint into one cell.
inline bool try_join(const WeightedCell& a, const WeightedCell& b, WeightedCell& merged) {
  if (a.multiplicity != b.multiplicity) return false;
  const Polyhedron& A = a.cell;
  const Polyhedron& B = b.cell;
  if (A.dim() != 1 || B.dim() != 1 || !A.lineality.empty() || !B.lineality.empty()) return false;
  Piece pa = parametrize(A), pb = parametrize(B);
  if (!parallel(pa.dir, pb.dir)) return false;
  merged.multiplicity = a.multiplicity;
  if (pa.bounded && pb.bounded) {
    // segments [p,q] + [q,r] with q strictly between p and r
    for (const QVec& qa : A.vertices)
      for (const QVec& qb : B.vertices)
        if (qa == qb) {
          QVec other_a = (qa == A.vertices[0]) ? A.vertices[1] : A.vertices[0];
          QVec other_b = (qb == B.vertices[0]) ? B.vertices[1] : B.vertices[0];
          Rational sa = param_along(pa, other_a) - param_along(pa, qa);
          Rational sb = param_along(pa, other_b) - param_along(pa, qa);
          if ((sa < 0) != (sb < 0)) {
            merged.cell = make_polyhedron(static_cast<int>(qa.size()), {other_a, other_b});
            return true;
          }
        }
    return false;
  }
  if (pa.bounded != pb.bounded) {
    const Piece& seg = pa.bounded ? pa : pb;
    const Piece& ray = pa.bounded ? pb : pa;
    const Polyhedron& S = pa.bounded ? A : B;
    // ray must start at a segment endpoint and point away from the segment
    for (const QVec& e : S.vertices)
      if (e == ray.base) {
        QVec other = (e == S.vertices[0]) ? S.vertices[1] : S.vertices[0];
        Rational s = param_along(ray, other);
        if (s < 0) {
          merged.cell = make_polyhedron(static_cast<int>(e.size()), {other}, {ray.dir});
          return true;
        }
      }
    return false;
  }
  // two opposite rays with a common base form a line
  if (pa.base == pb.base && pa.dir == vec_neg(pb.dir)) {
    merged.cell = make_polyhedron(static_cast<int>(pa.base.size()), {pa.base}, {}, {pa.dir});
    return true;
  }
  return false;
}

// Common refinement: split at mutual intersection endpoints, sum multiplicities on
// coincident pieces, then dissolve collinear equal-multiplicity junctions so that
// maximal straight runs stay single cells.
inline std::vector<WeightedCell> refine_cells(int n, const std::vector<WeightedCell>& raw) {
  std::vector<WeightedCell> out;
  auto accumulate = [&](const Polyhedron& c, const Int& m) {
    for (auto& o : out)
      if (o.cell == c) {
        o.multiplicity += m;
        return;
      }
    out.push_back({c, m});
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw[i].cell.lineality.empty()) {
      accumulate(raw[i].cell, raw[i].multiplicity);
      continue;
    }
    Piece par = parametrize(raw[i].cell);
    std::vector<Rational> cuts;
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (j == i) continue;
      Polyhedron x = intersect(raw[i].cell, raw[j].cell);
      if (x.empty()) continue;
      for (const QVec& v : x.vertices) {
        Rational t = param_along(par, v);
        if (t > 0 && (!par.bounded || t < par.len)) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    Rational prev(0);
    for (const Rational& t : cuts) {
      accumulate(make_polyhedron(n, {point_at(par, prev), point_at(par, t)}), raw[i].multiplicity);
      prev = t;
    }
    if (par.bounded)
      accumulate(make_polyhedron(n, {point_at(par, prev), point_at(par, par.len)}), raw[i].multiplicity);
    else
      accumulate(make_polyhedron(n, {point_at(par, prev)}, {par.dir}), raw[i].multiplicity);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < out.size() && !changed; ++j) {
        WeightedCell merged;
        if (try_join(out[i], out[j], merged)) {
          out[i] = merged;
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
  }
  return out;
}

}  // namespace detail

// Junction candidates: endpoints of bounded/ray cells.
inline QMat complex_vertices(const WeightedComplex& wc) {
  QMat out;
  for (const auto& c : wc.cells) {
    if (!c.cell.lineality.empty()) continue;
    for (const QVec& v : c.cell.vertices)
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

// Total multiplicity of unbounded directions; a line counts toward both of its ends.
inline std::map<IVec, Int> ray_multiset(const WeightedComplex& wc) {
  std::map<IVec, Int> out;
  for (const auto& c : wc.cells) {
    if (c.cell.dim() != 1) continue;
    if (!c.cell.lineality.empty()) {
      out[c.cell.lineality[0]] += c.multiplicity;
      out[vec_neg(c.cell.lineality[0])] += c.multiplicity;
    } else if (!c.cell.rays.empty()) {
      out[c.cell.rays[0]] += c.multiplicity;
    }
  }
  return out;
}

inline bool check_balancing(const WeightedComplex& wc) {
  if (wc.n != 2) throw MathError("balancing check requires a plane complex");
  for (const QVec& v : complex_vertices(wc)) {
    IVec sum{0, 0};
    for (const auto& c : wc.cells)
      for (const IVec& g : detail::cell_germs_at(c.cell, v))
        sum = vec_add(sum, vec_scale(c.multiplicity, g));
    if (!is_zero_vec(sum)) return false;
  }
  return true;
}

// Theorem assembly: -E for non-standard edges; -p - R>=0 e_i for vertices missing an
// e_i-parallel edge; doubled rays -q - R>=0 e_i for e_i-parallel edges bounded toward
// -e_i with endpoint q on that side.
inline WeightedComplex dual_curve(const TropComplex& tc) {
  if (tc.n != 2) throw MathError("dual curve is defined for plane curves only");
  if (!is_smooth(tc.f)) throw MathError("smoothness required");
  if (tc.f.degree() < 2) throw MathError("dual curve requires degree at least 2");

  std::vector<IVec> std_dirs;
  for (int i = 0; i <= 2; ++i) std_dirs.push_back(section_dir(i, 2));

  std::vector<WeightedCell> raw;
  for (int ei : tc.cells_of_dim(1)) {
    const Polyhedron& E = tc.cells[ei].region;
    IVec dir = detail::cell_direction(E);
    int par = -1;
    for (int i = 0; i <= 2; ++i)
      if (parallel(dir, std_dirs[i])) par = i;
    if (par < 0) {
      raw.push_back({negate(E), 1});
      continue;
    }
    if (!E.lineality.empty()) continue;  // a line is unbounded toward -e_i
    const IVec& e = std_dirs[par];
    if (E.vertices.size() == 2) {
      // endpoint reached traveling in direction -e_i
      Rational t1 = detail::param_along({E.vertices[0], e, Rational(0), false}, E.vertices[1]);
      QVec q = (t1 > 0) ? E.vertices[0] : E.vertices[1];
      raw.push_back({make_polyhedron(2, {vec_neg(q)}, {vec_neg(e)}), 2});
    } else if (E.rays[0] == e) {
      raw.push_back({make_polyhedron(2, {vec_neg(E.vertices[0])}, {vec_neg(e)}), 2});
    }
  }
  for (int vi : tc.cells_of_dim(0)) {
    const QVec& p = tc.cells[vi].region.vertices[0];
    for (int i = 0; i <= 2; ++i) {
      bool has_parallel = false;
      for (int ci : tc.cells[vi].cofaces)
        if (tc.cells[ci].dim == 1 &&
            parallel(detail::cell_direction(tc.cells[ci].region), std_dirs[i]))
          has_parallel = true;
      if (!has_parallel)
        raw.push_back({make_polyhedron(2, {vec_neg(p)}, {vec_neg(std_dirs[i])}), 1});
    }
  }
  return {2, detail::refine_cells(2, raw)};
}

// Newton polygon of the dual from the ray multiset: each direction d of total
// multiplicity m contributes the edge vector m*rot90(d).
inline Int curve_dual_degree(const WeightedComplex& wc) {
  std::vector<std::pair<IVec, IVec>> edges;  // (edge vector, sort key)
  for (const auto& [d, m] : ray_multiset(wc)) edges.push_back({vec_scale(m, rot90(d)), rot90(d)});
  if (edges.empty()) return 0;
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) { return detail::angle_less(a.second, b.second); });
  IVec at{0, 0};
  IMat verts{at};
  for (const auto& [ev, key] : edges) {
    at = vec_add(at, ev);
    verts.push_back(at);
  }
  if (!is_zero_vec(verts.back())) throw MathError("dual rays do not close up to a polygon");
  verts.pop_back();
  Int m1 = verts[0][0], m2 = verts[0][1], deg = 0;
  for (const IVec& v : verts) {
    m1 = std::min(m1, v[0]);
    m2 = std::min(m2, v[1]);
  }
  for (const IVec& v : verts) deg = std::max(deg, Int(v[0] - m1 + v[1] - m2));
  return deg;
}

inline Int multiplicity_det(const IMat& columns) {
  if (columns.empty()) throw MathError("multiplicity matrix must be square");
  for (const IVec& c : columns)
    if (c.size() != columns.size()) throw MathError("multiplicity matrix must be square");
  IMat rows(columns.size(), IVec(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < columns.size(); ++i) rows[i][j] = columns[j][i];
  Int d = det_int(rows);
  return d < 0 ? -d : d;
}

// Marks -p for every vertex p whose outgoing edge directions are exactly
// {-e0,-e1,-e2}: such a vertex is invisible in the dual support (it emits no ray of
// its own and its edges are unbounded on the far side), so only the mark records it.
inline DecoratedComplex decorate(const WeightedComplex& wc, const TropComplex& tc) {
  DecoratedComplex dc{wc, {}};
  std::set<IVec> want;
  for (int i = 0; i <= 2; ++i) want.insert(vec_neg(section_dir(i, 2)));
  for (int vi : tc.cells_of_dim(0)) {
    const QVec& p = tc.cells[vi].region.vertices[0];
    std::set<IVec> dirs;
    for (int ci : tc.cells[vi].cofaces)
      if (tc.cells[ci].dim == 1)
        for (const IVec& g : detail::cell_germs_at(tc.cells[ci].region, p)) dirs.insert(g);
    if (dirs == want) dc.marks.push_back(vec_neg(p));
  }
  return dc;
}

namespace detail {

struct Star {
  QVec pos;                  // curve vertex -v
  std::array<IVec, 3> germ;  // CCW-sorted primitive edge directions
};

// Local star of the curve at -v from the residual germ multiset of the dual at v.
// Returns false when the junction carries no vertex (a plain crossing).
inline bool classify_star(const QVec& v, std::map<IVec, Int> germs, bool marked, Star& star) {
  const std::string bad = "not a decorated dual of a smooth curve";
  // cancel full lines through v
  for (auto& [d, m] : germs) {
    auto op = germs.find(vec_neg(d));
    if (op != germs.end()) {
      Int c = std::min(m, op->second);
      m -= c;
      op->second -= c;
    }
  }
  std::vector<IVec> std_dirs;
  for (int i = 0; i <= 2; ++i) std_dirs.push_back(section_dir(i, 2));

  std::vector<IVec> known;
  std::set<int> thick, thinstd;
  for (const auto& [d, m] : germs) {
    if (m == 0) continue;
    int neg_std = -1, pos_std = -1;
    for (int i = 0; i <= 2; ++i) {
      if (d == vec_neg(std_dirs[i])) neg_std = i;
      if (d == std_dirs[i]) pos_std = i;
    }
    if (m == 2 && neg_std >= 0) {
      thick.insert(neg_std);
      known.push_back(std_dirs[neg_std]);
    } else if (m == 1 && neg_std >= 0) {
      thinstd.insert(neg_std);
    } else if (m == 1 && neg_std < 0 && pos_std < 0) {
      known.push_back(vec_neg(d));
    } else {
      throw MathError(bad);
    }
  }
  std::vector<IVec> dirs = known;
  if (known.empty() && thinstd.empty()) {
    if (!marked) return false;
    for (int i = 0; i <= 2; ++i) dirs.push_back(vec_neg(std_dirs[i]));
  } else {
    if (marked) throw MathError(bad);
    for (int i = 0; i <= 2; ++i)
      if (!thick.count(i) && !thinstd.count(i)) dirs.push_back(vec_neg(std_dirs[i]));
  }
  if (dirs.size() != 3) throw MathError(bad);
  IVec sum{0, 0};
  for (const IVec& d : dirs) sum = vec_add(sum, d);
  if (!is_zero_vec(sum)) throw MathError(bad);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      Int cr = dirs[a][0] * dirs[b][1] - dirs[a][1] * dirs[b][0];
      if (cr != 1 && cr != -1) throw MathError(bad);
    }
  for (int i : thinstd)
    for (const IVec& d : dirs)
      if (parallel(d, std_dirs[i])) throw MathError(bad);
  std::sort(dirs.begin(), dirs.end(), angle_less);
  star.pos = vec_neg(v);
  star.germ = {dirs[0], dirs[1], dirs[2]};
  return true;
}

}  // namespace detail

// Prop.-style inverse of decorate(dual_curve(.)): classify the local stars of the
// decorated dual, glue the resulting curve stars, and rebuild the polynomial whose
// tropicalization they carve out (support translated to touch both axes, smallest
// valuation zero).
inline TropComplex reconstruct(const DecoratedComplex& dc) {
  const std::string bad = "not a decorated dual of a smooth curve";
  std::vector<WeightedCell> cells = detail::refine_cells(2, dc.base.cells);

  QMat cand;
  auto add_cand = [&](const QVec& v) {
    if (std::find(cand.begin(), cand.end(), v) == cand.end()) cand.push_back(v);
  };
  for (const auto& c : cells)
    if (c.cell.lineality.empty() && c.cell.dim() == 1)
      for (const QVec& v : c.cell.vertices) add_cand(v);
  for (const QVec& m : dc.marks) add_cand(m);

  std::vector<detail::Star> stars;
  for (const QVec& v : cand) {
    bool marked = std::find(dc.marks.begin(), dc.marks.end(), v) != dc.marks.end();
    std::map<IVec, Int> germs;
    for (const auto& c : cells)
      for (const IVec& g : detail::cell_germs_at(c.cell, v)) germs[g] += c.multiplicity;
    detail::Star s;
    if (detail::classify_star(v, std::move(germs), marked, s)) stars.push_back(s);
  }
  if (stars.empty()) throw MathError(bad);

  // glue: each germ either meets the reciprocal germ of the nearest star on its ray
  // or extends to an unbounded edge
  std::vector<std::array<int, 3>> partner(stars.size(), {-1, -1, -1});
  std::vector<std::array<int, 4>> segments;  // star a, germ of a, star b, germ of b
  for (std::size_t a = 0; a < stars.size(); ++a)
    for (int j = 0; j < 3; ++j) {
      if (partner[a][j] != -1) continue;
      const IVec& g = stars[a].germ[j];
      int best = -1;
      Rational best_t;
      for (std::size_t b = 0; b < stars.size(); ++b) {
        if (b == a) continue;
        QVec d = vec_sub(stars[b].pos, stars[a].pos);
        Rational t;
        bool on_ray = true;
        int k0 = g[0] != 0 ? 0 : 1;
        t = d[k0] / Rational(g[k0]);
        if (t <= 0) continue;
        for (int k = 0; k < 2; ++k)
          if (d[k] != t * Rational(g[k])) on_ray = false;
        if (!on_ray) continue;
        if (best < 0 || t < best_t) {
          best = static_cast<int>(b);
          best_t = t;
        }
      }
      if (best < 0) {
        partner[a][j] = -2;  // unbounded
        continue;
      }
      int rec = -1;
      for (int k = 0; k < 3; ++k)
        if (stars[best].germ[k] == vec_neg(g)) rec = k;
      if (rec < 0 || partner[best][rec] != -1) throw MathError(bad);
      partner[a][j] = best;
      partner[best][rec] = static_cast<int>(a);
      segments.push_back({static_cast<int>(a), j, best, rec});
    }

  // dual subdivision: the triangle of a star has one vertex per sector between
  // consecutive germs; crossing germ g moves the exponent by rot90(g)
  std::vector<std::array<IVec, 3>> uloc(stars.size());
  for (std::size_t s = 0; s < stars.size(); ++s) {
    uloc[s][0] = IVec{0, 0};
    uloc[s][1] = vec_add(uloc[s][0], rot90(stars[s].germ[1]));
    uloc[s][2] = vec_add(uloc[s][1], rot90(stars[s].germ[2]));
  }
  std::vector<IVec> offset(stars.size());
  std::vector<int> state(stars.size(), 0);  // 0 new, 1 visited
  std::vector<int> order;
  offset[0] = IVec{0, 0};
  state[0] = 1;
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    int a = order[head];
    for (const auto& seg : segments) {
      int b, ja, jb;
      if (seg[0] == a) {
        b = seg[2];
        ja = seg[1];
        jb = seg[3];
      } else if (seg[2] == a) {
        b = seg[0];
        ja = seg[3];
        jb = seg[1];
      } else {
        continue;
      }
      // the region left of the germ at a is the region right of the germ at b
      IVec want = vec_add(offset[a], vec_sub(uloc[a][ja], uloc[b][(jb + 2) % 3]));
      if (state[b] == 0) {
        offset[b] = want;
        state[b] = 1;
        order.push_back(b);
      } else if (offset[b] != want) {
        throw MathError(bad);
      }
    }
  }
  if (order.size() != stars.size()) throw MathError(bad);  // a tropical curve is connected

  // valuations: the three phi values of a star's regions agree at its position
  std::map<IVec, Rational> nu;
  for (int a : order) {
    std::array<IVec, 3> u;
    for (int j = 0; j < 3; ++j) u[j] = vec_add(offset[a], uloc[a][j]);
    int base = -1;
    for (int j = 0; j < 3; ++j)
      if (nu.count(u[j])) base = j;
    if (base < 0) {
      nu[u[0]] = Rational(0);
      base = 0;
    }
    for (int j = 0; j < 3; ++j) {
      Rational val = nu[u[base]] + dot(stars[a].pos, vec_sub(u[j], u[base]));
      auto it = nu.find(u[j]);
      if (it == nu.end())
        nu[u[j]] = val;
      else if (it->second != val)
        throw MathError(bad);
    }
  }

  Int m1 = nu.begin()->first[0], m2 = nu.begin()->first[1];
  Rational vmin = nu.begin()->second;
  for (const auto& [u, val] : nu) {
    m1 = std::min(m1, u[0]);
    m2 = std::min(m2, u[1]);
    vmin = std::min(vmin, val);
  }
  Int d = 0;
  for (const auto& [u, val] : nu) d = std::max(d, Int(u[0] - m1 + u[1] - m2));
  TropPolynomial f;
  f.n = 2;
  for (const auto& [u, val] : nu) {
    Int u1 = u[0] - m1, u2 = u[1] - m2;
    f.terms.push_back({IVec{d - u1 - u2, u1, u2}, val - vmin});
  }
  validate_polynomial(f);
  if (!is_smooth(f)) throw MathError(bad);
  TropComplex tc = dual_complex(f);

  QMat got;
  for (int vi : tc.cells_of_dim(0)) got.push_back(tc.cells[vi].region.vertices[0]);
  for (const auto& s : stars)
    if (std::find(got.begin(), got.end(), s.pos) == got.end()) throw MathError(bad);
  if (got.size() != stars.size()) throw MathError(bad);
  return tc;
}

}  // namespace tropdual
