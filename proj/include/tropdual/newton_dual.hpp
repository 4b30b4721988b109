#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include <tropdual/curve_dual.hpp>

namespace tropdual {

// Convex lattice polygon, counterclockwise, no three consecutive collinear vertices.
struct LatticePolygon {
  IMat vertices;

  IMat edges() const {
    IMat es;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      es.push_back(vec_sub(vertices[(i + 1) % vertices.size()], vertices[i]));
    return es;
  }
};

namespace detail {

inline Int cross2(const IVec& a, const IVec& b) { return Int(a[0] * b[1] - a[1] * b[0]); }

}  // namespace detail

inline LatticePolygon make_lattice_polygon(IMat vs) {
  if (vs.size() < 3) throw MathError("degenerate polygon");
  for (const IVec& v : vs)
    if (v.size() != 2) throw MathError("lattice polygon vertices must lie in the plane");
  LatticePolygon P{std::move(vs)};
  IMat es = P.edges();
  int wraps = 0;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const IVec& a = es[i];
    const IVec& b = es[(i + 1) % es.size()];
    if (is_zero_vec(a)) throw MathError("degenerate polygon");
    if (detail::cross2(a, b) <= 0)
      throw MathError("polygon is not strictly convex counterclockwise");
    if (detail::angle_less(b, a)) ++wraps;
  }
  if (wraps != 1) throw MathError("polygon is not strictly convex counterclockwise");
  return P;
}

// Twice the Euclidean area, so the unimodular triangle has volume 1.
inline Int normalized_volume(const LatticePolygon& P) {
  Int s = 0;
  for (std::size_t i = 0; i < P.vertices.size(); ++i)
    s += detail::cross2(P.vertices[i], P.vertices[(i + 1) % P.vertices.size()]);
  if (s <= 0) throw MathError("degenerate polygon");
  return s;
}

inline LatticePolygon newton_polygon(const TropPolynomial& f) {
  if (f.n != 2) throw MathError("newton polygon duality applies to plane curves only");
  std::set<IVec> seen;
  for (const TropTerm& t : f.terms) seen.insert(dehomogenized(t.exponents));
  std::vector<IVec> pts(seen.begin(), seen.end());
  auto build = [](const std::vector<IVec>& ps) {
    IMat h;
    for (const IVec& p : ps) {
      while (h.size() >= 2 &&
             detail::cross2(vec_sub(h.back(), h[h.size() - 2]), vec_sub(p, h.back())) <= 0)
        h.pop_back();
      h.push_back(p);
    }
    return h;
  };
  IMat lower = build(pts);
  std::reverse(pts.begin(), pts.end());
  IMat upper = build(pts);
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  if (lower.size() < 3) throw MathError("newton polygon is degenerate");
  return make_lattice_polygon(std::move(lower));
}

namespace detail {

// Sorts an edge multiset by angle, merges equal directions, and chains it into a
// closed polygon anchored so that the lexicographically least vertex sits at 0.
inline LatticePolygon polygon_from_edges(std::vector<IVec> edges) {
  std::vector<IVec> es;
  for (IVec& e : edges)
    if (!is_zero_vec(e)) es.push_back(std::move(e));
  std::sort(es.begin(), es.end(), angle_less);
  IMat merged;
  for (const IVec& e : es) {
    if (!merged.empty() && cross2(merged.back(), e) == 0 && !angle_less(e, merged.back()) &&
        !angle_less(merged.back(), e))
      merged.back() = vec_add(merged.back(), e);
    else
      merged.push_back(e);
  }
  IVec at{0, 0};
  IMat verts;
  for (const IVec& e : merged) {
    verts.push_back(at);
    at = vec_add(at, e);
  }
  if (!is_zero_vec(at)) throw MathError("dual edge vectors do not close up to a polygon");
  std::size_t k = 0;
  for (std::size_t i = 1; i < verts.size(); ++i)
    if (lex_compare(verts[i], verts[k]) < 0) k = i;
  std::rotate(verts.begin(), verts.begin() + k, verts.end());
  IVec base = verts[0];
  for (IVec& v : verts) v = vec_sub(v, base);
  return make_lattice_polygon(std::move(verts));
}

}  // namespace detail

// Edge vectors of the dual polygon: the negated non-standard edges of P together with
// vol(P)*w_i - sigma_i for w_0 = (-1,1), w_1 = (0,-1), w_2 = (1,0), where sigma_i sums
// the edges of P parallel (either sign) to w_i.
inline LatticePolygon dual_newton_polygon(const LatticePolygon& P) {
  const IMat W{{-1, 1}, {0, -1}, {1, 0}};
  Int vol = normalized_volume(P);
  IMat sigma(3, IVec{0, 0});
  std::vector<IVec> out;
  for (const IVec& e : P.edges()) {
    int wi = -1;
    for (int i = 0; i < 3; ++i)
      if (parallel(e, W[i])) wi = i;
    if (wi >= 0)
      sigma[wi] = vec_add(sigma[wi], e);
    else
      out.push_back(vec_neg(e));
  }
  for (int i = 0; i < 3; ++i) out.push_back(vec_sub(vec_scale(vol, W[i]), sigma[i]));
  return detail::polygon_from_edges(std::move(out));
}

// The same polygon obtained from the ray cycle of an already computed dual curve.
inline LatticePolygon dual_rays_polygon(const WeightedComplex& wc) {
  std::vector<IVec> edges;
  for (const auto& [d, m] : ray_multiset(wc)) edges.push_back(vec_scale(m, rot90(d)));
  return detail::polygon_from_edges(std::move(edges));
}

// Smallest D such that a translate of P fits in D times the standard triangle.
inline Int dual_degree_from_polygon(const LatticePolygon& P) {
  Int m1 = P.vertices[0][0], m2 = P.vertices[0][1], deg = 0;
  for (const IVec& v : P.vertices) {
    m1 = std::min(m1, v[0]);
    m2 = std::min(m2, v[1]);
  }
  for (const IVec& v : P.vertices) deg = std::max(deg, Int(v[0] - m1 + v[1] - m2));
  return deg;
}

// Degree drop of the dual for a curve of degree d, generic with respect to its Newton
// polygon, whose only singular point is the origin corner (0:0:1).  P must contain the
// vertices (d,0) and (0,d); the remaining boundary is the chain (a_1,b_1)..(a_m,b_m)
// with 0 = a_1 < .. < a_m and b_1 > .. > b_m = 0, either end possibly coinciding with
// a corner vertex.  Returns A + eta - tau: the normalized area cut out of d times the
// standard triangle, plus the multiplicity of the singular point (a_k + b_k at the
// slope -1 threshold k), minus the intersection multiplicity with the coordinate axes
// (a_m + b_1).
inline Int singularity_delta(const LatticePolygon& P, const Int& d) {
  const char* shape = "polygon does not have the singular-corner chain shape";
  if (d < 1) throw MathError(shape);
  const std::size_t n = P.vertices.size();
  const IVec cx{d, 0}, cy{0, d};
  std::size_t j = n;
  for (std::size_t i = 0; i < n; ++i)
    if (P.vertices[i] == cx && P.vertices[(i + 1) % n] == cy) j = i;
  if (j == n) throw MathError(shape);
  for (const IVec& v : P.vertices)
    if (v[0] < 0 || v[1] < 0 || v[0] + v[1] > d) throw MathError(shape);
  IMat chain;
  for (std::size_t t = (j + 2) % n; t != j; t = (t + 1) % n) chain.push_back(P.vertices[t]);
  if (chain.empty() || chain.front()[0] != 0) chain.insert(chain.begin(), cy);
  if (chain.back()[1] != 0) chain.push_back(cx);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (chain[i + 1][0] <= chain[i][0] || chain[i + 1][1] >= chain[i][1])
      throw MathError(shape);
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i + 1][0] - chain[i][0] + chain[i + 1][1] - chain[i][1] < 0)
      ++k;
    else
      break;
  }
  Int A = d * d - normalized_volume(P);
  Int eta = chain[k][0] + chain[k][1];
  Int tau = chain.back()[0] + chain.front()[1];
  return Int(A + eta - tau);
}

inline Int pluecker_degree(const Int& d, const Int& nodes, const Int& cusps) {
  if (d < 2 || nodes < 0 || cusps < 0) throw MathError("formula out of validity range");
  Int r = d * (d - 1) - 2 * nodes - 3 * cusps;
  if (r < 0) throw MathError("formula out of validity range");
  return r;
}

}  // namespace tropdual
