#pragma once

#include <string>
#include <vector>

#include "tropdual/trop.hpp"

namespace tropdual {

// One shift family -p - sum_{j in J} s_j e_j together with the constraint case
// that applies to the s_j with j in Jprime.
struct TangentBranch {
  std::vector<int> J;
  std::vector<int> Jprime;
  std::string kind;  // cone | free | pair | delta | midpoint | line-pair
};

struct TangentFamily {
  Polyhedron base_cell;
  std::vector<TangentBranch> branches;
  std::vector<Polyhedron> realized;  // parallel to branches
};

struct EdgeGeometry {
  Polyhedron edge;
  QMat endpoints;  // 0 (line), 1 (ray) or 2 (segment) points
  IVec direction;  // primitive; for a segment, points from endpoints[0] to endpoints[1]
};

inline EdgeGeometry edge_geometry(const Polyhedron& edge) {
  if (edge.dim() != 1) throw MathError("edge_geometry: cell is not one-dimensional");
  EdgeGeometry g;
  g.edge = edge;
  if (!edge.lineality.empty()) {
    g.direction = edge.lineality[0];
    return g;
  }
  g.endpoints = edge.vertices;
  if (edge.vertices.size() == 2)
    g.direction = primitive_direction(vec_sub(edge.vertices[1], edge.vertices[0]));
  else
    g.direction = edge.rays[0];
  return g;
}

inline bool edge_is_line(const EdgeGeometry& g) { return g.endpoints.empty(); }
inline bool edge_is_bounded(const EdgeGeometry& g) { return g.endpoints.size() == 2; }

namespace detail {

// t with p = q + t * dir for collinear p, q.
inline Rational edge_parameter(const QVec& p, const QVec& q, const IVec& dir) {
  for (std::size_t k = 0; k < dir.size(); ++k)
    if (dir[k] != 0) return (p[k] - q[k]) / Rational(dir[k]);
  throw MathError("edge direction is zero");
}

}  // namespace detail

// Minimal lattice distance from p to an endpoint of the edge.
inline Rational edge_delta(const EdgeGeometry& g, const QVec& p) {
  if (edge_is_line(g)) throw MathError("delta is infinite on a line edge");
  Rational best = 0;
  bool have = false;
  for (const auto& q : g.endpoints) {
    Rational t = detail::edge_parameter(p, q, g.direction);
    if (t < 0) t = -t;
    if (!have || t < best) {
      best = t;
      have = true;
    }
  }
  return best;
}

inline QVec edge_midpoint(const EdgeGeometry& g) {
  if (!edge_is_bounded(g)) throw MathError("midpoint of an unbounded edge");
  QVec m(g.endpoints[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = (g.endpoints[0][i] + g.endpoints[1][i]) / 2;
  return m;
}

namespace detail {

inline IMat standard_span_rows(const std::vector<int>& J, int n) {
  IMat rows;
  for (int j : J) rows.push_back(section_dir(j, n));
  return rows;
}

// All inclusion-maximal subsets of {0..n} satisfying pred, sorted.
template <typename Pred>
std::vector<std::vector<int>> maximal_subsets(int n, Pred&& pred) {
  const int total = 1 << (n + 1);
  std::vector<int> passing;
  for (int mask = 0; mask < total; ++mask) {
    std::vector<int> J;
    for (int i = 0; i <= n; ++i)
      if (mask & (1 << i)) J.push_back(i);
    if (pred(J)) passing.push_back(mask);
  }
  std::vector<std::vector<int>> out;
  for (int m1 : passing) {
    bool maximal = true;
    for (int m2 : passing)
      if (m1 != m2 && (m1 & m2) == m1) {
        maximal = false;
        break;
      }
    if (!maximal) continue;
    std::vector<int> J;
    for (int i = 0; i <= n; ++i)
      if (m1 & (1 << i)) J.push_back(i);
    out.push_back(std::move(J));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Maximal J with <E> meet <J> = 0 for every edge E adjacent to the vertex.
inline std::vector<std::vector<int>> vertex_J_family(const TropComplex& tc, int cell) {
  const TropCell& v = tc.cells.at(cell);
  if (v.dim != 0) throw MathError("vertex_J_family: cell is not a vertex");
  std::vector<IMat> adjacent;
  for (int ci : v.cofaces)
    if (tc.cells[ci].dim == 1) adjacent.push_back(direction_space(tc.cells[ci].region));
  return detail::maximal_subsets(tc.n, [&](const std::vector<int>& J) {
    if (J.empty()) return true;
    IMat span = detail::standard_span_rows(J, tc.n);
    for (const auto& dirs : adjacent)
      if (subspace_intersection_dim(dirs, span) != 0) return false;
    return true;
  });
}

// Maximal J with <F> meet <J> = <E> meet <J> for every adjacent two-face F.
inline std::vector<std::vector<int>> edge_J_family(const TropComplex& tc, int cell) {
  const TropCell& e = tc.cells.at(cell);
  if (e.dim != 1) throw MathError("edge_J_family: cell is not an edge");
  IMat edir = direction_space(e.region);
  if (tc.n == 2) {
    // Plane curves have no two-faces; an edge admits a shift exactly along a
    // parallel standard direction.
    for (int i = 0; i <= 2; ++i)
      if (parallel(edir[0], section_dir(i, 2))) return {{i}};
    return {{}};
  }
  std::vector<IMat> adjacent;
  for (int ci : e.cofaces)
    if (tc.cells[ci].dim == 2) adjacent.push_back(direction_space(tc.cells[ci].region));
  return detail::maximal_subsets(tc.n, [&](const std::vector<int>& J) {
    IMat span = detail::standard_span_rows(J, tc.n);
    const int on_edge = subspace_intersection_dim(edir, span);
    for (const auto& face : adjacent)
      if (subspace_intersection_dim(face, span) != on_edge) return false;
    return true;
  });
}

// Support of the unique expansion of dir over {e_j : j in J}; empty if dir is
// not in the span. J must not be all of {0..n}.
inline std::vector<int> minimal_spanning_subset(const std::vector<int>& J, const IVec& dir, int n) {
  if (J.empty()) return {};
  if (static_cast<int>(J.size()) == n + 1)
    throw MathError("minimal_spanning_subset: dependent direction set");
  QMat a(n, QVec(J.size()));
  for (std::size_t j = 0; j < J.size(); ++j) {
    IVec ej = section_dir(J[j], n);
    for (int r = 0; r < n; ++r) a[r][j] = Rational(ej[r]);
  }
  QVec b(n);
  for (int r = 0; r < n; ++r) b[r] = Rational(dir[r]);
  auto sol = solve_particular(a, b);
  if (!sol) return {};
  std::vector<int> out;
  for (std::size_t j = 0; j < J.size(); ++j)
    if ((*sol)[j] != 0) out.push_back(J[j]);
  return out;
}

namespace detail {

// A parametrized interval of an edge: p(t) = base + t*dir, with optional bounds
// on t and, where finite, delta(t) = d0 + d1*t.
struct EdgePiece {
  QVec base;
  IVec dir;
  bool lower = true;
  Rational tmin = 0;
  bool upper = true;
  Rational tmax = 0;
  bool delta_finite = false;
  Rational d0 = 0, d1 = 0;
};

// Realized tangents of one branch over one piece: the affine image
// x = -p(t) - sum_j s_j e_{J[j]} of the (t, s_0..s_{k-1}) constraint region.
inline Polyhedron branch_piece(int n, const EdgePiece& piece, const std::vector<int>& J,
                               const std::vector<int>& Jp, const std::string& kind, int a, int b) {
  const int k = static_cast<int>(J.size());
  auto pos = [&](int idx) {
    for (int j = 0; j < k; ++j)
      if (J[j] == idx) return 2 + j;
    throw MathError("branch index outside J");
  };
  HRep h;
  h.dim = 1 + k;
  auto row_q = [&](QVec coeffs) {  // length 2 + k, denominators cleared
    Int den = 1;
    for (const auto& c : coeffs) den = boost::multiprecision::lcm(den, denominator(c));
    IVec row(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      row[i] = numerator(coeffs[i]) * (den / denominator(coeffs[i]));
    return row;
  };
  QVec zero(2 + k, Rational(0));
  for (int j = 0; j < k; ++j) {
    QVec r = zero;
    r[2 + j] = 1;
    h.ineq.push_back(row_q(r));
  }
  if (piece.lower) {
    QVec r = zero;
    r[0] = -piece.tmin;
    r[1] = 1;
    h.ineq.push_back(row_q(r));
  }
  if (piece.upper) {
    QVec r = zero;
    r[0] = piece.tmax;
    r[1] = -1;
    h.ineq.push_back(row_q(r));
  }
  auto delta_row = [&]() {  // delta(t) as coefficient vector (d0, d1, 0...)
    QVec r = zero;
    r[0] = piece.d0;
    r[1] = piece.d1;
    return r;
  };
  if (kind == "pair" || kind == "line-pair") {
    QVec eq = zero;
    eq[pos(a)] += 1;
    eq[pos(b)] -= 1;
    h.eq.push_back(row_q(eq));
    for (int l : Jp) {
      if (l == a || l == b) continue;
      QVec r = zero;
      r[pos(l)] += 1;
      r[pos(a)] -= 1;
      h.ineq.push_back(row_q(r));
    }
    if (kind == "pair") {
      QVec r = delta_row();
      r[pos(a)] -= 1;
      h.ineq.push_back(row_q(r));
    }
  } else if (kind == "delta") {
    QVec eq = delta_row();
    for (auto& c : eq) c = -c;
    eq[pos(a)] += 1;
    h.eq.push_back(row_q(eq));
    for (int l : Jp) {
      if (l == a) continue;
      QVec r = zero;
      r[pos(l)] += 1;
      r[pos(a)] -= 1;
      h.ineq.push_back(row_q(r));
    }
  } else if (kind == "midpoint") {
    for (int l : Jp) {
      QVec r = delta_row();
      for (auto& c : r) c = -c;
      r[pos(l)] += 1;
      h.ineq.push_back(row_q(r));
    }
  } else if (kind != "free") {
    throw MathError("unknown tangent branch kind");
  }

  Polyhedron region = from_hrep(h);
  if (region.empty()) return Polyhedron{n, {}, {}, {}};

  auto map_point = [&](const QVec& ts) {
    QVec x(n);
    for (int i = 0; i < n; ++i) x[i] = -piece.base[i] - ts[0] * Rational(piece.dir[i]);
    for (int j = 0; j < k; ++j) {
      IVec ej = section_dir(J[j], n);
      for (int i = 0; i < n; ++i) x[i] -= ts[1 + j] * Rational(ej[i]);
    }
    return x;
  };
  auto map_dir = [&](const IVec& ts) {
    IVec x(n, 0);
    for (int i = 0; i < n; ++i) x[i] = -ts[0] * piece.dir[i];
    for (int j = 0; j < k; ++j) {
      IVec ej = section_dir(J[j], n);
      for (int i = 0; i < n; ++i) x[i] -= ts[1 + j] * ej[i];
    }
    return x;
  };
  QMat verts;
  for (const auto& v : region.vertices) verts.push_back(map_point(v));
  IMat rays, lin;
  for (const auto& r : region.rays) {
    IVec img = map_dir(r);
    if (!is_zero_vec(img)) rays.push_back(primitive(img));
  }
  for (const auto& l : region.lineality) {
    IVec img = map_dir(l);
    if (!is_zero_vec(img)) lin.push_back(primitive(img));
  }
  // the image may be degenerate; a DD round trip restores canonical form
  return from_hrep(to_hrep_from_generators(n, verts, rays, lin));
}

inline void append_branches(const TropComplex& tc, const EdgeGeometry& g,
                            const std::vector<int>& J, const std::vector<int>& Jp,
                            const std::vector<EdgePiece>& delta_pieces, const EdgePiece& whole,
                            const EdgePiece* midpiece, TangentFamily& fam) {
  auto add = [&](const EdgePiece& piece, const std::string& kind, int a, int b) {
    Polyhedron r = branch_piece(tc.n, piece, J, Jp, kind, a, b);
    if (r.empty()) return;
    fam.branches.push_back({J, Jp, kind});
    fam.realized.push_back(std::move(r));
  };
  if (Jp.empty()) {
    add(whole, "free", -1, -1);
    return;
  }
  if (edge_is_line(g)) {
    for (std::size_t i = 0; i < Jp.size(); ++i)
      for (std::size_t j = i + 1; j < Jp.size(); ++j) add(whole, "line-pair", Jp[i], Jp[j]);
    return;
  }
  for (const auto& piece : delta_pieces) {
    for (std::size_t i = 0; i < Jp.size(); ++i)
      for (std::size_t j = i + 1; j < Jp.size(); ++j) add(piece, "pair", Jp[i], Jp[j]);
    for (int i0 : Jp) add(piece, "delta", i0, -1);
  }
  if (midpiece) add(*midpiece, "midpoint", -1, -1);
}

}  // namespace detail

// Tropical tangents at a vertex p: -p - cone(e_i : i in J) over J in J(p).
inline TangentFamily vertex_tangent_family(const TropComplex& tc, const QVec& p) {
  int cell = -1;
  for (int vi : tc.cells_of_dim(0))
    if (tc.cells[vi].region.vertices[0] == p) {
      cell = vi;
      break;
    }
  if (cell < 0) throw MathError("vertex_tangent_family: point is not a vertex of the complex");
  TangentFamily fam;
  fam.base_cell = tc.cells[cell].region;
  for (const auto& J : vertex_J_family(tc, cell)) {
    IMat rays;
    for (int j : J) rays.push_back(vec_neg(section_dir(j, tc.n)));
    fam.branches.push_back({J, {}, "cone"});
    fam.realized.push_back(make_polyhedron(tc.n, {vec_neg(p)}, rays));
  }
  return fam;
}

// Tropical tangents at a point p in the relative interior of an edge.
inline TangentFamily edge_tangent_family(const TropComplex& tc, int edge_cell, const QVec& p) {
  const TropCell& ec = tc.cells.at(edge_cell);
  if (ec.dim != 1) throw MathError("edge_tangent_family: cell is not an edge");
  EdgeGeometry g = edge_geometry(ec.region);
  bool inside = contains_point(ec.region, p);
  for (const auto& q : g.endpoints)
    if (q == p) inside = false;
  if (!inside) throw MathError("edge_tangent_family: point not in the relative interior of the edge");

  detail::EdgePiece at;  // the degenerate piece {p}
  at.base = p;
  at.dir = IVec(tc.n, 0);
  at.tmin = at.tmax = 0;
  if (!edge_is_line(g)) {
    at.delta_finite = true;
    at.d0 = edge_delta(g, p);
  }
  bool at_mid = edge_is_bounded(g) && p == edge_midpoint(g);

  TangentFamily fam;
  fam.base_cell = ec.region;
  for (const auto& J : edge_J_family(tc, edge_cell)) {
    auto Jp = minimal_spanning_subset(J, g.direction, tc.n);
    detail::append_branches(tc, g, J, Jp, {at}, at, at_mid ? &at : nullptr, fam);
  }
  return fam;
}

// Closure of the union of edge_tangent_family(E, p) over p in relint(E), as a
// finite list of closed polyhedra (contained pieces pruned).
inline std::vector<Polyhedron> edge_dual_union(const TropComplex& tc, int edge_cell) {
  const TropCell& ec = tc.cells.at(edge_cell);
  if (ec.dim != 1) throw MathError("edge_dual_union: cell is not an edge");
  EdgeGeometry g = edge_geometry(ec.region);

  detail::EdgePiece whole;
  std::vector<detail::EdgePiece> delta_pieces;
  detail::EdgePiece mid;
  bool has_mid = false;
  whole.dir = g.direction;
  if (edge_is_line(g)) {
    whole.base = ec.region.vertices[0];
    whole.lower = whole.upper = false;
  } else if (g.endpoints.size() == 1) {
    whole.base = g.endpoints[0];
    whole.upper = false;
    detail::EdgePiece ray = whole;
    ray.delta_finite = true;
    ray.d0 = 0;
    ray.d1 = 1;
    delta_pieces.push_back(ray);
  } else {
    whole.base = g.endpoints[0];
    Rational len = detail::edge_parameter(g.endpoints[1], g.endpoints[0], g.direction);
    whole.tmax = len;
    detail::EdgePiece half = whole;
    half.delta_finite = true;
    half.tmax = len / 2;
    half.d0 = 0;
    half.d1 = 1;
    delta_pieces.push_back(half);
    half.tmin = len / 2;
    half.tmax = len;
    half.d0 = len;
    half.d1 = -1;
    delta_pieces.push_back(half);
    mid = whole;
    mid.tmin = mid.tmax = len / 2;
    mid.delta_finite = true;
    mid.d0 = len / 2;
    mid.d1 = 0;
    has_mid = true;
  }

  TangentFamily fam;
  fam.base_cell = ec.region;
  for (const auto& J : edge_J_family(tc, edge_cell)) {
    auto Jp = minimal_spanning_subset(J, g.direction, tc.n);
    detail::append_branches(tc, g, J, Jp, delta_pieces, whole, has_mid ? &mid : nullptr, fam);
  }

  std::vector<Polyhedron> out = fam.realized;
  std::vector<bool> removed(out.size(), false);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size() && !removed[i]; ++j) {
      if (i == j || removed[j]) continue;
      if (!contains_polyhedron(out[j], out[i])) continue;
      if (contains_polyhedron(out[i], out[j]) && i < j) continue;  // equal: keep first
      removed[i] = true;
    }
  std::vector<Polyhedron> pruned;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!removed[i]) pruned.push_back(std::move(out[i]));
  return pruned;
}

}  // namespace tropdual
