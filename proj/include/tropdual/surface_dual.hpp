#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <tropdual/tangent.hpp>

// Dual hypersurface of a smooth tropical surface in R^3.  Vertices and edges
// contribute through the tangent families; a two-face F contributes through the
// concave gap function delta = min over edges E of F of delta_E, where delta_E
// measures the lattice distance from the linearity region across E.  The face is
// subdivided into the linearity domains of delta and every domain S maps to
// -S - delta(S) * sum_{i in J} e_i, corrected by extra rays -e_i whenever the
// argmin edge pattern of S leaves the corresponding tangency direction free.

namespace tropdual {

struct FaceStratum {
  Polyhedron cell;
  std::vector<int> edges;         // complex ids of the edges attaining delta on the cell
  std::vector<Polyhedron> duals;  // tangent pieces contributed by the cell
};

struct FaceAnalysis {
  int face = -1;
  std::vector<int> J;                // standard directions inside the span of the face
  std::vector<FaceStratum> strata;   // delta domains meeting the relative interior
  std::vector<Polyhedron> whole;     // pieces attached to the face as a whole
  std::vector<std::string> notes;
};

inline std::vector<int> face_span_class(const Polyhedron& F) {
  IMat dirs = direction_space(F);
  const int base = rank_i(dirs);
  std::vector<int> J;
  for (int i = 0; i <= F.ambient; ++i) {
    IMat ext = dirs;
    ext.push_back(section_dir(i, F.ambient));
    if (rank_i(ext) == base) J.push_back(i);
  }
  return J;
}

namespace detail {

// delta_E as the affine form c - <g,p>: the gap phi_p(u) - phi_p(sigma_0) where u is
// the subdivision vertex completing the face's dual edge to the triangle dual to E.
struct DeltaForm {
  Rational c;
  IVec g;
};

inline DeltaForm delta_form(const TropComplex& tc, int face, int edge) {
  const auto& fs = tc.cells[face].sigma;
  const auto& es = tc.cells[edge].sigma;
  if (fs.size() != 2 || es.size() != 3)
    throw MathError("face analysis requires a smooth tropical surface");
  int u = -1;
  for (int t : es)
    if (std::find(fs.begin(), fs.end(), t) == fs.end()) u = t;
  if (u < 0) throw MathError("edge is not adjacent to the two-face");
  DeltaForm d;
  d.c = tc.f.terms[u].valuation - tc.f.terms[fs[0]].valuation;
  d.g = vec_sub(dehomogenized(tc.f.terms[u].exponents), dehomogenized(tc.f.terms[fs[0]].exponents));
  return d;
}

inline Rational delta_eval(const DeltaForm& d, const QVec& p) { return d.c - dot(p, d.g); }

inline IVec delta_row(const DeltaForm& d) {
  Int den = denominator(d.c);
  IVec row(d.g.size() + 1);
  row[0] = numerator(d.c);
  for (std::size_t j = 0; j < d.g.size(); ++j) row[j + 1] = -den * d.g[j];
  return row;
}

inline DeltaForm delta_diff(const DeltaForm& a, const DeltaForm& b) {
  return DeltaForm{a.c - b.c, vec_sub(a.g, b.g)};
}

// Image of S under p -> -p - delta(p) * w for an affine delta; rays and lineality
// directions that collapse to zero are dropped.
inline Polyhedron image_shift(const Polyhedron& S, const DeltaForm& d, const IVec& w) {
  QMat verts;
  for (const auto& v : S.vertices)
    verts.push_back(vec_sub(vec_neg(v), vec_scale(delta_eval(d, v), to_q(w))));
  IMat rays;
  for (const auto& r : S.rays) {
    IVec img = vec_add(vec_neg(r), vec_scale(Int(dot(d.g, r)), w));
    if (!is_zero_vec(img)) rays.push_back(img);
  }
  IMat lin;
  for (const auto& l : S.lineality) {
    IVec img = vec_add(vec_neg(l), vec_scale(Int(dot(d.g, l)), w));
    if (!is_zero_vec(img)) lin.push_back(img);
  }
  return make_polyhedron(S.ambient, verts, rays, lin);
}

inline Polyhedron with_ray(const Polyhedron& p, const IVec& d) {
  IMat rays = p.rays;
  rays.push_back(d);
  return make_polyhedron(p.ambient, p.vertices, rays, p.lineality);
}

inline std::vector<int> face_edge_cells(const TropComplex& tc, int face) {
  std::vector<int> edges;
  for (int ci : tc.cells[face].faces)
    if (tc.cells[ci].dim == 1) edges.push_back(ci);
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace detail

inline FaceAnalysis face_delta_subdivision(const TropComplex& tc, int face) {
  if (tc.n != 3) throw MathError("face analysis requires a surface in R^3");
  const TropCell& fc = tc.cells.at(face);
  if (fc.dim != 2) throw MathError("face analysis requires a two-face");
  FaceAnalysis fa;
  fa.face = face;
  fa.J = face_span_class(fc.region);

  std::vector<int> edges = detail::face_edge_cells(tc, face);
  if (edges.empty()) {
    fa.strata.push_back({fc.region, {}, {}});
    return fa;
  }
  std::vector<detail::DeltaForm> forms;
  std::vector<Polyhedron> bnd;
  for (int e : edges) {
    forms.push_back(detail::delta_form(tc, face, e));
    bnd.push_back(tc.cells[e].region);
  }

  const int m = static_cast<int>(edges.size());
  for (int mask = 1; mask < (1 << m); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) > 3) continue;
    std::vector<int> B;
    for (int k = 0; k < m; ++k)
      if (mask & (1 << k)) B.push_back(k);
    Polyhedron R = fc.region;
    for (std::size_t t = 1; t < B.size() && !R.empty(); ++t)
      R = cut_with(R, detail::delta_row(detail::delta_diff(forms[B[t]], forms[B[0]])), true);
    for (int k = 0; k < m && !R.empty(); ++k) {
      if (mask & (1 << k)) continue;
      R = cut_with(R, detail::delta_row(detail::delta_diff(forms[k], forms[B[0]])));
    }
    if (R.empty() || is_covered_by(R, bnd)) continue;

    QVec w = relint_point(R);
    IMat dirs = direction_space(R);
    std::vector<int> E;
    for (int k = 0; k < m; ++k) {
      if (detail::delta_eval(forms[k], w) != detail::delta_eval(forms[B[0]], w)) continue;
      bool same = true;
      for (const IVec& dv : dirs)
        if (dot(forms[k].g, dv) != dot(forms[B[0]].g, dv)) same = false;
      if (same) E.push_back(edges[k]);
    }
    if (static_cast<int>(E.size()) != 3 - R.dim())
      throw MathError("valuations are not generic: argmin multiplicity deviates from 3 - dim S");
    bool seen = false;
    for (const auto& s : fa.strata)
      if (s.cell == R) seen = true;
    if (!seen) fa.strata.push_back({R, E, {}});
  }
  std::stable_sort(fa.strata.begin(), fa.strata.end(),
                   [](const FaceStratum& a, const FaceStratum& b) { return a.cell.dim() > b.cell.dim(); });
  return fa;
}

// Value of the gap function at a point of the face.
inline Rational face_delta(const TropComplex& tc, int face, const QVec& p) {
  if (!contains_point(tc.cells.at(face).region, p))
    throw MathError("point is not on the face");
  std::vector<int> edges = detail::face_edge_cells(tc, face);
  if (edges.empty()) throw MathError("delta is infinite on a face without edges");
  bool first = true;
  Rational best;
  for (int e : edges) {
    Rational v = detail::delta_eval(detail::delta_form(tc, face, e), p);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

inline bool is_purely_primitive(const TropComplex& tc, int face, const Polyhedron& S) {
  FaceAnalysis fa = face_delta_subdivision(tc, face);
  const FaceStratum* st = nullptr;
  for (const auto& s : fa.strata)
    if (s.cell == S) st = &s;
  if (!st) throw MathError("not a cell of the delta subdivision");
  if (S.dim() != 1 || !S.lineality.empty() || S.rays.empty() || S.vertices.empty())
    throw MathError("purely-primitive test undefined");
  std::vector<int> edges = detail::face_edge_cells(tc, face);
  const QVec& q = S.vertices[0];
  const IVec& v = S.rays[0];
  Rational best;
  bool first = true;
  std::vector<std::pair<int, Rational>> vals;
  for (int e : edges) {
    Rational val = detail::delta_eval(detail::delta_form(tc, face, e), q);
    vals.emplace_back(e, val);
    if (first || val < best) best = val;
    first = false;
  }
  int extra = -1;
  for (const auto& [e, val] : vals) {
    if (val != best) continue;
    if (std::find(st->edges.begin(), st->edges.end(), e) != st->edges.end()) continue;
    if (extra >= 0) throw MathError("purely-primitive test needs a unique complementary edge");
    extra = e;
  }
  if (extra < 0) throw MathError("purely-primitive test needs a unique complementary edge");
  detail::DeltaForm d = detail::delta_form(tc, face, extra);
  return Rational(-dot(d.g, v)) == 1;
}

namespace detail {

// v = ai * e_i + aj * e_j with integer coefficients; directions are the standard
// tangency directions in section coordinates, whose lattice span is saturated.
inline void decompose_pair(const IVec& v, const IVec& ei, const IVec& ej, Int& ai, Int& aj) {
  const int n = static_cast<int>(v.size());
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) {
      Int det = ei[r] * ej[s] - ei[s] * ej[r];
      if (det == 0) continue;
      Rational qi = Rational(v[r] * ej[s] - v[s] * ej[r]) / Rational(det);
      Rational qj = Rational(ei[r] * v[s] - ei[s] * v[r]) / Rational(det);
      if (denominator(qi) != 1 || denominator(qj) != 1) continue;
      ai = numerator(qi);
      aj = numerator(qj);
      IVec test(n);
      bool ok = true;
      for (int k = 0; k < n; ++k) {
        test[k] = ai * ei[k] + aj * ej[k];
        if (test[k] != v[k]) ok = false;
      }
      if (ok) return;
    }
  }
  throw MathError("stratum direction is not in the lattice span of the face");
}

}  // namespace detail

inline FaceAnalysis face_dual_analysis(const TropComplex& tc, int face) {
  if (!is_smooth(tc.f)) throw MathError("face duals require a smooth tropical surface");
  FaceAnalysis fa = face_delta_subdivision(tc, face);
  const Polyhedron& F = tc.cells[face].region;
  const int n = tc.n;
  if (fa.J.size() > 2)
    throw MathError("face span contains more than two standard directions");

  std::vector<int> edges = detail::face_edge_cells(tc, face);
  std::map<int, detail::DeltaForm> fmap;
  std::map<int, IVec> dmap;
  for (int e : edges) {
    fmap.emplace(e, detail::delta_form(tc, face, e));
    dmap.emplace(e, edge_geometry(tc.cells[e].region).direction);
  }

  if (fa.J.empty()) {
    fa.whole.push_back(negate(F));
  } else if (fa.J.size() == 1) {
    const int i = fa.J[0];
    const IVec ei = section_dir(i, n);
    const IVec mei = vec_neg(ei);
    if (recession_contains(F, mei)) {
      // The -e_i tails sweep the whole face: only the non-parallel boundary edges
      // and the vertices without a parallel boundary edge survive in the closure.
      for (int e : edges)
        if (!parallel(dmap[e], ei)) fa.whole.push_back(negate(tc.cells[e].region));
      for (int ci : tc.cells[face].faces) {
        if (tc.cells[ci].dim != 0) continue;
        bool adj_par = false;
        for (int e : edges) {
          const auto& ef = tc.cells[e].faces;
          if (std::find(ef.begin(), ef.end(), ci) != ef.end() && parallel(dmap[e], ei)) adj_par = true;
        }
        if (!adj_par)
          fa.whole.push_back(detail::with_ray(make_point(vec_neg(tc.cells[ci].region.vertices[0])), mei));
      }
    } else {
      for (auto& st : fa.strata) {
        if (st.edges.empty())
          throw MathError("face with a standard direction in its span has no edges");
        const detail::DeltaForm& d = fmap.at(st.edges[0]);
        int notpar = 0;
        for (int e : st.edges)
          if (!parallel(dmap[e], ei)) ++notpar;
        Polyhedron img = detail::image_shift(st.cell, d, ei);
        if (notpar == 1)
          st.duals = {img};
        else
          st.duals = {detail::with_ray(img, mei)};
      }
    }
  } else {
    const int i = fa.J[0], j = fa.J[1];
    const IVec ei = section_dir(i, n), ej = section_dir(j, n);
    const IVec mei = vec_neg(ei), mej = vec_neg(ej);
    const IVec eij = vec_add(ei, ej);
    for (auto& st : fa.strata) {
      if (st.edges.empty())
        throw MathError("face with standard directions in its span has no edges");
      const detail::DeltaForm& d = fmap.at(st.edges[0]);
      std::vector<IVec> ds;
      for (int e : st.edges) ds.push_back(dmap.at(e));
      Polyhedron img = detail::image_shift(st.cell, d, eij);
      const int sd = st.cell.dim();
      if (sd == 2) {
        if (!parallel(ds[0], ei) && !parallel(ds[0], ej)) {
          st.duals = {img};
        } else {
          const bool is_j = parallel(ds[0], ej);
          const IVec eb = is_j ? ej : ei;
          const IVec meb = is_j ? mej : mei;
          if (!recession_contains(F, meb)) {
            st.duals = {detail::with_ray(img, meb)};
          } else {
            // Only the boundary path transverse to e_b survives; lambda is free at
            // its vertices interior to F.
            for (const Polyhedron& T : all_proper_faces(st.cell))
              if (T.dim() == 1 && !parallel(edge_geometry(T).direction, eb))
                st.duals.push_back(detail::image_shift(T, d, eij));
            for (const auto& v : st.cell.vertices) {
              bool on_bnd = false;
              for (int e : edges)
                if (contains_point(tc.cells[e].region, v)) on_bnd = true;
              if (on_bnd) continue;
              QVec b = vec_sub(vec_neg(v), vec_scale(detail::delta_eval(d, v), to_q(eij)));
              st.duals.push_back(detail::with_ray(make_point(b), meb));
            }
          }
        }
      } else if (sd == 1) {
        if (!parallel(ds[0], ds[1])) {
          const bool zi = parallel(ds[0], ei) || parallel(ds[1], ei);
          const bool zj = parallel(ds[0], ej) || parallel(ds[1], ej);
          if (zi && zj)
            st.duals = {img};
          else if (zi)
            st.duals = {detail::with_ray(img, mej)};
          else if (zj)
            st.duals = {detail::with_ray(img, mei)};
          else
            st.duals = {detail::with_ray(img, mei), detail::with_ray(img, mej)};
        } else if (st.cell.rays.empty() && st.cell.lineality.empty()) {
          st.duals = {detail::with_ray(detail::with_ray(img, mei), mej)};
        } else if (!st.cell.lineality.empty()) {
          st.duals = {detail::with_ray(img, vec_neg(eij))};
        } else {
          const QVec& q = st.cell.vertices[0];
          Int ai, aj;
          detail::decompose_pair(st.cell.rays[0], ei, ej, ai, aj);
          bool pp = false;
          bool pp_known = true;
          try {
            pp = is_purely_primitive(tc, face, st.cell);
          } catch (const MathError&) {
            pp_known = false;
          }
          QVec b = vec_sub(vec_neg(q), vec_scale(detail::delta_eval(d, q), to_q(eij)));
          Polyhedron at_q = make_point(b);
          Polyhedron quadrant = detail::with_ray(detail::with_ray(at_q, mei), mej);
          if (ai == -1 && aj == -1 && pp_known) {
            if (pp)
              st.duals = {img, detail::with_ray(at_q, mei), detail::with_ray(at_q, mej)};
            else
              st.duals = {img, quadrant};
          } else if (ai == -1 && aj == 0 && pp_known) {
            st.duals = pp ? std::vector<Polyhedron>{detail::with_ray(at_q, mej)}
                          : std::vector<Polyhedron>{quadrant};
          } else if (ai == 0 && aj == -1 && pp_known) {
            st.duals = pp ? std::vector<Polyhedron>{detail::with_ray(at_q, mei)}
                          : std::vector<Polyhedron>{quadrant};
          } else if (ai == -1 && aj < -1 && pp_known && !pp) {
            st.duals = {detail::with_ray(img, mei), quadrant};
          } else if (ai < -1 && aj == -1 && pp_known && !pp) {
            st.duals = {detail::with_ray(img, mej), quadrant};
          } else {
            st.duals = {detail::with_ray(img, mei), detail::with_ray(img, mej)};
          }
        }
      } else {
        int npi = 0, npj = 0;
        for (const auto& dv : ds) {
          if (!parallel(dv, ei)) ++npi;
          if (!parallel(dv, ej)) ++npj;
        }
        int ndirs = 3;
        if (parallel(ds[0], ds[1]) || parallel(ds[0], ds[2]) || parallel(ds[1], ds[2])) ndirs = 2;
        if (parallel(ds[0], ds[1]) && parallel(ds[0], ds[2])) ndirs = 1;
        const bool zi = (npi == 1);
        const bool zj = (npj == 1);
        if (zi && zj) {
          st.duals = {img};
        } else if (zi) {
          st.duals = {detail::with_ray(img, mej)};
        } else if (zj) {
          st.duals = {detail::with_ray(img, mei)};
        } else if (ndirs == 2) {
          st.duals = {detail::with_ray(img, mei), detail::with_ray(img, mej)};
        } else {
          st.duals = {detail::with_ray(detail::with_ray(img, mei), mej)};
          if (npi == 2 && npj == 2)
            fa.notes.push_back(
                "zero-dimensional stratum whose three edge directions include both standard "
                "directions of the face span: no argmin constraint applies, emitting the full "
                "translated quadrant");
        }
      }
    }
  }

  // When the recession cone of F meets the span of the pulled-back tangency rays
  // only at the origin, the whole dual face must be -F - sum of those rays.
  bool hyp = false;
  if (fa.J.empty()) {
    hyp = true;
  } else if (fa.J.size() == 1) {
    hyp = !recession_contains(F, vec_neg(section_dir(fa.J[0], n)));
  } else {
    IMat rays;
    for (int idx : fa.J) rays.push_back(vec_neg(section_dir(idx, n)));
    Polyhedron C = make_polyhedron(n, {QVec(n, Rational(0))}, rays);
    hyp = intersect(recession_cone(F), C).dim() <= 0;
  }
  if (hyp) {
    Polyhedron target = negate(F);
    for (int idx : fa.J) target = detail::with_ray(target, vec_neg(section_dir(idx, n)));
    std::vector<Polyhedron> all = fa.whole;
    for (const auto& st : fa.strata)
      all.insert(all.end(), st.duals.begin(), st.duals.end());
    if (!same_support(all, {target}))
      throw MathError("face dual does not match -F - sum of coordinate rays");
  }
  return fa;
}

inline std::vector<Polyhedron> face_dual(const TropComplex& tc, int face) {
  FaceAnalysis fa = face_dual_analysis(tc, face);
  std::vector<Polyhedron> out = fa.whole;
  for (const auto& st : fa.strata)
    out.insert(out.end(), st.duals.begin(), st.duals.end());
  return out;
}

// Every tangent piece of the dual, deduplicated but not yet organized into a complex.
inline std::vector<Polyhedron> surface_dual_pieces(const TropComplex& tc) {
  if (tc.n != 3) throw MathError("surface duals require a surface in R^3");
  if (!is_smooth(tc.f)) throw MathError("surface duals require a smooth tropical surface");
  std::vector<Polyhedron> pieces;
  auto add = [&](const Polyhedron& p) {
    if (p.empty()) return;
    if (std::find(pieces.begin(), pieces.end(), p) == pieces.end()) pieces.push_back(p);
  };
  for (const auto& cell : tc.cells) {
    if (cell.dim != 0) continue;
    TangentFamily fam = vertex_tangent_family(tc, cell.region.vertices[0]);
    for (const auto& p : fam.realized) add(p);
  }
  for (std::size_t ci = 0; ci < tc.cells.size(); ++ci) {
    if (tc.cells[ci].dim == 1)
      for (const auto& p : edge_dual_union(tc, static_cast<int>(ci))) add(p);
    if (tc.cells[ci].dim == 2)
      for (const auto& p : face_dual(tc, static_cast<int>(ci))) add(p);
  }
  std::sort(pieces.begin(), pieces.end(), poly_less);
  return pieces;
}

namespace detail {

inline void drop_covered(std::vector<Polyhedron>& ps) {
  for (std::size_t k = 0; k < ps.size();) {
    std::vector<Polyhedron> others;
    for (std::size_t t = 0; t < ps.size(); ++t)
      if (t != k) others.push_back(ps[t]);
    if (!others.empty() && is_covered_by(ps[k], others))
      ps.erase(ps.begin() + static_cast<std::ptrdiff_t>(k));
    else
      ++k;
  }
}

}  // namespace detail

// The dual complex: maximal cells obtained by merging tangent pieces whose union is
// convex, together with all their proper faces.
inline std::vector<Polyhedron> assemble_surface_dual(const TropComplex& tc) {
  std::vector<Polyhedron> ps = surface_dual_pieces(tc);
  detail::drop_covered(ps);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < ps.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < ps.size() && !changed; ++b) {
        if (ps[a].dim() != ps[b].dim()) continue;
        Polyhedron h = convex_join(ps[a], ps[b]);
        if (h.dim() != ps[a].dim()) continue;
        if (is_covered_by(h, {ps[a], ps[b]})) {
          ps[a] = h;
          ps.erase(ps.begin() + static_cast<std::ptrdiff_t>(b));
          changed = true;
        }
      }
    }
  }
  detail::drop_covered(ps);
  std::vector<Polyhedron> out = ps;
  for (const auto& p : ps)
    for (const auto& f : all_proper_faces(p))
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

inline Int dual_defect(const std::vector<Polyhedron>& pieces, int n) {
  if (pieces.empty()) throw MathError("dual defect of an empty dual");
  int mx = 0;
  for (const auto& p : pieces) mx = std::max(mx, p.dim());
  return Int(n - 1 - mx);
}

}  // namespace tropdual
