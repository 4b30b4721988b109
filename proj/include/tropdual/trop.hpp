#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tropdual/polyhedron.hpp"

namespace tropdual {

struct TropTerm {
  IVec exponents;  // length n+1, homogeneous of degree d
  Rational valuation;
};

struct TropPolynomial {
  int n = 0;
  std::vector<TropTerm> terms;

  Int degree() const {
    if (terms.empty()) return 0;
    Int d = 0;
    for (const Int& e : terms[0].exponents) d += e;
    return d;
  }
};

// One coefficient given as a finite t-series sum(scalar * t^exp).
struct SeriesTerm {
  IVec exponents;
  std::vector<std::pair<Rational, Rational>> t_terms;  // (t-exponent, scalar)
};

inline void validate_polynomial(const TropPolynomial& f) {
  if (f.n < 1) throw ParseError("ambient_dim must be at least 1");
  if (f.terms.empty()) throw ParseError("terms: empty polynomial");
  Int d = f.degree();
  if (d < 1) throw ParseError("terms[0]: degree must be at least 1");
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    const auto& u = f.terms[i].exponents;
    const std::string path = "terms[" + std::to_string(i) + "]";
    if (static_cast<int>(u.size()) != f.n + 1) throw ParseError(path + ".exponents: expected length " + std::to_string(f.n + 1));
    Int s = 0;
    for (const Int& e : u) {
      if (e < 0) throw ParseError(path + ".exponents: negative exponent");
      s += e;
    }
    if (s != d) throw ParseError(path + ".exponents: inhomogeneous term (degree " + to_string(s) + ", expected " + to_string(d) + ")");
    for (std::size_t j = 0; j < i; ++j)
      if (f.terms[j].exponents == u) throw ParseError(path + ".exponents: duplicate exponent vector");
  }
  for (int v = 0; v <= f.n; ++v) {
    bool used = false;
    for (const auto& t : f.terms)
      if (t.exponents[v] > 0) used = true;
    if (!used)
      throw MathError("variable x" + std::to_string(v) + " does not occur: the hypersurface is a cone over a hypersurface");
  }
}

inline TropPolynomial tropicalize_t_polynomial(int n, const std::vector<SeriesTerm>& poly) {
  TropPolynomial f;
  f.n = n;
  for (const auto& s : poly) {
    if (s.t_terms.empty()) continue;  // zero coefficient, term dropped
    TropTerm t;
    t.exponents = s.exponents;
    t.valuation = s.t_terms[0].first;
    for (const auto& [e, c] : s.t_terms) {
      if (c == 0) throw ParseError("t_terms: zero scalar entry");
      t.valuation = std::min(t.valuation, e);
    }
    f.terms.push_back(std::move(t));
  }
  return f;
}

inline IVec dehomogenized(const IVec& u) { return IVec(u.begin() + 1, u.end()); }

// phi_p(u) = nu(c_u) - <p, u> over the full R^{n+1}.
inline Rational phi_full(const TropPolynomial& f, int i, const QVec& p) {
  return f.terms[i].valuation - dot(p, f.terms[i].exponents);
}

// Same in the p0 = 0 section coordinates of R^n.
inline Rational phi(const TropPolynomial& f, int i, const QVec& p) {
  return f.terms[i].valuation - dot(p, dehomogenized(f.terms[i].exponents));
}

inline QVec lift_section(const QVec& p) {
  QVec q(p.size() + 1, Rational(0));
  std::copy(p.begin(), p.end(), q.begin() + 1);
  return q;
}

inline std::vector<int> min_support(const TropPolynomial& f, const QVec& p) {
  if (p.size() != static_cast<std::size_t>(f.n + 1)) throw MathError("min_support: point must lie in R^{n+1}");
  std::vector<int> arg;
  Rational best;
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    Rational v = phi_full(f, static_cast<int>(i), p);
    if (arg.empty() || v < best) {
      best = v;
      arg = {static_cast<int>(i)};
    } else if (v == best) {
      arg.push_back(static_cast<int>(i));
    }
  }
  return arg;
}

struct SubdivisionCell {
  std::vector<int> terms;  // sorted indices into f.terms
  int dim = 0;
};

using RegularSubdivision = std::vector<SubdivisionCell>;

inline int affine_dim_of_terms(const TropPolynomial& f, const std::vector<int>& idx) {
  IMat diffs;
  for (std::size_t i = 1; i < idx.size(); ++i)
    diffs.push_back(vec_sub(dehomogenized(f.terms[idx[i]].exponents), dehomogenized(f.terms[idx[0]].exponents)));
  return rank_i(diffs);
}

inline RegularSubdivision regular_subdivision(const TropPolynomial& f) {
  RegularSubdivision out;
  if (f.terms.size() == 1) {
    out.push_back({{0}, 0});
    return out;
  }
  // lower hull of (u dehomogenized, nu(c_u)), taken as facets of hull + upward ray
  QMat lifted;
  for (const auto& t : f.terms) {
    QVec v = to_q(dehomogenized(t.exponents));
    v.push_back(t.valuation);
    lifted.push_back(std::move(v));
  }
  IVec up(f.n + 1, 0);
  up[f.n] = 1;
  HRep h = to_hrep_from_generators(f.n + 1, lifted, {up}, {});
  for (const auto& row : h.ineq) {
    if (row[f.n + 1] <= 0) continue;  // not a floor facet
    std::vector<int> cell;
    for (std::size_t i = 0; i < lifted.size(); ++i) {
      Rational s = Rational(row[0]);
      for (int j = 0; j <= f.n; ++j) s += Rational(row[j + 1]) * lifted[i][j];
      if (s == 0) cell.push_back(static_cast<int>(i));
    }
    out.push_back({cell, affine_dim_of_terms(f, cell)});
  }
  std::sort(out.begin(), out.end(),
            [](const SubdivisionCell& a, const SubdivisionCell& b) { return a.terms < b.terms; });
  return out;
}

struct TropCell {
  std::vector<int> sigma;   // dual subdivision face, sorted term indices
  Polyhedron region;        // closed cell in section coordinates R^n
  int dim = 0;
  std::vector<int> faces;   // indices of proper faces (all, not just facets)
  std::vector<int> cofaces; // indices of cells having this one as a face
};

struct TropComplex {
  int n = 0;
  TropPolynomial f;
  RegularSubdivision subdivision;
  std::vector<TropCell> cells;

  std::vector<int> cells_of_dim(int d) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].dim == d) out.push_back(static_cast<int>(i));
    return out;
  }
};

inline int find_cell(const TropComplex& tc, const std::vector<int>& sigma) {
  for (std::size_t i = 0; i < tc.cells.size(); ++i)
    if (tc.cells[i].sigma == sigma) return static_cast<int>(i);
  throw MathError("no cell dual to the given subdivision face");
}

// Closed dual cell of a subdivision face in section coordinates.
inline Polyhedron dual_region(const TropPolynomial& f, const std::vector<int>& sigma) {
  HRep h;
  h.dim = f.n;
  const int s0 = sigma[0];
  auto affine_row = [&](const Rational& a0, const IVec& lin) {
    Int den = denominator(a0);
    IVec row(f.n + 1);
    row[0] = numerator(a0);
    for (int j = 0; j < f.n; ++j) row[j + 1] = lin[j] * den;
    return row;
  };
  for (std::size_t k = 1; k < sigma.size(); ++k) {
    int u = sigma[k];
    // phi(s0) - phi(u) = 0
    h.eq.push_back(affine_row(f.terms[s0].valuation - f.terms[u].valuation,
                              vec_sub(dehomogenized(f.terms[u].exponents), dehomogenized(f.terms[s0].exponents))));
  }
  for (std::size_t w = 0; w < f.terms.size(); ++w) {
    if (std::binary_search(sigma.begin(), sigma.end(), static_cast<int>(w))) continue;
    // phi(w) - phi(s0) >= 0
    h.ineq.push_back(affine_row(f.terms[w].valuation - f.terms[s0].valuation,
                                vec_sub(dehomogenized(f.terms[s0].exponents), dehomogenized(f.terms[w].exponents))));
  }
  return from_hrep(h);
}

inline TropComplex dual_complex(const TropPolynomial& f) {
  TropComplex tc;
  tc.n = f.n;
  tc.f = f;
  tc.subdivision = regular_subdivision(f);

  std::vector<std::vector<int>> sigmas;
  for (const auto& cell : tc.subdivision) {
    QMat pts;
    for (int i : cell.terms) pts.push_back(to_q(dehomogenized(f.terms[i].exponents)));
    for (const auto& local : polytope_faces(pts)) {
      if (local.size() < 2) continue;
      std::vector<int> global;
      for (int l : local) global.push_back(cell.terms[l]);
      std::sort(global.begin(), global.end());
      sigmas.push_back(std::move(global));
    }
  }
  std::sort(sigmas.begin(), sigmas.end());
  sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());

  for (auto& sigma : sigmas) {
    TropCell c;
    c.region = dual_region(f, sigma);
    c.dim = c.region.dim();
    if (c.dim != f.n - affine_dim_of_terms(f, sigma))
      throw MathError("degenerate duality: cell dimension does not complement its dual face");
    c.sigma = std::move(sigma);
    tc.cells.push_back(std::move(c));
  }
  std::sort(tc.cells.begin(), tc.cells.end(), [](const TropCell& a, const TropCell& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.sigma < b.sigma;
  });
  for (std::size_t i = 0; i < tc.cells.size(); ++i)
    for (std::size_t j = 0; j < tc.cells.size(); ++j) {
      if (i == j) continue;
      const auto& si = tc.cells[i].sigma;
      const auto& sj = tc.cells[j].sigma;
      if (si.size() < sj.size() && std::includes(sj.begin(), sj.end(), si.begin(), si.end()))
        tc.cells[i].faces.push_back(static_cast<int>(j));  // sigma_j strictly contains sigma_i
      if (sj.size() < si.size() && std::includes(si.begin(), si.end(), sj.begin(), sj.end()))
        tc.cells[i].cofaces.push_back(static_cast<int>(j));
    }
  return tc;
}

inline bool is_smooth(const TropPolynomial& f) {
  for (const auto& cell : regular_subdivision(f)) {
    if (static_cast<int>(cell.terms.size()) != cell.dim + 1) return false;  // not a simplex
    IMat diffs;
    for (std::size_t i = 1; i < cell.terms.size(); ++i)
      diffs.push_back(vec_sub(dehomogenized(f.terms[cell.terms[i]].exponents),
                              dehomogenized(f.terms[cell.terms[0]].exponents)));
    // unimodular in the saturated lattice of its own affine span
    if (hnf_basis(diffs) != saturation(diffs, f.n)) return false;
  }
  return true;
}

namespace detail {

// phi_i - phi_j as an affine form (a0, linear part) on section coordinates.
inline std::pair<Rational, IVec> phi_difference(const TropPolynomial& f, int i, int j) {
  return {f.terms[i].valuation - f.terms[j].valuation,
          vec_sub(dehomogenized(f.terms[j].exponents), dehomogenized(f.terms[i].exponents))};
}

inline bool vanishes_on(const std::pair<Rational, IVec>& form, const Polyhedron& region, const QVec& witness,
                        const IMat& dirs) {
  if (form.first + dot(form.second, witness) != 0) return false;
  for (const auto& d : dirs)
    if (dot(form.second, d) != 0) return false;
  (void)region;
  return true;
}

// Field-wise order on canonical polyhedra, cheaper than poly_less (no rank).
struct RegionLess {
  bool operator()(const Polyhedron& a, const Polyhedron& b) const {
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
};

// The affine form a0 + <lin, x> vanishes somewhere on the region iff its range
// there contains 0; checking the generators avoids a full cut for most rows.
inline bool row_meets(const IVec& row, const Polyhedron& region) {
  const std::size_t n = row.size() - 1;
  for (const auto& l : region.lineality) {
    Int s = 0;
    for (std::size_t j = 0; j < n; ++j) s += row[j + 1] * l[j];
    if (s != 0) return true;  // unbounded in both directions
  }
  bool sup_ge = false, inf_le = false;
  for (const auto& r : region.rays) {
    Int s = 0;
    for (std::size_t j = 0; j < n; ++j) s += row[j + 1] * r[j];
    if (s > 0) sup_ge = true;
    if (s < 0) inf_le = true;
  }
  for (const auto& v : region.vertices) {
    Rational s(row[0]);
    for (std::size_t j = 0; j < n; ++j) s += Rational(row[j + 1]) * v[j];
    if (s >= 0) sup_ge = true;
    if (s <= 0) inf_le = true;
    if (sup_ge && inf_le) return true;
  }
  return sup_ge && inf_le;
}

inline bool generic_rec(const TropPolynomial& f, const Polyhedron& region,
                        std::set<Polyhedron, RegionLess>& seen) {
  if (!seen.insert(region).second) return true;

  const QVec witness = relint_point(region);
  const IMat dirs = direction_space(region);
  std::vector<int> reps;  // one representative per value class on this region
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    bool fresh = true;
    for (int r : reps)
      if (vanishes_on(phi_difference(f, static_cast<int>(i), r), region, witness, dirs)) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(static_cast<int>(i));
  }
  const int surplus = static_cast<int>(f.terms.size() - reps.size());
  const int dim = region.dim();
  if (dim > f.n - surplus) return false;
  if (dim == 0) return true;

  auto value_at = [&](const IVec& row, const QVec& v) {
    Rational s(row[0]);
    for (int j = 0; j < f.n; ++j) s += Rational(row[j + 1]) * v[j];
    return s;
  };
  // Checking a zero-dimensional child only needs the number of distinct term
  // values at the point, so cuts of one-dimensional regions are solved inline.
  auto point_ok = [&](const QVec& p) {
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < f.terms.size(); ++i) vals.push_back(phi(f, i, p));
    std::sort(vals.begin(), vals.end());
    const auto distinct = std::unique(vals.begin(), vals.end()) - vals.begin();
    return static_cast<int>(f.terms.size()) - static_cast<int>(distinct) <= f.n;
  };

  std::set<IVec> rows;  // distinct coincidence hyperplanes on this region
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      auto form = phi_difference(f, reps[a], reps[b]);
      Int den = denominator(form.first);
      IVec row(f.n + 1);
      row[0] = numerator(form.first);
      bool linear_zero = true;
      for (int j = 0; j < f.n; ++j) {
        row[j + 1] = form.second[j] * den;
        if (row[j + 1] != 0) linear_zero = false;
      }
      if (linear_zero) continue;  // constant nonzero difference, empty cut
      Int g = gcd_vec(row);
      for (auto& x : row) x /= g;
      for (const auto& x : row)
        if (x != 0) {
          if (x < 0)
            for (auto& y : row) y = -y;
          break;
        }
      if (!rows.insert(row).second) continue;
      if (dim == 1) {
        const QVec& v0 = region.vertices[0];
        Rational s0 = value_at(row, v0);
        auto slope_along = [&](const IVec& dir) {
          Int s = 0;
          for (int j = 0; j < f.n; ++j) s += row[j + 1] * dir[j];
          return s;
        };
        QVec p;
        bool hit = false;
        if (!region.lineality.empty()) {
          Int slope = slope_along(region.lineality[0]);
          if (slope != 0) {
            Rational t = -s0 / Rational(slope);
            p = v0;
            for (int j = 0; j < f.n; ++j) p[j] += t * Rational(region.lineality[0][j]);
            hit = true;
          }
        } else if (region.vertices.size() == 2) {
          Rational s1 = value_at(row, region.vertices[1]);
          if (s0 == 0) {
            p = v0;
            hit = true;
          } else if (s1 == 0) {
            p = region.vertices[1];
            hit = true;
          } else if ((s0 < 0) != (s1 < 0)) {
            Rational t = s0 / (s0 - s1);
            p = v0;
            for (int j = 0; j < f.n; ++j) p[j] += t * (region.vertices[1][j] - v0[j]);
            hit = true;
          }
        } else if (!region.rays.empty()) {
          Int slope = slope_along(region.rays[0]);
          if (s0 == 0) {
            p = v0;
            hit = true;
          } else if (slope != 0 && (s0 < 0) != (slope < 0)) {
            Rational t = -s0 / Rational(slope);
            p = v0;
            for (int j = 0; j < f.n; ++j) p[j] += t * Rational(region.rays[0][j]);
            hit = true;
          }
        }
        if (hit && !point_ok(p)) return false;
        continue;
      }
      if (!row_meets(row, region)) continue;
      Polyhedron child = cut_with(region, row, /*as_equality=*/true);
      if (child.empty()) continue;
      if (!generic_rec(f, child, seen)) return false;
    }
  return true;
}

}  // namespace detail

inline bool has_generic_valuations(const TropPolynomial& f) {
  TropComplex tc = dual_complex(f);
  std::set<Polyhedron, detail::RegionLess> seen;
  for (int ci : tc.cells_of_dim(f.n - 1))
    if (!detail::generic_rec(f, tc.cells[ci].region, seen)) return false;
  return true;
}

}  // namespace tropdual
