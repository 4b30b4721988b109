#include <catch2/catch_amalgamated.hpp>

#include <tropdual/curve_dual.hpp>
#include <tropdual/tangent.hpp>

#include "support/fixtures.hpp"

using namespace tropdual;
using namespace tropdual::fixtures;

namespace {

Polyhedron seg(std::initializer_list<long> a, std::initializer_list<long> b) {
  return make_polyhedron(2, {q_point(a), q_point(b)});
}

Polyhedron ray(std::initializer_list<long> a, IVec d) {
  return make_polyhedron(2, {q_point(a)}, {std::move(d)});
}

void check_cells(const WeightedComplex& wc, std::vector<WeightedCell> expected) {
  REQUIRE(wc.cells.size() == expected.size());
  for (const auto& c : wc.cells) {
    bool found = false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (expected[i].cell == c.cell && expected[i].multiplicity == c.multiplicity) {
        expected.erase(expected.begin() + static_cast<std::ptrdiff_t>(i));
        found = true;
        break;
      }
    CHECK(found);
  }
  CHECK(expected.empty());
}

bool same_terms(const TropPolynomial& a, const TropPolynomial& b) {
  if (a.n != b.n || a.terms.size() != b.terms.size()) return false;
  for (const auto& t : a.terms) {
    bool found = false;
    for (const auto& s : b.terms)
      if (s.exponents == t.exponents && s.valuation == t.valuation) found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("dual curve of the first cubic") {
  WeightedComplex wc = dual_curve(dual_complex(x1_curve()));
  check_cells(wc, {
                      {ray({-1, -1}, {1, 1}), 2},
                      {ray({0, 0}, {-1, 0}), 2},
                      {ray({-1, 0}, {0, -1}), 2},
                      {ray({-2, -3}, {0, -1}), 2},
                      {ray({0, 0}, {2, 1}), 1},
                      {seg({-1, -1}, {-2, -3}), 1},
                      {ray({-1, 0}, {-1, 1}), 1},
                      {ray({0, 0}, {0, -1}), 1},
                      {ray({-1, 0}, {1, 1}), 1},
                      {ray({-1, -1}, {-1, 0}), 1},
                      {ray({-2, -3}, {-1, 0}), 1},
                  });
  CHECK(check_balancing(wc));
  CHECK(curve_dual_degree(wc) == 6);
}

TEST_CASE("dual curve of the second cubic") {
  WeightedComplex wc = dual_curve(dual_complex(x2_curve()));
  check_cells(wc, {
                      {ray({-1, -1}, {1, 1}), 2},
                      {ray({0, 0}, {-1, 0}), 2},
                      {ray({-2, 0}, {0, -1}), 2},
                      {ray({-1, -1}, {0, -1}), 2},
                      {ray({-1, -1}, {-1, 0}), 2},
                      {ray({0, 0}, {2, 1}), 1},
                      {ray({-2, 0}, {-1, 1}), 1},
                      {ray({0, 0}, {0, -1}), 1},
                      {ray({-2, 0}, {1, 1}), 1},
                  });
  CHECK(check_balancing(wc));
  CHECK(curve_dual_degree(wc) == 6);
}

TEST_CASE("conics with the same dual support") {
  WeightedComplex w1 = dual_curve(dual_complex(x1_conic()));
  WeightedComplex w2 = dual_curve(dual_complex(x2_conic()));
  std::vector<WeightedCell> three = {
      {ray({0, 0}, {1, 1}), 2},
      {ray({0, 0}, {-1, 0}), 2},
      {ray({0, 0}, {0, -1}), 2},
  };
  check_cells(w1, three);
  check_cells(w2, three);
  CHECK(curve_dual_degree(w1) == 2);

  DecoratedComplex d1 = decorate(w1, dual_complex(x1_conic()));
  DecoratedComplex d2 = decorate(w2, dual_complex(x2_conic()));
  CHECK(d1.marks.empty());
  REQUIRE(d2.marks.size() == 1);
  CHECK(d2.marks[0] == q_point({1, 1}));
}

TEST_CASE("decoration marks") {
  TropComplex t1 = dual_complex(x1_curve());
  CHECK(decorate(dual_curve(t1), t1).marks.empty());

  TropComplex t2 = dual_complex(x2_curve());
  DecoratedComplex d2 = decorate(dual_curve(t2), t2);
  REQUIRE(d2.marks.size() == 1);
  CHECK(d2.marks[0] == q_point({-2, -1}));
}

TEST_CASE("balancing") {
  CHECK(check_balancing(dual_curve(dual_complex(x2_curve()))));
  WeightedComplex lone{2, {{ray({0, 0}, {1, 0}), 1}}};
  CHECK_FALSE(check_balancing(lone));
  WeightedComplex line{2,
                       {{ray({0, 0}, {1, 1}), 1}, {ray({0, 0}, {-1, 0}), 1}, {ray({0, 0}, {0, -1}), 1}}};
  CHECK(check_balancing(line));
}

TEST_CASE("dual curve preconditions") {
  CHECK_THROWS_AS(dual_curve(dual_complex(quadric_cone())), MathError);   // not a plane curve
  CHECK_THROWS_AS(dual_curve(dual_complex(fermat_conic())), MathError);   // not smooth
  TropPolynomial l;
  l.n = 2;
  l.terms = {term({1, 0, 0}, 0), term({0, 1, 0}, 0), term({0, 0, 1}, 0)};
  CHECK_THROWS_AS(dual_curve(dual_complex(l)), MathError);  // degree 1
}

TEST_CASE("ray multiplicity counts") {
  // per-direction totals 2*alpha_i + beta_i; both cubics give the same multiset
  std::map<IVec, Int> expected{
      {{1, 1}, 3}, {{-1, 0}, 4}, {{0, -1}, 5}, {{2, 1}, 1}, {{-1, 1}, 1}};
  CHECK(ray_multiset(dual_curve(dual_complex(x1_curve()))) == expected);
  CHECK(ray_multiset(dual_curve(dual_complex(x2_curve()))) == expected);
}

TEST_CASE("multiplicity determinants") {
  // non-standard edge block structure
  CHECK(multiplicity_det({{1, 0, -1, 0, 0, 0},
                          {1, 1, 1, -1, 0, 0},
                          {1, 1, 1, 0, -1, 0},
                          {1, 1, 1, 0, 0, -1},
                          {1, 0, 0, 0, 0, 0},
                          {1, -1, 0, -1, 1, 0}}) == 1);
  // vertex block structure
  CHECK(multiplicity_det({{2, -1, -1, 0, 0, 0},
                          {1, -1, 0, 0, 0, 0},
                          {0, 2, 1, 0, -1, 0},
                          {0, 2, 1, 0, 0, -1},
                          {1, 0, 0, 0, 0, 0},
                          {1, 0, -1, -1, 0, 1}}) == 1);
  // doubled-ray block structure, honest edge data: 1 + 1 = 2
  CHECK(multiplicity_det({{0, -1, 1, 0, 0, 0},
                          {0, 2, 1, -1, 0, 0},
                          {1, 0, 2, 0, -1, 0},
                          {1, 0, 2, 0, 0, -1},
                          {1, 0, 0, 0, 0, 0},
                          {1, 0, -1, -1, 0, 1}}) == 2);
  // same block structure fed with a vertex-adjacent exponent triple degenerates to 1
  CHECK(multiplicity_det({{1, 0, -1, 0, 0, 0},
                          {1, 0, 2, -1, 0, 0},
                          {2, 1, 0, 0, -1, 0},
                          {2, 1, 0, 0, 0, -1},
                          {1, 0, 0, 0, 0, 0},
                          {1, 0, -1, -1, 0, 1}}) == 1);
  IMat id(6, IVec(6, 0));
  for (int i = 0; i < 6; ++i) id[i][i] = 1;
  CHECK(multiplicity_det(id) == 1);
  CHECK_THROWS_AS(multiplicity_det({{1, 0}, {0, 1}, {1, 1}}), MathError);
}

TEST_CASE("reconstruction round trips") {
  for (const TropPolynomial& f : {x1_curve(), x2_curve(), x1_conic(), x2_conic()}) {
    TropComplex tc = dual_complex(f);
    TropComplex back = reconstruct(decorate(dual_curve(tc), tc));
    CHECK(same_terms(back.f, f));
  }
}

TEST_CASE("the mark distinguishes the two conics") {
  WeightedComplex three{2,
                        {{ray({0, 0}, {1, 1}), 2}, {ray({0, 0}, {-1, 0}), 2}, {ray({0, 0}, {0, -1}), 2}}};
  TropComplex unmarked = reconstruct(DecoratedComplex{three, {}});
  CHECK(same_terms(unmarked.f, x1_conic()));
  TropComplex marked = reconstruct(DecoratedComplex{three, {q_point({1, 1})}});
  CHECK(same_terms(marked.f, x2_conic()));

  // row 1 of the vertex-type table: all-thick trivalent star inverts to the
  // standard-parallel directions
  REQUIRE(unmarked.cells_of_dim(0).size() == 1);
  CHECK(unmarked.cells[unmarked.cells_of_dim(0)[0]].region.vertices[0] == q_point({0, 0}));
  std::set<IVec> dirs;
  for (int ei : unmarked.cells_of_dim(1))
    dirs.insert(detail::cell_direction(unmarked.cells[ei].region));
  CHECK(dirs == std::set<IVec>{{-1, -1}, {1, 0}, {0, 1}});
}

TEST_CASE("reconstruction rejects invalid decorated duals") {
  // a thin ray in a positive standard direction matches no vertex type
  CHECK_THROWS_AS(reconstruct(DecoratedComplex{{2, {{ray({0, 0}, {1, 0}), 1}}}, {}}), MathError);
  // multiplicity three never occurs locally
  CHECK_THROWS_AS(reconstruct(DecoratedComplex{{2, {{ray({0, 0}, {1, 1}), 3}}}, {}}), MathError);
  // a mark must sit at a junction whose germs cancel completely
  WeightedComplex three{2,
                        {{ray({0, 0}, {1, 1}), 2}, {ray({0, 0}, {-1, 0}), 2}, {ray({0, 0}, {0, -1}), 2}}};
  CHECK_THROWS_AS(reconstruct(DecoratedComplex{three, {q_point({0, 0})}}), MathError);
  // empty support
  CHECK_THROWS_AS(reconstruct(DecoratedComplex{{2, {}}, {}}), MathError);
}

TEST_CASE("dual support equals the union of tangent families") {
  for (const TropPolynomial& f : {x1_curve(), x2_curve()}) {
    TropComplex tc = dual_complex(f);
    std::vector<Polyhedron> tangents;
    for (int vi : tc.cells_of_dim(0)) {
      TangentFamily fam = vertex_tangent_family(tc, tc.cells[vi].region.vertices[0]);
      tangents.insert(tangents.end(), fam.realized.begin(), fam.realized.end());
    }
    for (int ei : tc.cells_of_dim(1))
      for (const Polyhedron& p : edge_dual_union(tc, ei)) tangents.push_back(p);
    std::vector<Polyhedron> support;
    for (const auto& c : dual_curve(tc).cells) support.push_back(c.cell);
    CHECK(same_support(tangents, support));
  }
}
