#include <catch2/catch_amalgamated.hpp>

#include <tropdual/curve_dual.hpp>
#include <tropdual/surface_dual.hpp>

#include <support/fixtures.hpp>

using namespace tropdual;
using namespace tropdual::fixtures;

namespace {

Polyhedron P3(const QMat& verts, const IMat& rays = {}, const IMat& lin = {}) {
  return make_polyhedron(3, verts, rays, lin);
}

// Half-strip face fixture: the two-face dual to the (1,1,1,0)-(0,1,1,1) edge is
// [0,inf) x [0,2] x {0}, with parallel bottom and top edges and a ray stratum
// between them.
TropPolynomial strip_cubic() {
  TropPolynomial f;
  f.n = 3;
  f.terms = {term({3, 0, 0, 0}, 1), term({2, 1, 0, 0}, 0), term({2, 0, 1, 0}, 0),
             term({1, 1, 1, 0}, 0), term({0, 1, 2, 0}, 2), term({0, 1, 1, 1}, 0)};
  validate_polynomial(f);
  return f;
}

std::vector<int> ids(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

const FaceStratum* stratum_of(const FaceAnalysis& fa, const Polyhedron& cell) {
  for (const auto& st : fa.strata)
    if (st.cell == cell) return &st;
  return nullptr;
}

TropPolynomial permute_poly(const TropPolynomial& f, const std::vector<int>& pi) {
  TropPolynomial g;
  g.n = f.n;
  for (const auto& t : f.terms) {
    IVec e(t.exponents.size());
    for (std::size_t i = 0; i < t.exponents.size(); ++i) e[pi[i]] = t.exponents[i];
    g.terms.push_back({e, t.valuation});
  }
  validate_polynomial(g);
  return g;
}

QVec map_section_q(const std::vector<int>& pi, const QVec& p) {
  QVec full(p.size() + 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) full[i + 1] = p[i];
  QVec out(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) out[pi[i]] = full[i];
  QVec res(p.size());
  for (std::size_t k = 1; k < full.size(); ++k) res[k - 1] = out[k] - out[0];
  return res;
}

IVec map_section_i(const std::vector<int>& pi, const IVec& p) {
  QVec q = map_section_q(pi, to_q(p));
  IVec res(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) res[i] = numerator(q[i]);
  return res;
}

Polyhedron map_poly(const std::vector<int>& pi, const Polyhedron& p) {
  QMat verts;
  for (const auto& v : p.vertices) verts.push_back(map_section_q(pi, v));
  IMat rays;
  for (const auto& r : p.rays) rays.push_back(map_section_i(pi, r));
  IMat lin;
  for (const auto& l : p.lineality) lin.push_back(map_section_i(pi, l));
  return make_polyhedron(p.ambient, verts, rays, lin);
}

}  // namespace

TEST_CASE("face span classes of the quadric") {
  TropComplex tc = dual_complex(quadric_surface());
  auto J = [&](std::vector<int> sigma) { return face_span_class(tc.cells[find_cell(tc, sigma)].region); };
  CHECK(J({3, 4}) == std::vector<int>{});      // F3
  CHECK(J({0, 4}) == std::vector<int>{3});     // F1
  CHECK(J({0, 3}) == (std::vector<int>{1, 2}));  // F2
  CHECK(J({0, 2}) == (std::vector<int>{1, 3}));  // F_112
  CHECK(J({2, 4}) == (std::vector<int>{2, 3}));  // F_113
  CHECK(J({2, 3}) == (std::vector<int>{0, 1}));  // F_123
  CHECK(J({0, 1}) == (std::vector<int>{2, 3}));  // F_212
  CHECK(J({1, 4}) == (std::vector<int>{1, 3}));  // F_213
  CHECK(J({1, 3}) == (std::vector<int>{0, 2}));  // F_223
}

TEST_CASE("delta subdivision of a quadric face") {
  TropComplex tc = dual_complex(quadric_surface());
  const int F2 = find_cell(tc, {0, 3});
  const int E0 = find_cell(tc, {0, 3, 4});
  const int E12 = find_cell(tc, {0, 2, 3});
  const int E22 = find_cell(tc, {0, 1, 3});

  FaceAnalysis fa = face_delta_subdivision(tc, F2);
  CHECK(fa.face == F2);
  CHECK(fa.J == (std::vector<int>{1, 2}));
  REQUIRE(fa.strata.size() == 7);

  const Polyhedron tri = P3({q_point({-1, 0, 0}), q_point({0, -1, 0}), q_point({-1, -1, 0})});
  const Polyhedron cellA = P3({q_point({-1, 0, 0}), q_point({-1, -1, 0})}, {{-1, 0, 0}, {-1, -1, 0}});
  const Polyhedron cellB = P3({q_point({0, -1, 0}), q_point({-1, -1, 0})}, {{0, -1, 0}, {-1, -1, 0}});
  const Polyhedron segA = P3({q_point({-1, 0, 0}), q_point({-1, -1, 0})});
  const Polyhedron segB = P3({q_point({0, -1, 0}), q_point({-1, -1, 0})});
  const Polyhedron diag = P3({q_point({-1, -1, 0})}, {{-1, -1, 0}});
  const Polyhedron corner = P3({q_point({-1, -1, 0})});

  const FaceStratum* st = stratum_of(fa, tri);
  REQUIRE(st != nullptr);
  CHECK(st->edges == std::vector<int>{E0});
  st = stratum_of(fa, cellA);
  REQUIRE(st != nullptr);
  CHECK(st->edges == std::vector<int>{E12});
  st = stratum_of(fa, cellB);
  REQUIRE(st != nullptr);
  CHECK(st->edges == std::vector<int>{E22});
  st = stratum_of(fa, segA);
  REQUIRE(st != nullptr);
  CHECK(st->edges == ids({E0, E12}));
  st = stratum_of(fa, segB);
  REQUIRE(st != nullptr);
  CHECK(st->edges == ids({E0, E22}));
  st = stratum_of(fa, diag);
  REQUIRE(st != nullptr);
  CHECK(st->edges == ids({E12, E22}));
  st = stratum_of(fa, corner);
  REQUIRE(st != nullptr);
  CHECK(st->edges == ids({E0, E12, E22}));

  for (const auto& s : fa.strata)
    CHECK(static_cast<int>(s.edges.size()) == 3 - s.cell.dim());
}

TEST_CASE("delta values and concavity") {
  TropComplex tc = dual_complex(quadric_surface());
  const int F2 = find_cell(tc, {0, 3});
  CHECK(face_delta(tc, F2, q_point({-1, -1, 0})) == Rational(1));
  CHECK(face_delta(tc, F2, q_point({-1, 0, 0})) == Rational(0));
  CHECK(face_delta(tc, F2, q_point({-3, -2, 0})) == Rational(2));
  CHECK_THROWS_AS(face_delta(tc, F2, q_point({1, 1, 0})), MathError);

  // concavity of min of affine forms along sampled segments
  auto concave = [&](int face, const QVec& p, const QVec& q) {
    Rational dp = face_delta(tc, face, p), dq = face_delta(tc, face, q);
    for (int num = 1; num < 4; ++num) {
      Rational t(num, 4);
      QVec mid = vec_add(vec_scale(t, p), vec_scale(Rational(1) - t, q));
      CHECK(face_delta(tc, face, mid) >= t * dp + (Rational(1) - t) * dq);
    }
  };
  concave(F2, q_point({-1, 0, 0}), q_point({-5, -2, 0}));
  concave(F2, q_point({-1, -1, 0}), q_point({-2, -7, 0}));

  // a face of a plane tropical surface has no edges: delta is identically infinite
  TropComplex plane = dual_complex(smooth_quadric());
  int face = -1;
  for (std::size_t i = 0; i < plane.cells.size(); ++i)
    if (plane.cells[i].dim == 2) face = static_cast<int>(i);
  REQUIRE(face >= 0);
  FaceAnalysis fa = face_delta_subdivision(plane, face);
  REQUIRE(fa.strata.size() == 1);
  CHECK(fa.strata[0].edges.empty());
  CHECK_THROWS_AS(face_delta(plane, face, q_point({0, 0, 0})), MathError);
}

TEST_CASE("face duals of the quadric") {
  TropComplex tc = dual_complex(quadric_surface());

  SECTION("a face with no standard directions maps to its negative") {
    const int F3 = find_cell(tc, {3, 4});
    auto d = face_dual(tc, F3);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == negate(tc.cells[F3].region));
    CHECK(d[0] == P3({q_point({1, 0, 0}), q_point({0, 1, 0})}, {{0, -1, -1}, {-1, 0, -1}}));
  }

  SECTION("a prism face with -e_i in its recession cone keeps only the transverse edge") {
    const int F1 = find_cell(tc, {0, 4});
    auto d = face_dual(tc, F1);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == P3({q_point({1, 0, 0}), q_point({0, 1, 0})}));
  }

  SECTION("the doubly unbounded face assembles the dual hexagon piece") {
    const int F2 = find_cell(tc, {0, 3});
    FaceAnalysis fa = face_dual_analysis(tc, F2);
    CHECK(fa.notes.size() == 1);  // free quadrant at the corner stratum
    auto d = face_dual(tc, F2);
    Polyhedron expect = P3({q_point({1, 0, 0}), q_point({0, 1, 0})}, {{-1, 0, 0}, {0, -1, 0}});
    CHECK(same_support(d, {expect}));

    // per-stratum pieces from the three kinds of strata
    const Polyhedron tri = P3({q_point({-1, 0, 0}), q_point({0, -1, 0}), q_point({-1, -1, 0})});
    const FaceStratum* st = stratum_of(fa, tri);
    REQUIRE(st != nullptr);
    REQUIRE(st->duals.size() == 1);
    CHECK(st->duals[0] == P3({q_point({0, 0, 0}), q_point({1, 0, 0}), q_point({0, 1, 0})}));

    const Polyhedron diag = P3({q_point({-1, -1, 0})}, {{-1, -1, 0}});
    st = stratum_of(fa, diag);
    REQUIRE(st != nullptr);
    REQUIRE(st->duals.size() == 1);
    CHECK(st->duals[0] == P3({q_point({0, 0, 0})}));

    const Polyhedron corner = P3({q_point({-1, -1, 0})});
    st = stratum_of(fa, corner);
    REQUIRE(st != nullptr);
    REQUIRE(st->duals.size() == 1);
    CHECK(st->duals[0] == P3({q_point({0, 0, 0})}, {{-1, 0, 0}, {0, -1, 0}}));
  }

  SECTION("quadrant faces collapse to the dual vertices") {
    auto d = face_dual(tc, find_cell(tc, {0, 2}));
    CHECK(same_support(d, {P3({q_point({1, 0, 0})})}));
    d = face_dual(tc, find_cell(tc, {0, 1}));
    CHECK(same_support(d, {P3({q_point({0, 1, 0})})}));
  }

  SECTION("mixed faces produce the expected dual two-faces") {
    auto d = face_dual(tc, find_cell(tc, {2, 4}));
    CHECK(same_support(d, {P3({q_point({1, 0, 0})}, {{0, -1, -1}, {0, -1, 0}})}));
    d = face_dual(tc, find_cell(tc, {2, 3}));
    CHECK(same_support(d, {P3({q_point({1, 0, 0})}, {{0, -1, -1}, {1, 1, 1}})}));
  }
}

TEST_CASE("purely primitive strata") {
  TropComplex strip = dual_complex(strip_cubic());
  REQUIRE(is_smooth(strip_cubic()));
  REQUIRE(has_generic_valuations(strip_cubic()));
  const int P = find_cell(strip, {3, 5});

  const Polyhedron ray_str = make_polyhedron(3, {q_point({1, 1, 0})}, {{1, 0, 0}});
  CHECK(is_purely_primitive(strip, P, ray_str));

  // bounded strata and two-cells are rejected
  const Polyhedron chord = make_polyhedron(3, {q_point({0, 0, 0}), q_point({1, 1, 0})});
  CHECK_THROWS_AS(is_purely_primitive(strip, P, chord), MathError);
  const Polyhedron tri =
      make_polyhedron(3, {q_point({0, 0, 0}), q_point({0, 2, 0}), q_point({1, 1, 0})});
  CHECK_THROWS_AS(is_purely_primitive(strip, P, tri), MathError);
  const Polyhedron off = make_polyhedron(3, {q_point({0, 0, 0}), q_point({0, 1, 0})});
  CHECK_THROWS_AS(is_purely_primitive(strip, P, off), MathError);

  // the complementary edge of the quadric's diagonal stratum drops at rate two
  TropComplex tc = dual_complex(quadric_surface());
  const int F2 = find_cell(tc, {0, 3});
  const Polyhedron diag = make_polyhedron(3, {q_point({-1, -1, 0})}, {{-1, -1, 0}});
  CHECK_FALSE(is_purely_primitive(tc, F2, diag));
}

TEST_CASE("half-strip face with a parallel edge pair") {
  TropPolynomial f = strip_cubic();
  TropComplex tc = dual_complex(f);
  const int P = find_cell(tc, {3, 5});
  const int bottom = find_cell(tc, {1, 3, 5});
  const int left = find_cell(tc, {2, 3, 5});
  const int top = find_cell(tc, {3, 4, 5});

  FaceAnalysis fa = face_dual_analysis(tc, P);
  CHECK(fa.J == (std::vector<int>{1, 2}));
  REQUIRE(fa.strata.size() == 7);

  const Polyhedron ray_str = make_polyhedron(3, {q_point({1, 1, 0})}, {{1, 0, 0}});
  const FaceStratum* st = stratum_of(fa, ray_str);
  REQUIRE(st != nullptr);
  CHECK(st->edges == ids({bottom, top}));
  CHECK(st->duals.size() == 2);  // lambda_1 * lambda_2 = 0 splits into two pieces

  const Polyhedron tri =
      make_polyhedron(3, {q_point({0, 0, 0}), q_point({0, 2, 0}), q_point({1, 1, 0})});
  st = stratum_of(fa, tri);
  REQUIRE(st != nullptr);
  CHECK(st->edges == std::vector<int>{left});

  // recession hypothesis holds, so the union is -P - R>=0 e1 - R>=0 e2
  Polyhedron target =
      P3({q_point({0, 0, 0}), q_point({0, -2, 0})}, {{-1, 0, 0}, {0, -1, 0}});
  CHECK(same_support(face_dual(tc, P), {target}));
}

TEST_CASE("square face of a cubic") {
  TropPolynomial f = cubic_square_face();
  TropComplex tc = dual_complex(f);
  const int P = find_cell(tc, {3, 6});
  const int bottom = find_cell(tc, {1, 3, 6});
  const int left = find_cell(tc, {2, 3, 6});
  const int right = find_cell(tc, {3, 4, 6});
  const int top = find_cell(tc, {3, 5, 6});

  CHECK(tc.cells[P].region ==
        P3({q_point({0, 0, 0}), q_point({3, 0, 0}), q_point({0, 2, 0}), q_point({3, 2, 0})}));

  FaceAnalysis fa = face_dual_analysis(tc, P);
  CHECK(fa.J == (std::vector<int>{1, 2}));
  REQUIRE(fa.strata.size() == 11);
  int dims[3] = {0, 0, 0};
  for (const auto& s : fa.strata) {
    dims[s.cell.dim()]++;
    CHECK(static_cast<int>(s.edges.size()) == 3 - s.cell.dim());
  }
  CHECK(dims[2] == 4);
  CHECK(dims[1] == 5);
  CHECK(dims[0] == 2);

  // gap function and second minimum at the interior vertex (1,1)
  CHECK(face_delta(tc, P, q_point({1, 1, 0})) == Rational(1));
  const FaceStratum* st = stratum_of(fa, P3({q_point({1, 1, 0})}));
  REQUIRE(st != nullptr);
  CHECK(st->edges == ids({bottom, left, top}));
  QVec lift = lift_section(q_point({1, 1, 0}));
  std::vector<Rational> levels;
  for (std::size_t i = 0; i < f.terms.size(); ++i)
    levels.push_back(phi_full(f, static_cast<int>(i), lift));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  REQUIRE(levels.size() >= 2);
  CHECK(levels[1] - levels[0] == Rational(1));

  // the bounded chord between the interior vertices has the parallel pair
  st = stratum_of(fa, P3({q_point({1, 1, 0}), q_point({2, 1, 0})}));
  REQUIRE(st != nullptr);
  CHECK(st->edges == ids({bottom, top}));
  REQUIRE(st->duals.size() == 1);
  CHECK(st->duals[0].rays.size() == 2);

  // bounded face: the dual is exactly -P - R>=0 e1 - R>=0 e2
  Polyhedron target = detail::with_ray(detail::with_ray(negate(tc.cells[P].region), {-1, 0, 0}), {0, -1, 0});
  CHECK(same_support(face_dual(tc, P), {target}));
  CHECK(right >= 0);
}

TEST_CASE("assembled dual of the quadric") {
  TropComplex tc = dual_complex(quadric_surface());
  auto cells = assemble_surface_dual(tc);
  REQUIRE(cells.size() == 18);

  const QVec v1 = q_point({1, 0, 0});
  const QVec v2 = q_point({0, 1, 0});
  std::vector<Polyhedron> expected = {
      // vertices
      P3({v1}), P3({v2}),
      // edges
      P3({v1, v2}),
      P3({v1}, {{1, 1, 1}}), P3({v1}, {{0, -1, 0}}), P3({v1}, {{0, -1, -1}}),
      P3({v2}, {{1, 1, 1}}), P3({v2}, {{-1, 0, 0}}), P3({v2}, {{-1, 0, -1}}),
      // two-faces through the bounded edge
      P3({v1, v2}, {{1, 1, 1}}),
      P3({v1, v2}, {{0, -1, 0}, {-1, 0, 0}}),
      P3({v1, v2}, {{0, -1, -1}, {-1, 0, -1}}),
      // two-faces at the vertices
      P3({v1}, {{1, 1, 1}, {0, -1, 0}}), P3({v1}, {{1, 1, 1}, {0, -1, -1}}),
      P3({v1}, {{0, -1, 0}, {0, -1, -1}}),
      P3({v2}, {{1, 1, 1}, {-1, 0, 0}}), P3({v2}, {{1, 1, 1}, {-1, 0, -1}}),
      P3({v2}, {{-1, 0, 0}, {-1, 0, -1}}),
  };
  REQUIRE(expected.size() == 18);
  for (const auto& e : expected)
    CHECK(std::find(cells.begin(), cells.end(), e) != cells.end());

  CHECK(dual_defect(cells, 3) == 0);
}

TEST_CASE("assembled duals of degenerate quadrics") {
  // cone over a conic: the dual is the line spanned by e1 - e2 - e3
  TropComplex cone = dual_complex(quadric_cone());
  auto cells = assemble_surface_dual(cone);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0] == make_polyhedron(3, {q_point({0, 0, 0})}, {}, {{1, -1, -1}}));
  CHECK(dual_defect(cells, 3) == 1);

  // rank-4 binomial quadric: self-dual plane
  TropComplex sq = dual_complex(smooth_quadric());
  cells = assemble_surface_dual(sq);
  REQUIRE(cells.size() == 1);
  CHECK(same_support(cells, {make_polyhedron(3, {q_point({0, 0, 0})}, {}, {{1, 1, 0}, {1, 0, 1}})}));
  CHECK(dual_defect(cells, 3) == 0);
}

TEST_CASE("dual defect bookkeeping") {
  CHECK_THROWS_AS(dual_defect({}, 3), MathError);

  // duals of smooth plane curves always have defect zero
  WeightedComplex wc = dual_curve(dual_complex(x1_curve()));
  std::vector<Polyhedron> pieces;
  for (const auto& c : wc.cells) pieces.push_back(c.cell);
  CHECK(dual_defect(pieces, 2) == 0);
}

TEST_CASE("coordinate permutations commute with the dual") {
  TropPolynomial f = quadric_surface();
  auto base = assemble_surface_dual(dual_complex(f));

  SECTION("swapping x2 and x3") {
    std::vector<int> pi = {0, 1, 3, 2};
    auto moved = assemble_surface_dual(dual_complex(permute_poly(f, pi)));
    std::vector<Polyhedron> mapped;
    for (const auto& p : base) mapped.push_back(map_poly(pi, p));
    CHECK(same_support(moved, mapped));
  }
  SECTION("swapping x0 and x1") {
    std::vector<int> pi = {1, 0, 2, 3};
    auto moved = assemble_surface_dual(dual_complex(permute_poly(f, pi)));
    std::vector<Polyhedron> mapped;
    for (const auto& p : base) mapped.push_back(map_poly(pi, p));
    CHECK(same_support(moved, mapped));
  }
}
