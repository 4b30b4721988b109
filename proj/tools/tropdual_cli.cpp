#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tropdual/io.hpp>
#include <tropdual/newton_dual.hpp>
#include <tropdual/surface_dual.hpp>
#include <tropdual/svg.hpp>
#include <tropdual/tangent.hpp>

using namespace tropdual;

namespace {

struct Options {
  std::string input;
  std::string at;
  std::string svg_path;
  std::string window;
  std::string format = "json";
  std::string fixtures_dir;
  std::string fixture;
  bool assume_generic = false;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

SvgWindow parse_window(const std::string& s) {
  SvgWindow w;
  if (s.empty()) return w;
  auto parts = split_commas(s);
  if (parts.size() != 4) throw ParseError("--window: expected x0,y0,x1,y1");
  w.x0 = parse_rational(parts[0]);
  w.y0 = parse_rational(parts[1]);
  w.x1 = parse_rational(parts[2]);
  w.y1 = parse_rational(parts[3]);
  if (w.x1 <= w.x0 || w.y1 <= w.y0) throw ParseError("--window: expected x0 < x1 and y0 < y1");
  w.given = true;
  return w;
}

QVec parse_point(const std::string& s, int n) {
  auto parts = split_commas(s);
  if (static_cast<int>(parts.size()) != n)
    throw ParseError("--at: expected " + std::to_string(n) + " comma-separated rationals");
  QVec p;
  for (const auto& part : parts) p.push_back(parse_rational(part));
  return p;
}

Json metadata_json(const TropPolynomial& f, bool assume_generic) {
  Json m = Json::object();
  m["smooth"] = is_smooth(f);
  if (assume_generic)
    m["generic"] = "assumed";
  else
    m["generic"] = has_generic_valuations(f);
  m["degree"] = to_string(f.degree());
  return m;
}

void emit(const Json& doc) { std::cout << dump_document(doc); }

int cmd_tropicalize(const Options& o) {
  TropPolynomial f = parse_input_file(o.input);
  TropComplex tc = dual_complex(f);
  if (o.format == "svg") {
    std::cout << render_svg(tc, parse_window(o.window));
    return 0;
  }
  Json doc = new_document("tropicalize", f.n);
  std::vector<Polyhedron> regions;
  for (const auto& c : tc.cells) regions.push_back(c.region);
  doc["cells"] = cells_to_json(regions);
  doc["metadata"] = metadata_json(f, o.assume_generic);
  emit(doc);
  return 0;
}

int cmd_smooth_check(const Options& o) {
  TropPolynomial f = parse_input_file(o.input);
  Json doc = new_document("smooth-check", f.n);
  doc["cells"] = Json::array();
  doc["metadata"] = metadata_json(f, o.assume_generic);
  emit(doc);
  return doc["metadata"]["smooth"].get<bool>() ? 0 : 2;
}

int cmd_generic_check(const Options& o) {
  TropPolynomial f = parse_input_file(o.input);
  bool generic = has_generic_valuations(f);
  Json doc = new_document("generic-check", f.n);
  doc["cells"] = Json::array();
  Json m = Json::object();
  m["smooth"] = is_smooth(f);
  m["generic"] = generic;
  m["degree"] = to_string(f.degree());
  doc["metadata"] = std::move(m);
  emit(doc);
  return generic ? 0 : 2;
}

int cmd_dual_curve(const Options& o) {
  TropPolynomial f = parse_input_file(o.input);
  if (f.n != 2) throw MathError("dual-curve requires a plane curve (ambient_dim 2)");
  TropComplex tc = dual_complex(f);
  WeightedComplex wc = dual_curve(tc);
  DecoratedComplex dc = decorate(wc, tc);
  if (o.format == "svg") {
    std::cout << render_svg(wc, dc.marks, parse_window(o.window));
    return 0;
  }
  Json doc = new_document("dual-curve", 2);
  doc["cells"] = cells_to_json(wc);
  doc["marks"] = detail::matrix_json(dc.marks);
  doc["metadata"] = metadata_json(f, o.assume_generic);
  doc["metadata"]["dual_degree"] = to_string(curve_dual_degree(wc));
  emit(doc);
  return 0;
}

int cmd_dual_surface(const Options& o) {
  TropPolynomial f = parse_input_file(o.input);
  if (f.n != 3) throw MathError("dual-surface requires a surface (ambient_dim 3)");
  if (!is_smooth(f)) throw MathError("smoothness required");
  if (!o.assume_generic && !has_generic_valuations(f))
    throw MathError("valuations are not generic (pass --assume-generic to skip this check)");
  TropComplex tc = dual_complex(f);
  std::vector<Polyhedron> cells = assemble_surface_dual(tc);
  Json doc = new_document("dual-surface", 3);
  doc["cells"] = cells_to_json(cells);
  Json m = Json::object();
  m["smooth"] = true;
  m["generic"] = o.assume_generic ? Json("assumed") : Json(true);
  m["degree"] = to_string(f.degree());
  m["defect"] = to_string(dual_defect(cells, 3));
  doc["metadata"] = std::move(m);
  emit(doc);
  return 0;
}

int cmd_newton_dual(const Options& o) {
  TropPolynomial f = parse_input_file(o.input);
  if (f.n != 2) throw MathError("newton-dual requires a plane curve (ambient_dim 2)");
  if (f.degree() < 2) throw MathError("dual Newton polygon requires degree at least 2");
  LatticePolygon Q = dual_newton_polygon(newton_polygon(f));
  QMat verts;
  for (const auto& v : Q.vertices) verts.push_back(to_q(v));
  Json doc = new_document("newton-dual", 2);
  doc["cells"] = cells_to_json(std::vector<Polyhedron>{make_polyhedron(2, verts)});
  doc["metadata"] = metadata_json(f, o.assume_generic);
  doc["metadata"]["dual_degree"] = to_string(dual_degree_from_polygon(Q));
  emit(doc);
  return 0;
}

int cmd_dual_degree(const Options& o) {
  TropPolynomial f = parse_input_file(o.input);
  if (f.n != 2) throw MathError("dual-degree requires a plane curve (ambient_dim 2)");
  if (f.degree() < 2) throw MathError("dual degree requires degree at least 2");
  WeightedComplex wc = dual_curve(dual_complex(f));
  Json doc = new_document("dual-degree", 2);
  doc["cells"] = Json::array();
  doc["metadata"] = metadata_json(f, o.assume_generic);
  doc["metadata"]["dual_degree"] = to_string(curve_dual_degree(wc));
  emit(doc);
  return 0;
}

int cmd_defect(const Options& o) {
  TropPolynomial f = parse_input_file(o.input);
  std::vector<Polyhedron> pieces;
  Json m = Json::object();
  if (f.n == 2) {
    WeightedComplex wc = dual_curve(dual_complex(f));
    for (const auto& c : wc.cells) pieces.push_back(c.cell);
    m = metadata_json(f, o.assume_generic);
  } else if (f.n == 3) {
    if (!is_smooth(f)) throw MathError("smoothness required");
    if (!o.assume_generic && !has_generic_valuations(f))
      throw MathError("valuations are not generic (pass --assume-generic to skip this check)");
    pieces = surface_dual_pieces(dual_complex(f));
    m["smooth"] = true;
    m["generic"] = o.assume_generic ? Json("assumed") : Json(true);
    m["degree"] = to_string(f.degree());
  } else {
    throw MathError("defect requires a plane curve or a surface");
  }
  m["defect"] = to_string(dual_defect(pieces, f.n));
  Json doc = new_document("defect", f.n);
  doc["cells"] = Json::array();
  doc["metadata"] = std::move(m);
  emit(doc);
  return 0;
}

int cmd_tangents(const Options& o) {
  TropPolynomial f = parse_input_file(o.input);
  QVec p = parse_point(o.at, f.n);
  TropComplex tc = dual_complex(f);

  int vertex = -1, edge = -1;
  for (int vi : tc.cells_of_dim(0))
    if (tc.cells[vi].region.vertices[0] == p) vertex = vi;
  if (vertex < 0)
    for (int ei : tc.cells_of_dim(1))
      if (contains_point(tc.cells[ei].region, p)) edge = ei;

  TangentFamily fam;
  if (vertex >= 0)
    fam = vertex_tangent_family(tc, p);
  else if (edge >= 0)
    fam = edge_tangent_family(tc, edge, p);
  else
    throw MathError("tangents are computed at vertices and edge points of the tropical hypersurface");

  Json doc = new_document("tangents", f.n);
  doc["at"] = Json::array();
  for (const auto& x : p) doc["at"].push_back(to_string(x));
  doc["cells"] = cells_to_json(fam.realized);
  doc["metadata"] = metadata_json(f, o.assume_generic);
  emit(doc);
  return 0;
}

int cmd_reconstruct(const Options& o) {
  DecoratedComplex dc = parse_complex(read_file(o.input));
  TropComplex out = reconstruct(dc);
  Json doc = new_document("reconstruct", out.n);
  doc["terms"] = polynomial_to_json(out.f);
  std::vector<Polyhedron> regions;
  for (const auto& c : out.cells) regions.push_back(c.region);
  doc["cells"] = cells_to_json(regions);
  doc["metadata"] = metadata_json(out.f, o.assume_generic);
  emit(doc);
  return 0;
}

int cmd_render(const Options& o) {
  std::string text = read_file(o.input);
  Json j = detail::parse_json_text(text);
  SvgWindow w = parse_window(o.window);
  std::string svg;
  if (j.contains("cells")) {
    DecoratedComplex dc = decorated_from_json(j);
    if (dc.base.n != 2) throw MathError("rendering is available for plane complexes only");
    svg = render_svg(dc.base, dc.marks, w);
  } else if (j.contains("terms")) {
    TropPolynomial f = parse_input(text);
    if (f.n != 2) throw MathError("rendering is available for plane curves only");
    svg = render_svg(dual_complex(f), w);
  } else {
    throw ParseError("document: expected a polynomial (terms) or a complex (cells)");
  }
  if (o.svg_path.empty())
    std::cout << svg;
  else
    write_file(o.svg_path, svg);
  return 0;
}

// ---------------------------------------------------------------------------
// verify-fixture: the bundled worked examples with their frozen expectations.

Polyhedron seg2(std::initializer_list<long> a, std::initializer_list<long> b) {
  return make_polyhedron(2, {q_point(a), q_point(b)});
}

Polyhedron ray2(std::initializer_list<long> a, IVec d) {
  return make_polyhedron(2, {q_point(a)}, {std::move(d)});
}

Polyhedron p3(QMat verts, IMat rays = {}) { return make_polyhedron(3, std::move(verts), std::move(rays)); }

std::vector<WeightedCell> x1_inventory() {
  return {
      {ray2({-1, -1}, {1, 1}), 2},  {ray2({0, 0}, {-1, 0}), 2},  {ray2({-1, 0}, {0, -1}), 2},
      {ray2({-2, -3}, {0, -1}), 2}, {ray2({0, 0}, {2, 1}), 1},   {seg2({-1, -1}, {-2, -3}), 1},
      {ray2({-1, 0}, {-1, 1}), 1},  {ray2({0, 0}, {0, -1}), 1},  {ray2({-1, 0}, {1, 1}), 1},
      {ray2({-1, -1}, {-1, 0}), 1}, {ray2({-2, -3}, {-1, 0}), 1},
  };
}

std::vector<WeightedCell> x2_inventory() {
  return {
      {ray2({-1, -1}, {1, 1}), 2},  {ray2({0, 0}, {-1, 0}), 2}, {ray2({-2, 0}, {0, -1}), 2},
      {ray2({-1, -1}, {0, -1}), 2}, {ray2({-1, -1}, {-1, 0}), 2}, {ray2({0, 0}, {2, 1}), 1},
      {ray2({-2, 0}, {-1, 1}), 1},  {ray2({0, 0}, {0, -1}), 1}, {ray2({-2, 0}, {1, 1}), 1},
  };
}

std::vector<Polyhedron> quadric_inventory() {
  const QVec v1 = q_point({1, 0, 0});
  const QVec v2 = q_point({0, 1, 0});
  return {
      p3({v1}),
      p3({v2}),
      p3({v1, v2}),
      p3({v1}, {{1, 1, 1}}),
      p3({v1}, {{0, -1, 0}}),
      p3({v1}, {{0, -1, -1}}),
      p3({v2}, {{1, 1, 1}}),
      p3({v2}, {{-1, 0, 0}}),
      p3({v2}, {{-1, 0, -1}}),
      p3({v1, v2}, {{1, 1, 1}}),
      p3({v1, v2}, {{0, -1, 0}, {-1, 0, 0}}),
      p3({v1, v2}, {{0, -1, -1}, {-1, 0, -1}}),
      p3({v1}, {{1, 1, 1}, {0, -1, 0}}),
      p3({v1}, {{1, 1, 1}, {0, -1, -1}}),
      p3({v1}, {{0, -1, 0}, {0, -1, -1}}),
      p3({v2}, {{1, 1, 1}, {-1, 0, 0}}),
      p3({v2}, {{1, 1, 1}, {-1, 0, -1}}),
      p3({v2}, {{-1, 0, 0}, {-1, 0, -1}}),
  };
}

bool cells_match(const WeightedComplex& wc, std::vector<WeightedCell> expected) {
  if (wc.cells.size() != expected.size()) return false;
  for (const auto& c : wc.cells) {
    bool found = false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (expected[i].cell == c.cell && expected[i].multiplicity == c.multiplicity) {
        expected.erase(expected.begin() + static_cast<std::ptrdiff_t>(i));
        found = true;
        break;
      }
    if (!found) return false;
  }
  return expected.empty();
}

bool cells_match(const std::vector<Polyhedron>& cells, const std::vector<Polyhedron>& expected) {
  if (cells.size() != expected.size()) return false;
  for (const auto& e : expected)
    if (std::find(cells.begin(), cells.end(), e) == cells.end()) return false;
  return true;
}

std::vector<Polyhedron> support_of(const WeightedComplex& wc) {
  std::vector<Polyhedron> out;
  for (const auto& c : wc.cells) out.push_back(c.cell);
  return out;
}

std::vector<Polyhedron> support_of(const TropComplex& tc) {
  std::vector<Polyhedron> out;
  for (const auto& c : tc.cells) out.push_back(c.region);
  return out;
}

bool complexes_equal(const TropComplex& a, const TropComplex& b) {
  auto ca = support_of(a);
  auto cb = support_of(b);
  std::sort(ca.begin(), ca.end(), poly_less);
  std::sort(cb.begin(), cb.end(), poly_less);
  return ca == cb;
}

struct Verifier {
  std::string dir;
  int failures = 0;

  void check(const std::string& name, const std::string& what, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << ": " << what << "\n";
    if (!ok) ++failures;
  }

  TropPolynomial load(const std::string& file) { return parse_input_file(dir + "/" + file); }

  void curve_fixture(const std::string& name, const std::string& input, const std::string& sextic,
                     const std::vector<WeightedCell>& inventory) {
    auto t0 = std::chrono::steady_clock::now();
    TropPolynomial f = load(input);
    TropComplex tc = dual_complex(f);
    WeightedComplex wc = dual_curve(tc);
    check(name, "dual inventory matches the printed figure", cells_match(wc, inventory));
    check(name, "dual degree is 6", curve_dual_degree(wc) == 6);
    check(name, "dual is balanced", check_balancing(wc));
    TropPolynomial s = load(sextic);
    check(name, "support equals the tropicalized printed sextic",
          same_support(support_of(wc), support_of(dual_complex(s))));
    check(name, "decorated dual reconstructs the curve", complexes_equal(reconstruct(decorate(wc, tc)), tc));
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    std::cout << "     " << name << ": finished in " << ms.count() << " ms\n";
  }

  void quadric_fixture() {
    auto t0 = std::chrono::steady_clock::now();
    TropPolynomial f = load("quadric_surface.json");
    std::vector<Polyhedron> cells = assemble_surface_dual(dual_complex(f));
    check("quadric", "dual complex matches the printed 18 cells", cells_match(cells, quadric_inventory()));
    TropPolynomial s = load("quadric_dual_printed.json");
    check("quadric", "support equals the tropicalized printed dual quadric",
          same_support(cells, support_of(dual_complex(s))));
    check("quadric", "dual defect is 0", dual_defect(cells, 3) == 0);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    std::cout << "     quadric: finished in " << ms.count() << " ms\n";
  }

  void cone_fixture() {
    TropPolynomial f = load("quadric_cone.json");
    std::vector<Polyhedron> cells = assemble_surface_dual(dual_complex(f));
    Polyhedron line = make_polyhedron(3, {q_point({0, 0, 0})}, {}, {{1, -1, -1}});
    check("cone", "dual support is the line spanned by e1 - e2 - e3",
          cells.size() == 1 && cells[0] == line);
    check("cone", "dual defect is 1", dual_defect(cells, 3) == 1);
  }

  void smooth_quadric_fixture() {
    TropPolynomial f = load("smooth_quadric.json");
    std::vector<Polyhedron> cells = assemble_surface_dual(dual_complex(f));
    Polyhedron plane = make_polyhedron(3, {q_point({0, 0, 0})}, {}, {{1, 1, 0}, {1, 0, 1}});
    check("smooth-quadric", "dual support is the plane spanned by e1 + e2 and e1 + e3",
          same_support(cells, {plane}));
    check("smooth-quadric", "dual defect is 0", dual_defect(cells, 3) == 0);
  }
};

int cmd_verify_fixture(const Options& o) {
  Verifier v;
  if (!o.fixtures_dir.empty()) {
    v.dir = o.fixtures_dir;
  } else if (const char* env = std::getenv("TROPDUAL_FIXTURES"); env != nullptr && *env != '\0') {
    v.dir = env;
  } else {
#ifdef TROPDUAL_FIXTURES_DIR
    v.dir = TROPDUAL_FIXTURES_DIR;
#else
    throw ParseError("no fixtures directory: pass --fixtures-dir or set TROPDUAL_FIXTURES");
#endif
  }

  bool all = o.fixture == "all";
  bool known = all;
  if (all || o.fixture == "x1") {
    v.curve_fixture("x1", "x1.json", "x1_dual_sextic.json", x1_inventory());
    known = true;
  }
  if (all || o.fixture == "x2") {
    v.curve_fixture("x2", "x2.json", "x2_dual_sextic.json", x2_inventory());
    known = true;
  }
  if (all || o.fixture == "quadric") {
    v.quadric_fixture();
    known = true;
  }
  if (all || o.fixture == "cone") {
    v.cone_fixture();
    known = true;
  }
  if (all || o.fixture == "smooth-quadric") {
    v.smooth_quadric_fixture();
    known = true;
  }
  if (!known)
    throw ParseError("unknown fixture '" + o.fixture + "' (x1, x2, quadric, cone, smooth-quadric, all)");
  return v.failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropicalized projective duals of plane curves and surfaces"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* c) {
    c->add_option("input", o.input, "input JSON document")->required();
    c->add_flag("--assume-generic", o.assume_generic, "skip the generic-valuations check");
  };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "output format (json or svg)")
        ->check(CLI::IsMember({"json", "svg"}));
    c->add_option("--window", o.window, "drawing window x0,y0,x1,y1");
  };

  CLI::App* c;
  c = app.add_subcommand("tropicalize", "tropical hypersurface of a valuated polynomial");
  add_input(c);
  add_format(c);
  c = app.add_subcommand("smooth-check", "test for a smooth (unimodular) tropicalization");
  add_input(c);
  c = app.add_subcommand("generic-check", "test for generic coefficient valuations");
  add_input(c);
  c = app.add_subcommand("dual-curve", "tropicalization of the dual of a smooth plane curve");
  add_input(c);
  add_format(c);
  c = app.add_subcommand("dual-surface", "tropicalization of the dual of a smooth surface");
  add_input(c);
  c = app.add_subcommand("newton-dual", "Newton polygon of the dual curve");
  add_input(c);
  c = app.add_subcommand("dual-degree", "degree of the dual curve");
  add_input(c);
  c = app.add_subcommand("defect", "dual defect of the hypersurface");
  add_input(c);
  c = app.add_subcommand("tangents", "tropical tangents through a point of the tropicalization");
  add_input(c);
  c->add_option("--at", o.at, "point in section coordinates, e.g. -1,0,0")->required();
  c = app.add_subcommand("reconstruct", "curve from its decorated dual complex");
  add_input(c);
  c = app.add_subcommand("render", "SVG figure of a plane complex or curve");
  add_input(c);
  c->add_option("--svg", o.svg_path, "output file (stdout if omitted)");
  c->add_option("--window", o.window, "drawing window x0,y0,x1,y1");
  c = app.add_subcommand("verify-fixture", "check a bundled worked example against its frozen dual");
  c->add_option("name", o.fixture, "x1, x2, quadric, cone, smooth-quadric, or all")->required();
  c->add_option("--fixtures-dir", o.fixtures_dir, "directory holding the fixture documents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  const std::string cmd = app.get_subcommands()[0]->get_name();
  try {
    if (cmd == "tropicalize") return cmd_tropicalize(o);
    if (cmd == "smooth-check") return cmd_smooth_check(o);
    if (cmd == "generic-check") return cmd_generic_check(o);
    if (cmd == "dual-curve") return cmd_dual_curve(o);
    if (cmd == "dual-surface") return cmd_dual_surface(o);
    if (cmd == "newton-dual") return cmd_newton_dual(o);
    if (cmd == "dual-degree") return cmd_dual_degree(o);
    if (cmd == "defect") return cmd_defect(o);
    if (cmd == "tangents") return cmd_tangents(o);
    if (cmd == "reconstruct") return cmd_reconstruct(o);
    if (cmd == "render") return cmd_render(o);
    if (cmd == "verify-fixture") return cmd_verify_fixture(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
