#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <tropdual/curve_dual.hpp>
#include <tropdual/trop.hpp>

namespace tropdual {

// Insertion-ordered so documents serialize with a stable, readable key order.
using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << data;
  if (!out) throw ParseError("cannot write '" + path + "'");
}

namespace detail {

inline std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

inline const Json& member(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ParseError((path.empty() ? std::string("document") : path) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(join_path(path, key) + ": missing");
  return *it;
}

inline Int int_value(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  throw ParseError(path + ": expected an integer");
}

inline Rational rational_value(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  throw ParseError(path + ": expected a rational string \"p/q\"");
}

inline QVec qvec_value(const Json& j, const std::string& path, int len) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  if (len >= 0 && static_cast<int>(j.size()) != len)
    throw ParseError(path + ": expected " + std::to_string(len) + " coordinates");
  QVec v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(rational_value(j[k], path + "[" + std::to_string(k) + "]"));
  return v;
}

inline IVec ivec_value(const Json& j, const std::string& path, int len) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  if (len >= 0 && static_cast<int>(j.size()) != len)
    throw ParseError(path + ": expected " + std::to_string(len) + " coordinates");
  IVec v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(int_value(j[k], path + "[" + std::to_string(k) + "]"));
  return v;
}

inline Json matrix_json(const QMat& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline Json matrix_json(const IMat& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Input documents: { ambient_dim, terms: [ { exponents, valuation | coefficient } ] }.
// Every coefficient is routed through the t-adic valuation map, a direct
// valuation "p/q" being the one-term series 1*t^(p/q).

inline TropPolynomial parse_input(const std::string& text) {
  Json doc = detail::parse_json_text(text);
  if (!doc.is_object()) throw ParseError("document: expected an object");
  Int nn = detail::int_value(detail::member(doc, "", "ambient_dim"), "ambient_dim");
  if (nn < 1 || nn > 64) throw ParseError("ambient_dim: expected a positive integer (at most 64)");
  int n = static_cast<int>(nn);

  const Json& terms = detail::member(doc, "", "terms");
  if (!terms.is_array()) throw ParseError("terms: expected an array");

  std::vector<SeriesTerm> series;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string path = "terms[" + std::to_string(i) + "]";
    const Json& t = terms[i];
    SeriesTerm s;
    s.exponents = detail::ivec_value(detail::member(t, path, "exponents"), path + ".exponents", n + 1);

    bool has_val = t.contains("valuation");
    bool has_coeff = t.contains("coefficient");
    if (has_val == has_coeff) throw ParseError(path + ": expected exactly one of valuation or coefficient");
    if (has_val) {
      s.t_terms.emplace_back(detail::rational_value(t["valuation"], path + ".valuation"), Rational(1));
    } else {
      const std::string cpath = path + ".coefficient";
      const Json& tt = detail::member(t["coefficient"], cpath, "t_terms");
      if (!tt.is_array() || tt.empty()) throw ParseError(cpath + ".t_terms: expected a nonempty array");
      for (std::size_t k = 0; k < tt.size(); ++k) {
        const std::string tp = cpath + ".t_terms[" + std::to_string(k) + "]";
        const Json& pair = tt[k];
        if (!pair.is_array() || pair.size() != 2) throw ParseError(tp + ": expected [exponent, scalar]");
        Rational e = detail::rational_value(pair[0], tp + "[0]");
        Rational c = detail::rational_value(pair[1], tp + "[1]");
        if (c == 0) throw ParseError(tp + "[1]: zero scalar");
        for (const auto& [e2, c2] : s.t_terms)
          if (e2 == e) throw ParseError(tp + "[0]: duplicate t-exponent (possible cancellation)");
        s.t_terms.emplace_back(e, c);
      }
    }
    series.push_back(std::move(s));
  }

  TropPolynomial f = tropicalize_t_polynomial(n, series);
  validate_polynomial(f);
  return f;
}

inline TropPolynomial parse_input_file(const std::string& path) { return parse_input(read_file(path)); }

inline Json polynomial_to_json(const TropPolynomial& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms) {
    Json jt = Json::object();
    Json ex = Json::array();
    for (const auto& e : t.exponents) ex.push_back(to_string(e));
    jt["exponents"] = std::move(ex);
    jt["valuation"] = to_string(t.valuation);
    terms.push_back(std::move(jt));
  }
  return terms;
}

// ---------------------------------------------------------------------------
// Output documents: { command, ambient_dim, cells, marks?, metadata }, with
// every coordinate serialized as an exact rational string.

inline Json cell_to_json(const Polyhedron& p) {
  Json c = Json::object();
  c["vertices"] = detail::matrix_json(p.vertices);
  c["rays"] = detail::matrix_json(p.rays);
  c["lineality"] = detail::matrix_json(p.lineality);
  return c;
}

inline Json cells_to_json(const std::vector<Polyhedron>& cells) {
  Json a = Json::array();
  for (const auto& p : cells) a.push_back(cell_to_json(p));
  return a;
}

inline Json cells_to_json(const WeightedComplex& wc) {
  Json a = Json::array();
  for (const auto& c : wc.cells) {
    Json j = cell_to_json(c.cell);
    j["multiplicity"] = to_string(c.multiplicity);
    a.push_back(std::move(j));
  }
  return a;
}

inline Json new_document(const std::string& command, int n) {
  Json doc = Json::object();
  doc["command"] = command;
  doc["ambient_dim"] = n;
  return doc;
}

inline std::string dump_document(const Json& doc) { return doc.dump(2) + "\n"; }

// Parse the cell list of an output document back into a weighted complex.
// make_polyhedron re-canonicalizes, so serialize/parse round-trips exactly.

inline Polyhedron cell_from_json(const Json& c, int ambient, const std::string& path) {
  QMat verts;
  IMat rays, lin;
  if (c.contains("vertices")) {
    const Json& a = c["vertices"];
    if (!a.is_array()) throw ParseError(path + ".vertices: expected an array");
    for (std::size_t k = 0; k < a.size(); ++k)
      verts.push_back(detail::qvec_value(a[k], path + ".vertices[" + std::to_string(k) + "]", ambient));
  }
  if (c.contains("rays")) {
    const Json& a = c["rays"];
    if (!a.is_array()) throw ParseError(path + ".rays: expected an array");
    for (std::size_t k = 0; k < a.size(); ++k)
      rays.push_back(detail::ivec_value(a[k], path + ".rays[" + std::to_string(k) + "]", ambient));
  }
  if (c.contains("lineality")) {
    const Json& a = c["lineality"];
    if (!a.is_array()) throw ParseError(path + ".lineality: expected an array");
    for (std::size_t k = 0; k < a.size(); ++k)
      lin.push_back(detail::ivec_value(a[k], path + ".lineality[" + std::to_string(k) + "]", ambient));
  }
  try {
    return make_polyhedron(ambient, verts, rays, lin);
  } catch (const MathError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline WeightedComplex complex_from_json(const Json& doc) {
  Int nn = detail::int_value(detail::member(doc, "", "ambient_dim"), "ambient_dim");
  if (nn < 1 || nn > 64) throw ParseError("ambient_dim: expected a positive integer (at most 64)");
  WeightedComplex wc;
  wc.n = static_cast<int>(nn);
  const Json& cells = detail::member(doc, "", "cells");
  if (!cells.is_array()) throw ParseError("cells: expected an array");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string path = "cells[" + std::to_string(i) + "]";
    const Json& c = cells[i];
    if (!c.is_object()) throw ParseError(path + ": expected an object");
    WeightedCell cell;
    cell.cell = cell_from_json(c, wc.n, path);
    if (c.contains("multiplicity")) {
      cell.multiplicity = detail::int_value(c["multiplicity"], path + ".multiplicity");
      if (cell.multiplicity < 1) throw ParseError(path + ".multiplicity: expected a positive integer");
    }
    wc.cells.push_back(std::move(cell));
  }
  return wc;
}

inline DecoratedComplex decorated_from_json(const Json& doc) {
  DecoratedComplex dc;
  dc.base = complex_from_json(doc);
  if (doc.contains("marks")) {
    const Json& a = doc["marks"];
    if (!a.is_array()) throw ParseError("marks: expected an array");
    for (std::size_t k = 0; k < a.size(); ++k)
      dc.marks.push_back(detail::qvec_value(a[k], "marks[" + std::to_string(k) + "]", dc.base.n));
  }
  return dc;
}

inline DecoratedComplex parse_complex(const std::string& text) {
  Json doc = detail::parse_json_text(text);
  return decorated_from_json(doc);
}

}  // namespace tropdual
