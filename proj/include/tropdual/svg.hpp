#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <tropdual/curve_dual.hpp>
#include <tropdual/trop.hpp>

namespace tropdual {

struct SvgWindow {
  bool given = false;
  Rational x0, y0, x1, y1;
};

namespace detail {

// Exact decimal rendering with up to three fractional digits (round half away
// from zero), no floating point anywhere.
inline std::string svg_decimal(const Rational& q) {
  Int num = numerator(q);
  Int den = denominator(q);
  bool neg = num < 0;
  if (neg) num = -num;
  Int scaled = (num * 2000 + den) / (den * 2);
  Int ip = scaled / 1000;
  Int fp = scaled % 1000;
  std::string s = ip.str();
  if (fp != 0) {
    std::string f = fp.str();
    while (f.size() < 3) f.insert(f.begin(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    s += "." + f;
  }
  if (neg && scaled != 0) s.insert(s.begin(), '-');
  return s;
}

// Largest t >= 0 with base + t*dir still inside the window, or 0 if the whole
// forward ray has left it.
inline Rational ray_exit(const SvgWindow& w, const QVec& base, const IVec& dir) {
  bool bounded = false;
  Rational t;
  auto clamp = [&](const Rational& lo, const Rational& hi, const Rational& b, const Int& d) {
    if (d == 0) return;
    Rational cand = d > 0 ? (hi - b) / Rational(d) : (lo - b) / Rational(d);
    if (!bounded || cand < t) t = cand;
    bounded = true;
  };
  clamp(w.x0, w.x1, base[0], dir[0]);
  clamp(w.y0, w.y1, base[1], dir[1]);
  if (!bounded || t < 0) return Rational(0);
  return t;
}

struct SvgCanvas {
  SvgWindow w;
  Rational scale = 40;
  std::ostringstream body;

  std::string px(const Rational& x) const { return svg_decimal((x - w.x0) * scale); }
  std::string py(const Rational& y) const { return svg_decimal((w.y1 - y) * scale); }

  void line(const QVec& a, const QVec& b, const std::string& stroke, const std::string& width) {
    body << "  <line x1=\"" << px(a[0]) << "\" y1=\"" << py(a[1]) << "\" x2=\"" << px(b[0]) << "\" y2=\""
         << py(b[1]) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width
         << "\" stroke-linecap=\"round\"/>\n";
  }

  void circle(const QVec& c, const std::string& r, const std::string& fill, const std::string& stroke) {
    body << "  <circle cx=\"" << px(c[0]) << "\" cy=\"" << py(c[1]) << "\" r=\"" << r << "\" fill=\"" << fill
         << "\"";
    if (!stroke.empty()) body << " stroke=\"" << stroke << "\" stroke-width=\"1.5\"";
    body << "/>\n";
  }
};

inline void draw_cell(SvgCanvas& cv, const Polyhedron& p, const Int& mult) {
  std::string width = mult >= 2 ? "4" : "2";
  const std::string stroke = "#000000";
  if (p.empty()) return;
  if (p.dim() == 0) {
    cv.circle(p.vertices[0], "3", stroke, "");
    return;
  }
  if (p.vertices.size() == 2) {
    cv.line(p.vertices[0], p.vertices[1], stroke, width);
    return;
  }
  const QVec& v = p.vertices[0];
  std::vector<IVec> dirs(p.rays.begin(), p.rays.end());
  for (const auto& l : p.lineality) {
    dirs.push_back(l);
    dirs.push_back(vec_neg(l));
  }
  for (const auto& d : dirs) {
    Rational t = ray_exit(cv.w, v, d);
    QVec end = v;
    end[0] += t * Rational(d[0]);
    end[1] += t * Rational(d[1]);
    cv.line(v, end, stroke, width);
  }
}

}  // namespace detail

inline SvgWindow default_window(const WeightedComplex& wc, const QMat& marks) {
  SvgWindow w;
  bool any = false;
  auto see = [&](const QVec& v) {
    if (!any) {
      w.x0 = w.x1 = v[0];
      w.y0 = w.y1 = v[1];
      any = true;
      return;
    }
    w.x0 = std::min(w.x0, v[0]);
    w.x1 = std::max(w.x1, v[0]);
    w.y0 = std::min(w.y0, v[1]);
    w.y1 = std::max(w.y1, v[1]);
  };
  for (const auto& c : wc.cells)
    for (const auto& v : c.cell.vertices) see(v);
  for (const auto& m : marks) see(m);
  if (!any) w.x0 = w.y0 = w.x1 = w.y1 = 0;
  w.x0 -= 2;
  w.y0 -= 2;
  w.x1 += 2;
  w.y1 += 2;
  w.given = true;
  return w;
}

// SVG 1.1 figure of a one-dimensional weighted complex in the plane, y axis
// pointing up. Bounded cells are drawn exactly; rays stop at the window edge.
// Multiplicity-2 strokes are twice as wide, decoration marks are concentric
// circles.
inline std::string render_svg(const WeightedComplex& wc, const QMat& marks = {}, SvgWindow window = {}) {
  if (wc.n != 2) throw MathError("rendering is available for plane complexes only");
  detail::SvgCanvas cv;
  cv.w = window.given ? window : default_window(wc, marks);
  if (cv.w.x1 <= cv.w.x0 || cv.w.y1 <= cv.w.y0) throw MathError("window is empty");

  if (cv.w.y0 <= 0 && 0 <= cv.w.y1)
    cv.line({cv.w.x0, Rational(0)}, {cv.w.x1, Rational(0)}, "#bbbbbb", "1");
  if (cv.w.x0 <= 0 && 0 <= cv.w.x1)
    cv.line({Rational(0), cv.w.y0}, {Rational(0), cv.w.y1}, "#bbbbbb", "1");

  for (const auto& c : wc.cells)
    if (c.cell.dim() >= 1) detail::draw_cell(cv, c.cell, c.multiplicity);
  for (const auto& c : wc.cells)
    if (c.cell.dim() == 0) detail::draw_cell(cv, c.cell, c.multiplicity);
  for (const auto& m : marks) {
    cv.circle(m, "4", "none", "#000000");
    cv.circle(m, "7", "none", "#000000");
  }

  std::string width = detail::svg_decimal((cv.w.x1 - cv.w.x0) * cv.scale);
  std::string height = detail::svg_decimal((cv.w.y1 - cv.w.y0) * cv.scale);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << cv.body.str() << "</svg>\n";
  return out.str();
}

// The renderable skeleton of a tropical plane curve: its 0- and 1-cells, each
// edge weighted by the lattice length of the dual subdivision edge.
inline WeightedComplex renderable_complex(const TropComplex& tc) {
  if (tc.n != 2) throw MathError("rendering is available for plane curves only");
  WeightedComplex wc;
  wc.n = 2;
  for (const auto& cell : tc.cells) {
    if (cell.dim > 1) continue;
    WeightedCell c;
    c.cell = cell.region;
    if (cell.dim == 1) {
      IVec lo = tc.f.terms[cell.sigma[0]].exponents;
      IVec hi = lo;
      for (int s : cell.sigma) {
        const IVec& u = tc.f.terms[s].exponents;
        if (lex_compare(u, lo) < 0) lo = u;
        if (lex_compare(u, hi) > 0) hi = u;
      }
      c.multiplicity = gcd_vec(vec_sub(hi, lo));
    }
    wc.cells.push_back(std::move(c));
  }
  return wc;
}

inline std::string render_svg(const TropComplex& tc, SvgWindow window = {}) {
  return render_svg(renderable_complex(tc), {}, window);
}

}  // namespace tropdual
