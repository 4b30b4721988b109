#pragma once

#include "tropdual/trop.hpp"

namespace tropdual::fixtures {

inline TropTerm term(std::initializer_list<long> exps, long num, long den = 1) {
  TropTerm t;
  for (long e : exps) t.exponents.emplace_back(e);
  t.valuation = Rational(num, den);
  return t;
}

// x0^2 x1 + x0 x2^2 + x0 x1 x2 + t x1^2 x2 + t^2 x1 x2^2
inline TropPolynomial x1_curve() {
  TropPolynomial f;
  f.n = 2;
  f.terms = {term({2, 1, 0}, 0), term({1, 0, 2}, 0), term({1, 1, 1}, 0), term({0, 2, 1}, 1),
             term({0, 1, 2}, 2)};
  return f;
}

// same support, valuations (0,0,0,2,1)
inline TropPolynomial x2_curve() {
  TropPolynomial f;
  f.n = 2;
  f.terms = {term({2, 1, 0}, 0), term({1, 0, 2}, 0), term({1, 1, 1}, 0), term({0, 2, 1}, 2),
             term({0, 1, 2}, 1)};
  return f;
}

// t(x0^2 + x0x1 + x0x2 + x0x3) + x1x2
inline TropPolynomial quadric_surface() {
  TropPolynomial f;
  f.n = 3;
  f.terms = {term({2, 0, 0, 0}, 1), term({1, 1, 0, 0}, 1), term({1, 0, 1, 0}, 1), term({1, 0, 0, 1}, 1),
             term({0, 1, 1, 0}, 0)};
  return f;
}

// x0^2 + x1x2 + x1x3, dual defect 1
inline TropPolynomial quadric_cone() {
  TropPolynomial f;
  f.n = 3;
  f.terms = {term({2, 0, 0, 0}, 0), term({0, 1, 1, 0}, 0), term({0, 1, 0, 1}, 0)};
  return f;
}

// x0x1 - x2x3
inline TropPolynomial smooth_quadric() {
  TropPolynomial f;
  f.n = 3;
  f.terms = {term({1, 1, 0, 0}, 0), term({0, 0, 1, 1}, 0)};
  return f;
}

// x0x1 + x0x2 + x1x2
inline TropPolynomial x1_conic() {
  TropPolynomial f;
  f.n = 2;
  f.terms = {term({1, 1, 0}, 0), term({1, 0, 1}, 0), term({0, 1, 1}, 0)};
  return f;
}

// t x0^2 + x0x1 + x0x2 + x1x2
inline TropPolynomial x2_conic() {
  TropPolynomial f;
  f.n = 2;
  f.terms = {term({2, 0, 0}, 1), term({1, 1, 0}, 0), term({1, 0, 1}, 0), term({0, 1, 1}, 0)};
  return f;
}

// cubic surface whose complex has the rectangular 2-face [0,3]x[0,2]x{0}
inline TropPolynomial cubic_square_face() {
  TropPolynomial f;
  f.n = 3;
  f.terms = {term({3, 0, 0, 0}, 1), term({2, 1, 0, 0}, 0), term({2, 0, 1, 0}, 0), term({1, 1, 1, 0}, 0),
             term({0, 2, 1, 0}, 3), term({0, 1, 2, 0}, 2), term({0, 1, 1, 1}, 0)};
  return f;
}

// x0^2 + x1^2 + x2^2 with zero valuations: single cell of normalized volume 4
inline TropPolynomial fermat_conic() {
  TropPolynomial f;
  f.n = 2;
  f.terms = {term({2, 0, 0}, 0), term({0, 2, 0}, 0), term({0, 0, 2}, 0)};
  return f;
}

// surplus-2 coincidence on a full 2-face: phi(x0^2)=phi(x0x1) and
// phi(x0x2)=phi(x1x2) both hold on the whole cell dual to {x0^2, x0x1}
inline TropPolynomial nongeneric_surface() {
  TropPolynomial f;
  f.n = 3;
  f.terms = {term({2, 0, 0, 0}, 0), term({1, 1, 0, 0}, 0), term({1, 0, 1, 0}, 0), term({0, 1, 1, 0}, 0),
             term({0, 0, 0, 2}, 2)};
  return f;
}

}  // namespace tropdual::fixtures
