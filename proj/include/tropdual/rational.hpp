#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace tropdual {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Violated mathematical precondition (non-smooth input, wrong dimension, ...).
// The CLI maps this to exit code 2.
struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input (bad JSON, inhomogeneous exponents, unparsable rational).
// The CLI maps this to exit code 3.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Int& v) { return v.str(); }

// "p" for integers, "p/q" otherwise; q > 0 always.
inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Int parse_int(const std::string& s) {
  if (s.empty()) throw ParseError("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ParseError("bad integer literal '" + s + "'");
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw ParseError("bad integer literal '" + s + "'");
  return Int(s);
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  return Rational(num, den);
}

inline Int to_int_exact(const Rational& q) {
  if (denominator(q) != 1) throw MathError("expected an integer, got " + to_string(q));
  return numerator(q);
}

}  // namespace tropdual
