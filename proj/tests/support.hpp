#pragma once

#include <string>

#include "exactsos/polynomial.hpp"

namespace testsupport {

inline exactsos::Polynomial P(const std::string& text, std::size_t n) { return exactsos::parse_polynomial(text, n); }

inline exactsos::Rational Q(const char* s) {
  exactsos::Rational q(s);
  q.canonicalize();
  return q;
}

inline const char* kQuartic = "4*x1^4 + 4*x1^3*x2 - 7*x1^2*x2^2 - 2*x1*x2^3 + 10*x2^4";
inline const char* kPerturbedMotzkin =
    "(1 + 1/1048576)*(x3^6 + x1^4*x2^2 + x1^2*x2^4) - 3*x1^2*x2^2*x3^2";
inline const char* kMotzkin = "x3^6 + x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2*x3^2";
inline const char* kBoxTarget = "-x1^2 - 2*x1*x2 - 2*x2^2 + 6";

}  // namespace testsupport
