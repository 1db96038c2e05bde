#pragma once

#include "circpoly/polynomial.hpp"

#include <string>

namespace circpoly {

// "terms=<count>" followed by one term per line: "coeff i,j:e ...".
std::string serialize_polynomial(const Polynomial& p);
// Throws ParseError naming the offending line.
Polynomial parse_polynomial(const std::string& text);

// Human-readable form, e.g. "x12^2*x34 - 2*x13".
std::string pretty(const Polynomial& p);

}  // namespace circpoly
