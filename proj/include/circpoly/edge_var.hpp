#pragma once

#include "circpoly/graph.hpp"

#include <compare>
#include <string>

namespace circpoly {

// Squared-distance indeterminate x_{i,j}, i < j.
struct EdgeVar {
    int i = 0;
    int j = 0;

    friend auto operator<=>(const EdgeVar&, const EdgeVar&) = default;
};

inline EdgeVar var_of(Edge e) { return EdgeVar{e.u, e.v}; }
inline Edge edge_of(EdgeVar x) { return Edge{x.i, x.j}; }
EdgeVar make_var(int a, int b);

std::string to_string(const EdgeVar& x);  // "i,j"
// Accepts "i,j" with 1 <= i < j; throws ParseError otherwise.
EdgeVar parse_var(const std::string& text);

}  // namespace circpoly
