#pragma once

#include "circpoly/graph.hpp"

#include <map>
#include <string>

namespace circpoly {

inline constexpr int kMaxCanonicalVertices = 12;

struct CanonicalForm {
    std::string label;
    // Spanned vertex of the input -> canonical position 1..k.
    std::map<int, int> relabel;
};

CanonicalForm canonical_form(const Graph& g);
std::string canonical_label(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace circpoly
