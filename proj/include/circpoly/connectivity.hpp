#pragma once

#include "circpoly/graph.hpp"

#include <utility>
#include <vector>

namespace circpoly {

// Connectivity on the spanned vertex set, ignoring the removed vertices.
bool is_connected(const Graph& g, const std::vector<int>& removed = {});
bool is_two_connected(const Graph& g);

std::vector<std::pair<int, int>> separating_pairs(const Graph& g);

std::pair<Graph, Graph> two_split(const Graph& c, std::pair<int, int> pair);
// Union minus the shared edge; the edge must be the only common one.
Graph two_sum(const Graph& a, const Graph& b, Edge e);

}  // namespace circpoly
