#pragma once

#include "circpoly/graph.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace circpoly {

// Rows and columns (0..n) of a 5x5 Cayley minor pinned to a leaf.
struct MinorChoice {
    std::array<int, 5> rows{};
    std::array<int, 5> cols{};
    friend bool operator==(const MinorChoice&, const MinorChoice&) = default;
};

struct CRTree {
    Graph graph;
    std::optional<Edge> elim;
    std::shared_ptr<const CRTree> left;
    std::shared_ptr<const CRTree> right;
    std::optional<MinorChoice> generator;  // leaves only

    bool is_leaf() const noexcept { return !left; }
    int depth() const;
    std::size_t node_count() const;

    static CRTree leaf(Graph g, std::optional<MinorChoice> generator = std::nullopt);
    static CRTree node(Graph g, Edge e, CRTree left, CRTree right);
};

bool operator==(const CRTree& a, const CRTree& b);

// Leaf graphs allowed in a tree, up to isomorphism.
struct GeneratorSet {
    std::vector<Graph> members;

    static GeneratorSet k4_only();
    bool contains(const Graph& g) const;
};

Graph combinatorial_resultant(const Graph& g1, const Graph& g2, Edge e);
bool properly_intersecting(const Graph& c1, const Graph& c2);
bool is_three_connected(const Graph& g);

std::vector<std::pair<Graph, Edge>> inverse_henneberg2(const Graph& c, int a);

struct Decomposition {
    Graph a;
    Graph b;
    Edge e;
    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

// Every (A, B, e) reachable by the inverse combinatorial resultant, ordered by (a, b, e).
std::vector<Decomposition> admissible_decompositions(const Graph& c);
Decomposition inverse_combinatorial_resultant(const Graph& c);

// Homogeneous degree and degree per variable of a leaf class. per_edge, when
// non-empty, is indexed by edges of the canonical relabeling and overrides var_degree.
struct DegreeEntry {
    int hom_degree = 0;
    int var_degree = 0;
    std::map<Edge, int> per_edge;
};
using DegreeTable = std::map<std::string, DegreeEntry>;  // keyed by canonical_label

DegreeTable default_degree_table();

struct NodeCost {
    Graph graph;
    int hom_degree = 0;
    std::optional<int> next_var_degree;  // degree in the parent's elimination variable
};

struct CostProfile {
    std::vector<NodeCost> nodes;  // postorder, root last
    int depth = 0;
    std::size_t node_count = 0;

    int root_hom_degree() const { return nodes.back().hom_degree; }
};

CostProfile predicted_cost(const CRTree& t, const DegreeTable& table = default_degree_table());

// Predicted (homogeneous degree, degree in e) of the resultant of two leaf classes.
int predicted_resultant_degree(const Graph& a, const Graph& b, Edge e, const DegreeTable& table);

enum class Strategy { First, MinCost };

CRTree build_tree(const Graph& c, const GeneratorSet& gen = GeneratorSet::k4_only(), Strategy strategy = Strategy::MinCost,
                  const DegreeTable& table = default_degree_table());

struct TreeValidation {
    bool valid = true;
    std::vector<std::string> diagnostics;
};

TreeValidation validate_tree(const CRTree& t, const GeneratorSet& gen);

inline constexpr int kMaxDecompositionVertices = 8;

// All circuit pairs (A, B) and edges e with combinatorial_resultant(A, B, e) = c, A before B.
std::vector<Decomposition> enumerate_decompositions(const Graph& c);

std::string tree_to_json(const CRTree& t);
CRTree tree_from_json(const std::string& text);

}  // namespace circpoly
