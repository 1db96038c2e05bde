#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace circpoly {

// Undirected edge with u < v; vertices are 1-based.
struct Edge {
    int u = 0;
    int v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

Edge make_edge(int a, int b);
std::string to_string(const Edge& e);

class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n) {}
    // Throws InvalidGraph on loops, duplicates or endpoints outside 1..n.
    Graph(int n, std::vector<Edge> edges);

    int n() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return edges_.empty(); }

    bool has_edge(Edge e) const;
    bool has_vertex(int v) const;  // incident to some edge
    std::vector<int> vertices() const;  // V(E), ascending
    std::vector<int> neighbors(int v) const;
    int degree(int v) const;

    Graph without_edge(Edge e) const;
    Graph with_edge(Edge e) const;
    Graph without_vertex(int v) const;
    Graph induced(const std::vector<int>& vs) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

Graph graph_union(const Graph& a, const Graph& b);
Graph graph_intersection(const Graph& a, const Graph& b);

// Relabels the spanned vertices to 1..k in ascending order; map[old] = new.
struct Compacted {
    Graph graph;
    std::map<int, int> relabel;
};
Compacted compact(const Graph& g);
Graph relabel(const Graph& g, const std::map<int, int>& map, int n);

// Text format: "n m" then m lines "i j".
Graph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& g);

Graph complete_graph(const std::vector<int>& vs);
Graph cycle_graph(const std::vector<int>& vs);
// Wheel: rim cycle plus hub joined to every rim vertex.
Graph wheel_graph(const std::vector<int>& rim, int hub);

}  // namespace circpoly
