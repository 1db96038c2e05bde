#include "circpoly/graph.hpp"

#include "circpoly/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace circpoly {

Edge make_edge(int a, int b) {
    return a < b ? Edge{a, b} : Edge{b, a};
}

std::string to_string(const Edge& e) {
    return std::to_string(e.u) + "," + std::to_string(e.v);
}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw Error(Errc::InvalidGraph, "negative vertex count");
    for (const Edge& e : edges_) {
        if (e.u == e.v) throw Error(Errc::InvalidGraph, "self-loop at " + std::to_string(e.u));
        if (e.u < 1 || e.v < 1 || e.u > n_ || e.v > n_ || e.u > e.v)
            throw Error(Errc::InvalidGraph, "bad edge " + to_string(e));
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw Error(Errc::InvalidGraph, "duplicate edge");
}

bool Graph::has_edge(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

bool Graph::has_vertex(int v) const {
    return std::any_of(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.u == v || e.v == v; });
}

std::vector<int> Graph::vertices() const {
    std::vector<int> vs;
    vs.reserve(2 * edges_.size());
    for (const Edge& e : edges_) {
        vs.push_back(e.u);
        vs.push_back(e.v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> out;
    for (const Edge& e : edges_) {
        if (e.u == v) out.push_back(e.v);
        else if (e.v == v) out.push_back(e.u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int Graph::degree(int v) const {
    return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                          [v](const Edge& e) { return e.u == v || e.v == v; }));
}

Graph Graph::without_edge(Edge e) const {
    Graph g = *this;
    auto it = std::lower_bound(g.edges_.begin(), g.edges_.end(), e);
    if (it != g.edges_.end() && *it == e) g.edges_.erase(it);
    return g;
}

Graph Graph::with_edge(Edge e) const {
    std::vector<Edge> es = edges_;
    es.push_back(e);
    return Graph(std::max({n_, e.u, e.v}), std::move(es));
}

Graph Graph::without_vertex(int v) const {
    Graph g(n_);
    for (const Edge& e : edges_)
        if (e.u != v && e.v != v) g.edges_.push_back(e);
    return g;
}

Graph Graph::induced(const std::vector<int>& vs) const {
    std::set<int> keep(vs.begin(), vs.end());
    Graph g(n_);
    for (const Edge& e : edges_)
        if (keep.count(e.u) && keep.count(e.v)) g.edges_.push_back(e);
    return g;
}

Graph graph_union(const Graph& a, const Graph& b) {
    std::vector<Edge> es;
    std::set_union(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                   std::back_inserter(es));
    return Graph(std::max(a.n(), b.n()), std::move(es));
}

Graph graph_intersection(const Graph& a, const Graph& b) {
    std::vector<Edge> es;
    std::set_intersection(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                          std::back_inserter(es));
    return Graph(std::max(a.n(), b.n()), std::move(es));
}

Compacted compact(const Graph& g) {
    Compacted out;
    int next = 0;
    for (int v : g.vertices()) out.relabel[v] = ++next;
    out.graph = relabel(g, out.relabel, next);
    return out;
}

Graph relabel(const Graph& g, const std::map<int, int>& map, int n) {
    std::vector<Edge> es;
    es.reserve(g.edge_count());
    for (const Edge& e : g.edges()) es.push_back(make_edge(map.at(e.u), map.at(e.v)));
    return Graph(n, std::move(es));
}

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw Error(Errc::ParseError, "line 1: missing header");
    std::istringstream head(line);
    long n = -1, m = -1;
    std::string rest;
    if (!(head >> n >> m) || (head >> rest) || n < 0 || m < 0)
        throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected \"n m\"");
    std::vector<Edge> es;
    std::set<Edge> seen;
    for (long k = 0; k < m; ++k) {
        if (!next_line())
            throw Error(Errc::ParseError, "line " + std::to_string(lineno + 1) + ": missing edge");
        std::istringstream ls(line);
        long i = 0, j = 0;
        if (!(ls >> i >> j) || (ls >> rest))
            throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected \"i j\"");
        if (!(1 <= i && i < j && j <= n))
            throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": edge out of range");
        Edge e{static_cast<int>(i), static_cast<int>(j)};
        if (!seen.insert(e).second)
            throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": duplicate edge");
        es.push_back(e);
    }
    if (next_line())
        throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": trailing content");
    return Graph(static_cast<int>(n), std::move(es));
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

Graph complete_graph(const std::vector<int>& vs) {
    std::vector<Edge> es;
    int n = 0;
    for (std::size_t a = 0; a < vs.size(); ++a) {
        n = std::max(n, vs[a]);
        for (std::size_t b = a + 1; b < vs.size(); ++b) es.push_back(make_edge(vs[a], vs[b]));
    }
    return Graph(n, std::move(es));
}

Graph cycle_graph(const std::vector<int>& vs) {
    std::vector<Edge> es;
    int n = 0;
    for (std::size_t a = 0; a < vs.size(); ++a) {
        n = std::max(n, vs[a]);
        es.push_back(make_edge(vs[a], vs[(a + 1) % vs.size()]));
    }
    return Graph(n, std::move(es));
}

Graph wheel_graph(const std::vector<int>& rim, int hub) {
    Graph g = cycle_graph(rim);
    std::vector<Edge> es = g.edges();
    for (int v : rim) es.push_back(make_edge(v, hub));
    return Graph(std::max(g.n(), hub), std::move(es));
}

}  // namespace circpoly
