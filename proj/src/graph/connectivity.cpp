#include "circpoly/connectivity.hpp"

#include "circpoly/error.hpp"
#include "circpoly/sparsity.hpp"

#include <algorithm>
#include <map>

namespace circpoly {

namespace {

// Component id per spanned vertex not in `removed`.
std::map<int, int> components(const Graph& g, const std::vector<int>& removed) {
    std::map<int, int> comp;
    for (int v : g.vertices())
        if (std::find(removed.begin(), removed.end(), v) == removed.end()) comp[v] = -1;
    std::map<int, std::vector<int>> adj;
    for (const Edge& e : g.edges()) {
        if (!comp.count(e.u) || !comp.count(e.v)) continue;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    int next = 0;
    for (auto& [start, id] : comp) {
        if (id >= 0) continue;
        std::vector<int> stack{start};
        comp[start] = next;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x]) {
                if (comp[y] < 0) {
                    comp[y] = next;
                    stack.push_back(y);
                }
            }
        }
        ++next;
    }
    return comp;
}

int component_count(const std::map<int, int>& comp) {
    int k = 0;
    for (const auto& [v, id] : comp) k = std::max(k, id + 1);
    return k;
}

}  // namespace

bool is_connected(const Graph& g, const std::vector<int>& removed) {
    return component_count(components(g, removed)) <= 1;
}

bool is_two_connected(const Graph& g) {
    const auto vs = g.vertices();
    if (vs.size() < 2 || !is_connected(g)) return false;
    if (vs.size() == 2) return true;
    return std::all_of(vs.begin(), vs.end(), [&](int v) { return is_connected(g, {v}); });
}

std::vector<std::pair<int, int>> separating_pairs(const Graph& g) {
    if (!is_two_connected(g)) throw Error(Errc::NotTwoConnected, "graph is not 2-connected");
    const auto vs = g.vertices();
    std::vector<std::pair<int, int>> out;
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (!is_connected(g, {vs[a], vs[b]})) out.emplace_back(vs[a], vs[b]);
    return out;
}

std::pair<Graph, Graph> two_split(const Graph& c, std::pair<int, int> pair) {
    if (!is_circuit(c)) throw Error(Errc::NotCircuit, "two_split needs a circuit");
    auto [u, v] = pair;
    if (u > v) std::swap(u, v);
    if (!c.has_vertex(u) || !c.has_vertex(v) || u == v)
        throw Error(Errc::NotSeparatingPair, "vertices not in graph");
    const auto comp = components(c, {u, v});
    if (component_count(comp) < 2) throw Error(Errc::NotSeparatingPair, "pair does not separate");
    const int first = comp.begin()->second;
    auto side = [&](int x) {
        if (x == u || x == v) return -1;
        return comp.at(x) == first ? 0 : 1;
    };
    std::vector<Edge> e1{make_edge(u, v)}, e2{make_edge(u, v)};
    for (const Edge& e : c.edges()) {
        const int s = std::max(side(e.u), side(e.v));
        (s == 0 ? e1 : e2).push_back(e);
    }
    return {Graph(c.n(), std::move(e1)), Graph(c.n(), std::move(e2))};
}

Graph two_sum(const Graph& a, const Graph& b, Edge e) {
    if (!a.has_edge(e) || !b.has_edge(e)) throw Error(Errc::EdgeNotCommon, "edge " + to_string(e) + " not shared");
    const auto va = a.vertices(), vb = b.vertices();
    std::vector<int> common;
    std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
    if (common != std::vector<int>{e.u, e.v})
        throw Error(Errc::InvalidArgument, "2-sum operands share more than the edge endpoints");
    return graph_union(a, b).without_edge(e);
}

}  // namespace circpoly
