#include "circpoly/tree.hpp"

#include "circpoly/canonical.hpp"
#include "circpoly/connectivity.hpp"
#include "circpoly/error.hpp"
#include "circpoly/sparsity.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace circpoly {

namespace {

struct Estimate {
    int hom = 0;
    std::map<Edge, int> deg;
};

Estimate leaf_estimate(const Graph& g, const DegreeTable& table) {
    const CanonicalForm cf = canonical_form(g);
    const auto it = table.find(cf.label);
    if (it == table.end()) throw Error(Errc::MissingDegreeEntry, "no degree entry for leaf class " + cf.label);
    Estimate est;
    est.hom = it->second.hom_degree;
    for (const Edge& e : g.edges()) {
        const Edge ce = make_edge(cf.relabel.at(e.u), cf.relabel.at(e.v));
        const auto pe = it->second.per_edge.find(ce);
        est.deg[e] = pe != it->second.per_edge.end() ? pe->second : it->second.var_degree;
    }
    return est;
}

int degree_in(const Estimate& est, Edge e) {
    const auto it = est.deg.find(e);
    return it == est.deg.end() ? 0 : it->second;
}

Estimate combine(const Estimate& a, const Estimate& b, Edge e) {
    const int r = degree_in(a, e), s = degree_in(b, e);
    Estimate out;
    out.hom = a.hom * s + b.hom * r - r * s;
    std::set<Edge> keys;
    for (const auto& [k, d] : a.deg) keys.insert(k);
    for (const auto& [k, d] : b.deg) keys.insert(k);
    keys.erase(e);
    for (const Edge& k : keys) out.deg[k] = std::min(out.hom, degree_in(a, k) * s + degree_in(b, k) * r);
    return out;
}

Estimate estimate(const CRTree& t, const DegreeTable& table, std::vector<NodeCost>* nodes,
                  std::optional<Edge> parent_elim) {
    Estimate est;
    if (t.is_leaf()) {
        est = leaf_estimate(t.graph, table);
    } else {
        const Estimate a = estimate(*t.left, table, nodes, t.elim);
        const Estimate b = estimate(*t.right, table, nodes, t.elim);
        est = combine(a, b, *t.elim);
    }
    if (nodes) {
        NodeCost cost{t.graph, est.hom, std::nullopt};
        if (parent_elim) cost.next_var_degree = degree_in(est, *parent_elim);
        nodes->push_back(std::move(cost));
    }
    return est;
}

bool same_edges(const Graph& a, const Graph& b) { return a.edges() == b.edges(); }

std::vector<Edge> sorted_union(const std::vector<Edge>& a, const std::vector<Edge>& b) {
    std::vector<Edge> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

int CRTree::depth() const {
    if (is_leaf()) return 0;
    return 1 + std::max(left->depth(), right->depth());
}

std::size_t CRTree::node_count() const {
    if (is_leaf()) return 1;
    return 1 + left->node_count() + right->node_count();
}

CRTree CRTree::leaf(Graph g, std::optional<MinorChoice> generator) {
    CRTree t;
    t.graph = std::move(g);
    t.generator = generator;
    return t;
}

CRTree CRTree::node(Graph g, Edge e, CRTree left, CRTree right) {
    CRTree t;
    t.graph = std::move(g);
    t.elim = e;
    t.left = std::make_shared<const CRTree>(std::move(left));
    t.right = std::make_shared<const CRTree>(std::move(right));
    return t;
}

bool operator==(const CRTree& a, const CRTree& b) {
    if (a.graph != b.graph || a.elim != b.elim || a.generator != b.generator || a.is_leaf() != b.is_leaf()) return false;
    return a.is_leaf() || (*a.left == *b.left && *a.right == *b.right);
}

GeneratorSet GeneratorSet::k4_only() { return GeneratorSet{{complete_graph({1, 2, 3, 4})}}; }

bool GeneratorSet::contains(const Graph& g) const {
    if (g.vertices().size() > static_cast<std::size_t>(kMaxCanonicalVertices)) return false;
    return std::any_of(members.begin(), members.end(), [&](const Graph& m) { return isomorphic(m, g); });
}

Graph combinatorial_resultant(const Graph& g1, const Graph& g2, Edge e) {
    if (!g1.has_edge(e) || !g2.has_edge(e))
        throw Error(Errc::EdgeNotCommon, "edge " + to_string(e) + " is not in both graphs");
    if (same_edges(g1, g2)) throw Error(Errc::InvalidArgument, "combinatorial resultant of a graph with itself");
    std::vector<Edge> edges = sorted_union(g1.edges(), g2.edges());
    edges.erase(std::find(edges.begin(), edges.end(), e));
    return Graph(std::max(g1.n(), g2.n()), std::move(edges));
}

bool properly_intersecting(const Graph& c1, const Graph& c2) {
    const auto v1 = c1.vertices(), v2 = c2.vertices();
    std::vector<int> common;
    std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(common));
    const Graph meet = graph_intersection(c1, c2);
    if (meet.vertices() != common) return false;
    return classify(meet).is_laman;
}

bool is_three_connected(const Graph& g) {
    return g.vertices().size() >= 4 && is_two_connected(g) && separating_pairs(g).empty();
}

std::vector<std::pair<Graph, Edge>> inverse_henneberg2(const Graph& c, int a) {
    if (!is_circuit(c)) throw Error(Errc::NotCircuit, "inverse Henneberg II needs a circuit");
    if (c.degree(a) != 3) throw Error(Errc::WrongDegree, "vertex " + std::to_string(a) + " has degree " + std::to_string(c.degree(a)));
    if (c.vertices().size() < 5) throw Error(Errc::InvalidArgument, "inverse Henneberg II needs at least 5 vertices");
    const auto nb = c.neighbors(a);
    const Graph rest = c.without_vertex(a);
    std::vector<std::pair<Graph, Edge>> out;
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) {
            const Edge e = make_edge(nb[i], nb[j]);
            if (c.has_edge(e)) continue;
            Graph g = rest.with_edge(e);
            if (is_circuit(g)) out.emplace_back(std::move(g), e);
        }
    return out;
}

std::vector<Decomposition> admissible_decompositions(const Graph& c) {
    if (!is_circuit(c)) throw Error(Errc::NotCircuit, "decomposition needs a circuit");
    if (!is_three_connected(c)) throw Error(Errc::InvalidArgument, "circuit is not 3-connected");
    std::vector<int> low;
    for (int v : c.vertices())
        if (c.degree(v) == 3) low.push_back(v);
    std::vector<std::tuple<int, int, Edge, Decomposition>> found;
    for (int a : low) {
        const auto moves = inverse_henneberg2(c, a);
        for (int b : low) {
            if (b == a || c.has_edge(make_edge(a, b))) continue;
            for (const auto& [A, e] : moves) {
                const Graph B = find_unique_circuit(c.without_vertex(b).with_edge(e));
                if (!same_edges(combinatorial_resultant(A, B, e), c)) continue;
                found.emplace_back(a, b, e, Decomposition{A, B, e});
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        return std::tie(std::get<0>(x), std::get<1>(x), std::get<2>(x)) < std::tie(std::get<0>(y), std::get<1>(y), std::get<2>(y));
    });
    std::vector<Decomposition> out;
    for (auto& f : found) out.push_back(std::move(std::get<3>(f)));
    return out;
}

Decomposition inverse_combinatorial_resultant(const Graph& c) {
    if (c.vertices().size() < 5) throw Error(Errc::InvalidArgument, "needs at least 5 vertices");
    auto all = admissible_decompositions(c);
    if (all.empty()) throw Error(Errc::NoAdmissiblePair, "no admissible pair of degree-3 vertices");
    return all.front();
}

DegreeTable default_degree_table() {
    DegreeTable t;
    t[canonical_label(complete_graph({1, 2, 3, 4}))] = DegreeEntry{3, 2, {}};
    return t;
}

CostProfile predicted_cost(const CRTree& t, const DegreeTable& table) {
    CostProfile p;
    estimate(t, table, &p.nodes, std::nullopt);
    p.depth = t.depth();
    p.node_count = t.node_count();
    return p;
}

int predicted_resultant_degree(const Graph& a, const Graph& b, Edge e, const DegreeTable& table) {
    return combine(leaf_estimate(a, table), leaf_estimate(b, table), e).hom;
}

namespace {

class Builder {
public:
    Builder(const GeneratorSet& gen, Strategy strategy, const DegreeTable& table)
        : gen_(gen), strategy_(strategy), table_(table) {}

    struct Built {
        CRTree tree;
        Estimate est;
    };

    Built build(const Graph& g, std::optional<Edge> parent) {
        const auto key = std::make_pair(g.edges(), parent);
        if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
        Built out = build_uncached(g, parent);
        memo_.emplace(key, out);
        return out;
    }

private:
    Built build_uncached(const Graph& g, std::optional<Edge> parent) {
        if (gen_.contains(g)) return {CRTree::leaf(g), leaf_estimate(g, table_)};
        if (!is_circuit(g)) throw Error(Errc::NotDecomposable, "node graph is neither a generator nor a circuit");
        if (!is_three_connected(g)) {
            const auto pairs = separating_pairs(g);
            if (pairs.empty()) throw Error(Errc::NotDecomposable, "no separating pair");
            const auto pair = *std::min_element(pairs.begin(), pairs.end());
            const auto [a, b] = two_split(g, pair);
            const Edge e = make_edge(pair.first, pair.second);
            return join(g, e, build(a, e), build(b, e));
        }
        const auto options = admissible_decompositions(g);
        if (options.empty()) throw Error(Errc::NotDecomposable, "no admissible decomposition");
        std::optional<Built> best;
        std::tuple<int, int, std::size_t> best_key;
        for (const auto& d : options) {
            Built cand = join(g, d.e, build(d.a, d.e), build(d.b, d.e));
            if (strategy_ == Strategy::First) return cand;
            const auto key = std::make_tuple(cand.est.hom, parent ? degree_in(cand.est, *parent) : 0, cand.tree.node_count());
            if (!best || key < best_key) {
                best = std::move(cand);
                best_key = key;
            }
        }
        return *best;
    }

    static Built join(const Graph& g, Edge e, Built a, Built b) {
        Estimate est = combine(a.est, b.est, e);
        return {CRTree::node(g, e, std::move(a.tree), std::move(b.tree)), std::move(est)};
    }

    const GeneratorSet& gen_;
    Strategy strategy_;
    const DegreeTable& table_;
    std::map<std::pair<std::vector<Edge>, std::optional<Edge>>, Built> memo_;
};

void validate(const CRTree& t, const GeneratorSet& gen, const std::string& path, TreeValidation& out) {
    auto fail = [&](const std::string& msg) {
        out.valid = false;
        out.diagnostics.push_back(path + ": " + msg);
    };
    if (!classify(t.graph).is_dependent) fail("node graph is not dependent");
    if (t.is_leaf()) {
        if (t.elim) fail("leaf carries an elimination edge");
        if (!t.right && !gen.contains(t.graph)) fail("leaf graph is not a generator");
        return;
    }
    if (!t.right) {
        fail("internal node with one child");
        return;
    }
    if (t.generator) fail("internal node carries a generator choice");
    if (!t.elim) {
        fail("internal node without elimination edge");
    } else if (!t.left->graph.has_edge(*t.elim) || !t.right->graph.has_edge(*t.elim)) {
        fail("elimination edge " + to_string(*t.elim) + " not in both children");
    } else if (same_edges(t.left->graph, t.right->graph)) {
        fail("children carry the same graph");
    } else if (!same_edges(combinatorial_resultant(t.left->graph, t.right->graph, *t.elim), t.graph)) {
        fail("node graph differs from the combinatorial resultant of its children");
    }
    validate(*t.left, gen, path + ".left", out);
    validate(*t.right, gen, path + ".right", out);
}

}  // namespace

CRTree build_tree(const Graph& c, const GeneratorSet& gen, Strategy strategy, const DegreeTable& table) {
    Builder b(gen, strategy, table);
    return b.build(c, std::nullopt).tree;
}

TreeValidation validate_tree(const CRTree& t, const GeneratorSet& gen) {
    TreeValidation out;
    validate(t, gen, "root", out);
    return out;
}

std::vector<Decomposition> enumerate_decompositions(const Graph& c) {
    const auto vs = c.vertices();
    if (vs.size() > static_cast<std::size_t>(kMaxDecompositionVertices))
        throw Error(Errc::TooLarge, std::to_string(vs.size()) + " vertices exceed the enumeration limit");
    if (!is_circuit(c)) throw Error(Errc::NotCircuit, "decomposition needs a circuit");
    const auto& edges = c.edges();
    const std::size_t m = edges.size();
    std::vector<Decomposition> out;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            const Edge e = make_edge(vs[i], vs[j]);
            if (c.has_edge(e)) continue;
            // Circuits inside c + e that use e, as masks over the edges of c.
            std::vector<std::uint32_t> circuits;
            for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
                std::uint32_t seen = (1u << (e.u - 1)) | (1u << (e.v - 1));
                for (std::size_t k = 0; k < m; ++k)
                    if ((mask >> k) & 1u) seen |= (1u << (edges[k].u - 1)) | (1u << (edges[k].v - 1));
                const int nv = __builtin_popcount(seen);
                if (__builtin_popcount(mask) + 1 != 2 * nv - 2) continue;
                std::vector<Edge> sub{e};
                for (std::size_t k = 0; k < m; ++k)
                    if ((mask >> k) & 1u) sub.push_back(edges[k]);
                std::sort(sub.begin(), sub.end());
                if (is_circuit(Graph(c.n(), sub))) circuits.push_back(mask);
            }
            const std::uint32_t full = (1u << m) - 1;
            auto graph_of = [&](std::uint32_t mask) {
                std::vector<Edge> sub{e};
                for (std::size_t k = 0; k < m; ++k)
                    if ((mask >> k) & 1u) sub.push_back(edges[k]);
                std::sort(sub.begin(), sub.end());
                return Graph(c.n(), std::move(sub));
            };
            for (std::size_t x = 0; x < circuits.size(); ++x)
                for (std::size_t y = x + 1; y < circuits.size(); ++y) {
                    if ((circuits[x] | circuits[y]) != full) continue;
                    Graph a = graph_of(circuits[x]), b = graph_of(circuits[y]);
                    if (b.edges() < a.edges()) std::swap(a, b);
                    out.push_back(Decomposition{std::move(a), std::move(b), e});
                }
        }
    std::sort(out.begin(), out.end(), [](const Decomposition& x, const Decomposition& y) {
        return std::tie(x.e, x.a.edges(), x.b.edges()) < std::tie(y.e, y.a.edges(), y.b.edges());
    });
    return out;
}

}  // namespace circpoly
