#include "circpoly/canonical.hpp"

#include "circpoly/error.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace circpoly {

namespace {

using Cells = std::vector<std::vector<int>>;

struct Search {
    int k = 0;
    std::vector<std::uint32_t> adj;  // bitmask per compact vertex 0..k-1
    std::string best;
    std::vector<int> best_order;

    bool adjacent(int a, int b) const { return (adj[a] >> b) & 1u; }

    void refine(Cells& cells) const {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<int> cell_of(k);
            for (std::size_t c = 0; c < cells.size(); ++c)
                for (int v : cells[c]) cell_of[v] = static_cast<int>(c);
            Cells next;
            for (const auto& cell : cells) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                std::vector<std::pair<std::vector<int>, int>> sig;
                for (int v : cell) {
                    std::vector<int> counts(cells.size(), 0);
                    for (int w = 0; w < k; ++w)
                        if (adjacent(v, w)) ++counts[cell_of[w]];
                    sig.emplace_back(std::move(counts), v);
                }
                std::stable_sort(sig.begin(), sig.end(),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
                std::size_t start = 0;
                for (std::size_t i = 1; i <= sig.size(); ++i) {
                    if (i == sig.size() || sig[i].first != sig[start].first) {
                        std::vector<int> part;
                        for (std::size_t j = start; j < i; ++j) part.push_back(sig[j].second);
                        std::sort(part.begin(), part.end());
                        next.push_back(std::move(part));
                        start = i;
                    }
                }
            }
            if (next.size() != cells.size()) changed = true;
            cells = std::move(next);
        }
    }

    std::string encode(const std::vector<int>& order) const {
        std::string bits;
        bits.reserve(k * (k - 1) / 2);
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) bits.push_back(adjacent(order[a], order[b]) ? '1' : '0');
        return bits;
    }

    bool twins(int a, int b) const {
        const std::uint32_t mask = ~((1u << a) | (1u << b));
        return (adj[a] & mask) == (adj[b] & mask);
    }

    void run(Cells cells) {
        refine(cells);
        auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
        if (target == cells.end()) {
            std::vector<int> order;
            for (const auto& c : cells) order.push_back(c[0]);
            std::string code = encode(order);
            if (best_order.empty() || code > best) {
                best = std::move(code);
                best_order = std::move(order);
            }
            return;
        }
        const std::size_t idx = static_cast<std::size_t>(target - cells.begin());
        std::vector<int> explored;
        for (int v : cells[idx]) {
            if (std::any_of(explored.begin(), explored.end(), [&](int w) { return twins(v, w); })) continue;
            explored.push_back(v);
            Cells child;
            child.reserve(cells.size() + 1);
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c != idx) {
                    child.push_back(cells[c]);
                    continue;
                }
                child.push_back({v});
                std::vector<int> rest;
                for (int w : cells[c])
                    if (w != v) rest.push_back(w);
                child.push_back(std::move(rest));
            }
            run(std::move(child));
        }
    }
};

const char* kHex = "0123456789abcdef";

}  // namespace

CanonicalForm canonical_form(const Graph& g) {
    const auto vs = g.vertices();
    const int k = static_cast<int>(vs.size());
    if (k > kMaxCanonicalVertices)
        throw Error(Errc::TooLarge, std::to_string(k) + " vertices exceed canonical labeling limit");
    Search s;
    s.k = k;
    s.adj.assign(k, 0);
    auto index = [&](int v) { return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
    for (const Edge& e : g.edges()) {
        const int a = index(e.u), b = index(e.v);
        s.adj[a] |= 1u << b;
        s.adj[b] |= 1u << a;
    }
    Cells init;
    if (k > 0) {
        std::vector<std::pair<int, int>> by_degree;
        for (int v = 0; v < k; ++v) by_degree.emplace_back(__builtin_popcount(s.adj[v]), v);
        std::sort(by_degree.begin(), by_degree.end());
        for (std::size_t i = 0; i < by_degree.size(); ++i) {
            if (i == 0 || by_degree[i].first != by_degree[i - 1].first) init.emplace_back();
            init.back().push_back(by_degree[i].second);
        }
        s.run(std::move(init));
    }
    CanonicalForm out;
    out.label = std::to_string(k) + ":";
    for (std::size_t i = 0; i < s.best.size(); i += 4) {
        int nibble = 0;
        for (std::size_t j = i; j < i + 4; ++j) nibble = nibble * 2 + (j < s.best.size() && s.best[j] == '1');
        out.label.push_back(kHex[nibble]);
    }
    for (int pos = 0; pos < k; ++pos) out.relabel[vs[s.best_order[pos]]] = pos + 1;
    return out;
}

std::string canonical_label(const Graph& g) { return canonical_form(g).label; }

bool isomorphic(const Graph& a, const Graph& b) { return canonical_label(a) == canonical_label(b); }

}  // namespace circpoly
