#include "circpoly/sparsity.hpp"

#include "circpoly/error.hpp"

#include <ostream>

namespace circpoly {

std::ostream& operator<<(std::ostream& os, const SparsityReport& r) {
    auto flag = [](bool b) { return b ? "true" : "false"; };
    return os << "rank=" << r.rank << " sparse=" << flag(r.is_sparse) << " laman=" << flag(r.is_laman)
              << " rigid=" << flag(r.is_rigid) << " dependent=" << flag(r.is_dependent)
              << " circuit=" << flag(r.is_circuit);
}

PebbleGame::PebbleGame(int n)
    : pebbles_(n + 1, 2), out_(n + 1), seen_(n + 1, 0), parent_(n + 1, -1) {}

bool PebbleGame::find_pebble(int root, int avoid1, int avoid2) {
    ++stamp_;
    seen_[root] = stamp_;
    seen_[avoid1] = stamp_;
    seen_[avoid2] = stamp_;
    std::vector<int> stack{root};
    parent_[root] = -1;
    int found = -1;
    while (!stack.empty() && found < 0) {
        int x = stack.back();
        stack.pop_back();
        for (int y : out_[x]) {
            if (seen_[y] == stamp_) continue;
            seen_[y] = stamp_;
            parent_[y] = x;
            if (pebbles_[y] > 0) {
                found = y;
                break;
            }
            stack.push_back(y);
        }
    }
    if (found < 0) return false;
    // Reverse the path root -> ... -> found.
    for (int y = found; parent_[y] >= 0; y = parent_[y]) {
        int x = parent_[y];
        auto& ox = out_[x];
        for (auto it = ox.begin(); it != ox.end(); ++it) {
            if (*it == y) {
                ox.erase(it);
                break;
            }
        }
        out_[y].push_back(x);
    }
    --pebbles_[found];
    ++pebbles_[root];
    return true;
}

bool PebbleGame::insert(Edge e) {
    const int u = e.u, v = e.v;
    while (pebbles_[u] < 2 && find_pebble(u, v, u)) {}
    while (pebbles_[v] < 2 && find_pebble(v, u, v)) {}
    if (pebbles_[u] + pebbles_[v] < 4) return false;
    --pebbles_[u];
    out_[u].push_back(v);
    ++rank_;
    return true;
}

int sparsity_rank(const Graph& g) {
    PebbleGame game(g.n());
    for (const Edge& e : g.edges()) game.insert(e);
    return game.rank();
}

SparsityReport classify(const Graph& g) {
    SparsityReport r;
    const int m = static_cast<int>(g.edge_count());
    const int nv = static_cast<int>(g.vertices().size());
    r.rank = sparsity_rank(g);
    r.is_sparse = r.rank == m;
    r.is_dependent = !r.is_sparse;
    r.is_laman = r.is_sparse && m > 0 && m == 2 * nv - 3;
    r.is_rigid = nv >= 2 && r.rank == 2 * nv - 3;
    if (r.is_dependent && r.rank == m - 1) {
        r.is_circuit = true;
        for (const Edge& e : g.edges()) {
            if (sparsity_rank(g.without_edge(e)) != m - 1) {
                r.is_circuit = false;
                break;
            }
        }
    }
    return r;
}

bool is_circuit(const Graph& g) { return classify(g).is_circuit; }

Graph find_unique_circuit(const Graph& g) {
    const int m = static_cast<int>(g.edge_count());
    const int rank = sparsity_rank(g);
    if (rank != m - 1) throw Error(Errc::NotLamanPlusOne, "rank " + std::to_string(rank) + " with " + std::to_string(m) + " edges");
    std::vector<Edge> circuit;
    for (const Edge& e : g.edges())
        if (sparsity_rank(g.without_edge(e)) == rank) circuit.push_back(e);
    return Graph(g.n(), std::move(circuit));
}

}  // namespace circpoly
