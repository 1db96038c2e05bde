#include "circpoly/canonical.hpp"
#include "circpoly/connectivity.hpp"
#include "circpoly/error.hpp"
#include "circpoly/sparsity.hpp"
#include "graphs.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include <random>

using namespace circpoly;
using fixtures::k4;

namespace {

// Independence by counting over every vertex subset.
bool brute_sparse(const std::vector<Edge>& es) {
    std::vector<int> vs;
    for (const Edge& e : es) {
        vs.push_back(e.u);
        vs.push_back(e.v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    const int k = static_cast<int>(vs.size());
    for (int mask = 1; mask < (1 << k); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size < 2) continue;
        auto in = [&](int v) {
            const int idx = static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
            return (mask >> idx) & 1;
        };
        int spanned = 0;
        for (const Edge& e : es) spanned += in(e.u) && in(e.v);
        if (spanned > 2 * size - 3) return false;
    }
    return true;
}

int brute_rank(const Graph& g) {
    std::vector<Edge> basis;
    for (const Edge& e : g.edges()) {
        basis.push_back(e);
        if (!brute_sparse(basis)) basis.pop_back();
    }
    return static_cast<int>(basis.size());
}

Graph random_graph(std::mt19937_64& rng, int n, double density) {
    std::bernoulli_distribution keep(density);
    std::vector<Edge> es;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (keep(rng)) es.push_back({i, j});
    return Graph(n, es);
}

}  // namespace

TEST_CASE("classify small graphs") {
    const auto r = classify(k4(1, 2, 3, 4));
    CHECK(r.rank == 5);
    CHECK(r.is_circuit);
    CHECK(r.is_dependent);
    CHECK(r.is_rigid);

    const auto t = classify(Graph(3, {{1, 2}, {1, 3}, {2, 3}}));
    CHECK(t.rank == 3);
    CHECK(t.is_laman);
    CHECK_FALSE(t.is_circuit);

    const auto k5 = classify(complete_graph({1, 2, 3, 4, 5}));
    CHECK(k5.rank == 7);
    CHECK(k5.is_dependent);
    CHECK_FALSE(k5.is_circuit);

    const auto empty = classify(Graph(4));
    CHECK(empty.rank == 0);
    CHECK(empty.is_sparse);
    CHECK_FALSE(empty.is_laman);
    CHECK_FALSE(empty.is_rigid);
    CHECK_FALSE(empty.is_dependent);
    CHECK_FALSE(empty.is_circuit);
}

TEST_CASE("named circuits") {
    for (const Graph& g : {fixtures::double_banana(), fixtures::w4(), fixtures::w5(),
                           fixtures::desargues_plus_one(), fixtures::k33_plus_one()}) {
        CHECK(is_circuit(g));
        for (const Edge& e : g.edges()) CHECK(classify(g.without_edge(e)).is_laman);
    }
}

TEST_CASE("pebble game rank matches brute force counting") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 300; ++round) {
        const int n = 2 + round % 6;
        const Graph g = random_graph(rng, n, 0.3 + 0.1 * (round % 6));
        CHECK(sparsity_rank(g) == brute_rank(g));
    }
}

TEST_CASE("unique circuit of a Laman-plus-one graph") {
    CHECK(find_unique_circuit(k4(1, 2, 3, 4)) == k4(1, 2, 3, 4));
    const Graph g = k4(1, 2, 3, 4).with_edge({1, 5}).with_edge({2, 5});
    const Graph c = find_unique_circuit(g);
    CHECK(c.edges() == k4(1, 2, 3, 4).edges());
    CHECK(find_unique_circuit(fixtures::double_banana()) == fixtures::double_banana());
    CHECK_THROWS_AS(find_unique_circuit(complete_graph({1, 2, 3, 4, 5})), Error);

    std::vector<Edge> reversed(g.edges().rbegin(), g.edges().rend());
    PebbleGame game(g.n());
    for (const Edge& e : reversed) game.insert(e);
    CHECK(game.rank() == 7);
}

TEST_CASE("separating pairs") {
    CHECK(separating_pairs(k4(1, 2, 3, 4)).empty());
    const auto db = separating_pairs(fixtures::double_banana());
    REQUIRE(db.size() == 1);
    CHECK(db[0] == std::pair{3, 4});
    CHECK(separating_pairs(fixtures::w4()).empty());
    CHECK_THROWS_AS(separating_pairs(Graph(4, {{1, 2}, {2, 3}, {3, 4}})), Error);
}

TEST_CASE("two split and two sum") {
    const auto [a, b] = two_split(fixtures::double_banana(), {3, 4});
    CHECK(a.edges() == k4(1, 2, 3, 4).edges());
    CHECK(b.edges() == k4(3, 4, 5, 6).edges());
    CHECK(two_sum(a, b, {3, 4}) == fixtures::double_banana());
    CHECK_THROWS_AS(two_split(fixtures::w4(), {1, 3}), Error);
    CHECK_THROWS_AS(two_split(complete_graph({1, 2, 3, 4, 5}), {1, 2}), Error);

    // A chain of three K4 blocks: each separating pair splits off circuits.
    const Graph chain = two_sum(two_sum(k4(1, 2, 3, 4), k4(3, 4, 5, 6), {3, 4}), k4(5, 6, 7, 8), {5, 6});
    CHECK(is_circuit(chain));
    for (const auto& pair : separating_pairs(chain)) {
        const auto [c1, c2] = two_split(chain, pair);
        CHECK(is_circuit(c1));
        CHECK(is_circuit(c2));
        CHECK(two_sum(c1, c2, make_edge(pair.first, pair.second)) == chain);
    }
}

TEST_CASE("canonical labels") {
    CHECK(canonical_label(k4(1, 2, 3, 4)) == canonical_label(k4(2, 4, 5, 6)));
    CHECK(canonical_label(fixtures::w4()) != canonical_label(k4(1, 2, 3, 4).with_edge({4, 5}).without_edge({4, 5})));
    CHECK(canonical_label(fixtures::w4()) != canonical_label(Graph(5, k4(1, 2, 3, 4).edges())));
    CHECK_THROWS_AS(canonical_label(complete_graph({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13})), Error);
    CHECK(canonical_label(complete_graph({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12})).size() > 3);

    // Random relabelings of random graphs.
    std::mt19937_64 rng(99);
    for (int round = 0; round < 200; ++round) {
        const int n = 3 + round % 8;
        const Graph g = random_graph(rng, n, 0.5);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::map<int, int> map;
        for (int v = 1; v <= n; ++v) map[v] = perm[v - 1];
        const Graph h = relabel(g, map, n);
        const CanonicalForm cg = canonical_form(g), ch = canonical_form(h);
        CHECK(cg.label == ch.label);
        CHECK(relabel(g, cg.relabel, n) == relabel(h, ch.relabel, n));
    }
}

TEST_CASE("graph text format") {
    const Graph g = fixtures::w4();
    CHECK(parse_graph(serialize_graph(g)) == g);
    CHECK_THROWS_AS(parse_graph("3 2\n1 2\n1 2\n"), Error);
    CHECK_THROWS_AS(parse_graph("3 1\n1 4\n"), Error);
    CHECK_THROWS_AS(parse_graph("3 1\n2 1\n"), Error);
    CHECK_THROWS_AS(parse_graph("3 2\n1 2\n"), Error);
}
