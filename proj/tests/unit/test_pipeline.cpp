#include "circpoly/canonical.hpp"
#include "circpoly/cayley.hpp"
#include "circpoly/error.hpp"
#include "circpoly/pipeline.hpp"
#include "circpoly/resultant.hpp"

#include "doctest.h"
#include "graphs.hpp"

#include <filesystem>
#include <fstream>

using namespace circpoly;
using fixtures::k4;

namespace {

Polynomial var(int a, int b) { return Polynomial::variable(EdgeVar{a, b}); }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("circpoly-test-" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

const Polynomial& w4_poly() {
    static const Polynomial p = compute_from_tree(build_tree(fixtures::w4())).polynomial;
    return p;
}

}  // namespace

TEST_CASE("single-leaf tree") {
    const CircuitRecord rec = compute_from_tree(CRTree::leaf(k4(1, 2, 3, 4)));
    CHECK(rec.polynomial == k4_polynomial({1, 2, 3, 4}));
    CHECK(rec.verification.membership);
    CHECK(rec.verification.hom_degree == 3);
}

TEST_CASE("W4 and double banana across modes") {
    const CRTree w = build_tree(fixtures::w4());
    const CircuitRecord a = compute_from_tree(w, Mode::Postfix, false);
    CHECK(a.polynomial.term_count() == 843);
    CHECK(a.verification.hom_degree == 8);
    CHECK(a.verification.membership);
    CHECK(a.verification.support_matches);
    for (const auto& [x, d] : a.verification.degree_in) CHECK(d == 4);
    REQUIRE(a.nodes.size() == 1);
    CHECK(a.nodes.front().irreducible_factors == 1);
    CHECK(compute_from_tree(w, Mode::Level, false).polynomial == a.polynomial);
    CHECK(compute_from_tree(w, Mode::Postfix, true).polynomial == a.polynomial);

    const CRTree db = build_tree(fixtures::double_banana());
    const CircuitRecord b = compute_from_tree(db, Mode::Level, false);
    CHECK(b.polynomial.term_count() == 1752);
    CHECK(b.verification.hom_degree == 8);
    CHECK(compute_from_tree(db, Mode::Postfix, false).polynomial == b.polynomial);
    CHECK(compute_from_tree(db, Mode::Level, true).polynomial == b.polynomial);
}

TEST_CASE("every decomposition of W4 gives the same polynomial") {
    const Graph w = fixtures::w4();
    int count = 0;
    for (const auto& d : admissible_decompositions(w)) {
        const Polynomial p = circuit_polynomial_resultant(d.a, d.b, d.e, k4_polynomial({d.a.vertices()[0], d.a.vertices()[1], d.a.vertices()[2], d.a.vertices()[3]}),
                                                          k4_polynomial({d.b.vertices()[0], d.b.vertices()[1], d.b.vertices()[2], d.b.vertices()[3]}));
        CHECK(p == w4_poly());
        ++count;
    }
    CHECK(count >= 2);
}

TEST_CASE("clean-up of constructed reducible resultants") {
    const Polynomial w = w4_poly();
    std::vector<PipelineEvent> events;
    PipelineOptions opts;
    opts.on_event = [&](const PipelineEvent& e) { events.push_back(e); };
    CHECK(clean_up_resultant(fixtures::w4(), w * (var(1, 2) + var(1, 3)), opts) == w);

    // A noise factor on the full support leaves the decision to the membership test.
    Polynomial noise;
    const Graph wg = fixtures::w4();
    for (const Edge& e : wg.edges()) noise += Polynomial::variable(var_of(e));
    events.clear();
    CHECK(clean_up_resultant(fixtures::w4(), w * noise * noise, opts) == w);
    bool decisive = false;
    for (const auto& e : events) decisive = decisive || e.kind == "membership-decisive";
    CHECK(decisive);

    CHECK_THROWS_AS(clean_up_resultant(fixtures::w4(), (var(1, 2) + var(1, 3)) * (var(1, 4) + var(3, 4)), opts), Error);
}

TEST_CASE("simplified clean-up") {
    const EdgeVar x{1, 2};
    const Polynomial h = var(1, 2) + var(2, 3) * 2;
    const Polynomial f = var(1, 2) * var(1, 2) - var(1, 3);
    const Polynomial g = var(1, 2) * var(1, 4) + var(3, 4);
    REQUIRE(resultant(h * f, h * g, x).is_zero());
    const auto [qa, qb] = simplified_cleanup(h * f, h * g, x);
    CHECK(normalize(qa) == normalize(f));
    CHECK(normalize(qb) == normalize(g));
    CHECK_FALSE(resultant(qa, qb, x).is_zero());
    CHECK_THROWS_AS(simplified_cleanup(h * f, h, x), Error);
}

TEST_CASE("memory spill keeps results identical") {
    PipelineOptions opts;
    opts.memory_budget_terms = 1;
    opts.spill_dir = scratch("spill");
    const CRTree t = build_tree(fixtures::w5());
    const CRTree left = *t.left;
    const CircuitRecord spilled = compute_from_tree(left, Mode::Postfix, false, opts);
    CHECK(spilled.timings.spilled_nodes > 0);
    CHECK(spilled.polynomial == compute_from_tree(left).polynomial);
    CHECK(std::filesystem::is_empty(opts.spill_dir));
}

TEST_CASE("extended computation on generator trees") {
    GeneratorSet gen = GeneratorSet::k4_only();
    gen.members.push_back(complete_graph({1, 2, 3, 4, 5}));
    const CRTree full = fixtures::k33_plus_one_tree();
    const CRTree& d3 = *full.left;
    const CRTree& d2 = *d3.left;

    const CircuitRecord r2 = extended_compute(d2, gen);
    REQUIRE(r2.nodes.size() == 1);
    CHECK(r2.nodes[0].irreducible_factors == 1);
    CHECK(r2.polynomial.term_count() == 2269);
    CHECK(r2.verification.support_matches);
    CHECK(r2.verification.membership);

    const CircuitRecord r3 = extended_compute(d3, gen);
    REQUIRE(r3.nodes.size() == 2);
    CHECK(r3.nodes[1].resultant_terms == 222108);
    CHECK(r3.nodes[1].candidates == 1);
    CHECK(r3.verification.support_matches);
    CHECK(r3.verification.membership);
    CHECK(r3.verification.hom_degree == 12);

    CHECK_THROWS_AS(extended_compute(full, GeneratorSet::k4_only()), Error);
}

TEST_CASE("extended computation on a K4 tree") {
    GeneratorSet gen = GeneratorSet::k4_only();
    const CRTree w = build_tree(fixtures::w4());
    const CircuitRecord rec = extended_compute(w, gen);
    CHECK(rec.polynomial == w4_poly());
    CHECK_FALSE(rec.nodes[0].padded);
}

TEST_CASE("store round trip") {
    const Store store(scratch("store"));
    CHECK_FALSE(store.get(fixtures::w4()).has_value());
    const CircuitRecord rec = compute_from_tree(build_tree(fixtures::w4()));
    store.put(rec);
    const auto same = store.get(fixtures::w4());
    REQUIRE(same.has_value());
    CHECK(same->polynomial == rec.polynomial);
    CHECK(same->verification.term_count == 843);

    const std::map<int, int> perm{{1, 3}, {2, 5}, {3, 1}, {4, 2}, {5, 4}};
    const Graph moved = relabel(fixtures::w4(), perm, 5);
    const auto other = store.get(moved);
    REQUIRE(other.has_value());
    CHECK(other->polynomial == normalize(rec.polynomial.relabel_vertices(perm)));
    CHECK(other->verification.degree_in == inspect(other->polynomial).degree_in);
    CHECK(store.labels().size() == 1);

    std::ofstream(store.dir() / (store.labels().front().replace(store.labels().front().find(':'), 1, "_") + ".poly")) << "garbage";
    CHECK_THROWS_AS(store.get(fixtures::w4()), Error);
}
