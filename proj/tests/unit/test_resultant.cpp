#include "circpoly/cayley.hpp"
#include "circpoly/error.hpp"
#include "circpoly/resultant.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace circpoly;

namespace {

const EdgeVar kX{1, 2};

Polynomial random_in_x(std::mt19937_64& rng, int max_deg_x, int terms) {
    const std::vector<EdgeVar> vars{kX, {1, 3}, {2, 3}, {3, 4}};
    while (true) {
        const Polynomial p = oracle::random_poly(rng, vars, terms, 1, 5);
        const int want = static_cast<int>(rng() % (max_deg_x + 1));
        Polynomial out = p + Polynomial::variable(kX, want + 1) * Polynomial::variable(EdgeVar{1, 3});
        if (out.degree(kX) >= 1) return out;
    }
}

// Homogeneous polynomial of degree d with x-degree at most d.
Polynomial random_homogeneous(std::mt19937_64& rng, int d, int terms) {
    const std::vector<EdgeVar> vars{kX, {1, 3}, {2, 3}, {3, 4}};
    oracle::TermMap m;
    std::uniform_int_distribution<int> pick(0, 3), coeff(-4, 4);
    for (int t = 0; t < terms; ++t) {
        oracle::Term term;
        for (int k = 0; k < d; ++k) term[vars[pick(rng)]] += 1;
        m[term] += coeff(rng);
    }
    oracle::Term top;
    top[kX] = d;
    m[top] = 1;
    for (auto it = m.begin(); it != m.end();) it = (it->second == 0) ? m.erase(it) : std::next(it);
    return oracle::from_map(m);
}

PolyMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
    const std::vector<EdgeVar> vars{{1, 2}, {1, 3}, {2, 3}};
    PolyMatrix m(n, std::vector<Polynomial>(n));
    for (auto& row : m)
        for (auto& e : row)
            if (rng() % 4) e = oracle::random_poly(rng, vars, 1 + static_cast<int>(rng() % 3), 1, 3);
    return m;
}

const ResultantMethod kMethods[] = {ResultantMethod::Bareiss, ResultantMethod::Cofactor, ResultantMethod::Subresultant};

}  // namespace

TEST_CASE("sylvester layout") {
    const Polynomial x = Polynomial::variable(kX);
    const Polynomial a = Polynomial::variable(EdgeVar{1, 3}), b = Polynomial::variable(EdgeVar{2, 3});
    const SylvesterMatrix s = sylvester(x - a, x - b, kX);
    REQUIRE(s.dim() == 2);
    CHECK(s.entries[0][0] == Polynomial::constant(1));
    CHECK(s.entries[0][1] == -a);
    CHECK(s.entries[1][0] == Polynomial::constant(1));
    CHECK(s.entries[1][1] == -b);
    for (ResultantMethod m : kMethods) CHECK(resultant(x - a, x - b, kX, m) == a - b);

    const Polynomial q = x * x + a;
    const SylvesterMatrix s4 = sylvester(q, q + b * x, kX);
    CHECK(s4.dim() == 4);
    CHECK(s4.entries[0][3].is_zero());
    CHECK(s4.entries[1][0].is_zero());
    CHECK_THROWS_AS(sylvester(a, b, kX), Error);
    CHECK_THROWS_AS(resultant(a, b, kX), Error);
}

TEST_CASE("two K4 polynomials sharing an edge") {
    const Polynomial p = k4_polynomial({1, 2, 3, 4}), q = k4_polynomial({1, 2, 5, 6});
    const SylvesterMatrix s = sylvester(p, q, kX);
    CHECK(s.dim() == 4);
    for (const auto& row : s.entries)
        for (const auto& e : row) CHECK(e.total_degree() <= 3);
    const Polynomial r = resultant(p, q, kX).normalized();
    CHECK(r.term_count() == 1752);
    CHECK(r.hom_degree() == 8);
}

TEST_CASE("W4 from two K4 sharing a triangle") {
    const Polynomial r = resultant(k4_polynomial({1, 2, 3, 4}), k4_polynomial({1, 2, 3, 5}), kX);
    for (ResultantMethod m : kMethods)
        CHECK(resultant(k4_polynomial({1, 2, 3, 4}), k4_polynomial({1, 2, 3, 5}), kX, m) == r);
    const Polynomial w4 = r.normalized();
    CHECK(w4.term_count() == 843);
    CHECK(w4.hom_degree() == 8);
    const Graph support = support_graph(w4);
    CHECK(support.edge_count() == 8);
    CHECK_FALSE(support.has_edge({1, 2}));
}

TEST_CASE("determinant backends agree with cofactor expansion up to dimension 5") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 1 + round % 5;
        const PolyMatrix m = random_matrix(rng, n);
        CHECK(determinant(m, DeterminantMethod::Bareiss) == determinant(m, DeterminantMethod::Cofactor));
    }
}

TEST_CASE("resultant identities on random inputs") {
    std::mt19937_64 rng(17);
    int swaps = 0, products = 0, common = 0;
    for (int round = 0; round < 220; ++round) {
        const Polynomial f = random_in_x(rng, 2, 4), g = random_in_x(rng, 2, 4), h = random_in_x(rng, 1, 3);
        const int r = f.degree(kX), s = g.degree(kX);
        const Polynomial rfg = resultant(f, g, kX);
        for (ResultantMethod m : kMethods) CHECK(resultant(f, g, kX, m) == rfg);
        CHECK(rfg == resultant(g, f, kX) * mpz_class((r * s) % 2 ? -1 : 1));
        ++swaps;
        CHECK(resultant(f * g, h, kX) == resultant(f, h, kX) * resultant(g, h, kX));
        ++products;
        CHECK(resultant(h * f, h * g, kX).is_zero());
        ++common;
    }
    CHECK(swaps >= 200);
    CHECK(products >= 200);
    CHECK(common >= 200);
}

TEST_CASE("homogeneous degree prediction") {
    CHECK(predicted_hom_degree(3, 2, 3, 2) == 8);
    CHECK(predicted_hom_degree(8, 4, 8, 4) == 48);
    CHECK(predicted_hom_degree(8, 4, 3, 2) == 20);
    std::mt19937_64 rng(23);
    int checked = 0;
    for (int round = 0; round < 150; ++round) {
        const int m = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 3);
        const Polynomial f = random_homogeneous(rng, m, 5), g = random_homogeneous(rng, n, 5);
        const Polynomial res = resultant(f, g, kX);
        if (res.is_zero()) continue;
        CHECK(res.hom_degree() == predicted_hom_degree(m, f.degree(kX), n, g.degree(kX)));
        ++checked;
    }
    CHECK(checked >= 100);
}
