#include "circpoly/cayley.hpp"
#include "circpoly/error.hpp"
#include "circpoly/factor.hpp"
#include "circpoly/resultant.hpp"
#include "circpoly/univariate.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace circpoly;

namespace {

Polynomial var(int a, int b) { return Polynomial::variable(EdgeVar{a, b}); }

int total_multiplicity(const Factorization& f) {
    int n = 0;
    for (const auto& [g, m] : f.factors) n += m;
    return n;
}

Polynomial random_irreducible_candidate(std::mt19937_64& rng, const std::vector<EdgeVar>& vars) {
    // Linear in a fresh leading variable, so irreducible as long as the two coefficients are coprime.
    while (true) {
        const Polynomial a = oracle::random_poly(rng, vars, 2, 1, 4);
        const Polynomial b = oracle::random_poly(rng, vars, 3, 2, 5);
        if (a.is_zero() || b.is_zero()) continue;
        const Polynomial p = a * var(7, 8) + b;
        if (multivariate_gcd(a, b).is_constant()) return p;
    }
}

}  // namespace

TEST_CASE("univariate factorization of constructed products") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> c(-9, 9);
    for (int round = 0; round < 40; ++round) {
        ZPoly prod{1};
        int count = 0;
        const int k = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) {
            ZPoly f;
            if (rng() % 2) {
                int a = c(rng);
                if (a == 0) a = 1;
                f = {c(rng), a};
            } else {
                f = {c(rng) * 2 + 1, 0, 2};
                if (f[0] < 0) f[0] = -f[0];
            }
            prod = upoly::mul(prod, f);
            ++count;
        }
        const auto fac = upoly::factor(prod);
        ZPoly back{fac.content};
        int n = 0;
        for (const auto& [f, m] : fac.factors) {
            for (int j = 0; j < m; ++j) back = upoly::mul(back, f);
            n += m;
        }
        CHECK(back == prod);
        CHECK(n >= 1);
        CHECK(n <= count);
    }
    // x^4 + 1 is irreducible over Q but splits modulo every prime.
    CHECK(upoly::factor({1, 0, 0, 0, 1}).factors.size() == 1);
    CHECK(upoly::factor({-1, 0, 0, 0, 1}).factors.size() == 3);
}

TEST_CASE("multivariate gcd") {
    std::mt19937_64 rng(5);
    const std::vector<EdgeVar> vars{{1, 2}, {1, 3}, {2, 3}};
    for (int round = 0; round < 30; ++round) {
        const Polynomial f = oracle::random_poly(rng, vars, 3, 2, 5);
        const Polynomial g = oracle::random_poly(rng, vars, 3, 2, 5);
        const Polynomial h = oracle::random_poly(rng, vars, 2, 2, 5);
        if (f.is_zero() || g.is_zero() || h.is_zero() || h.is_constant()) continue;
        const Polynomial d = multivariate_gcd(f * h, g * h);
        CHECK(divides(normalize(h), d));
        CHECK(divides(d, f * h));
        CHECK(divides(d, g * h));
        CHECK(multivariate_gcd(exact_divide(f * h, d), exact_divide(g * h, d)).is_constant());
    }
    const Polynomial k4 = k4_polynomial({1, 2, 3, 4});
    CHECK(multivariate_gcd(k4, k4) == normalize(k4));
    CHECK(multivariate_gcd(k4, k4.derivative(EdgeVar{1, 2})).is_constant());
    CHECK(multivariate_gcd(Polynomial::constant(6), var(1, 2)) == Polynomial::constant(1));
    const Polynomial k4b = k4_polynomial({1, 2, 3, 5});
    const Polynomial s = var(1, 2) + var(1, 3) + var(2, 3) + var(1, 4);
    CHECK(multivariate_gcd(k4 * k4b * s * s, k4b * s * (var(1, 2) - var(3, 4))) == normalize(k4b * s));
    CHECK(multivariate_gcd(k4 * s * s, (k4 * s * s).derivative(EdgeVar{1, 2})) == normalize(s));
    CHECK(content_in(var(1, 2) * var(1, 3) + var(1, 3) * var(2, 3), EdgeVar{1, 2}) == var(1, 3));
}

TEST_CASE("squarefree decomposition") {
    const Polynomial k4 = k4_polynomial({1, 2, 3, 4});
    const Polynomial q = var(1, 2) + var(3, 4) + Polynomial::constant(1);
    const Factorization sq = squarefree(k4 * k4 * q);
    CHECK(sq.expand() == k4 * k4 * q);
    REQUIRE(sq.factors.size() == 2);
    for (const auto& [f, m] : sq.factors) CHECK(((f == normalize(k4) && m == 2) || (f == q && m == 1)));
    const Factorization one = squarefree(k4);
    CHECK(one.factors.size() == 1);
    CHECK(one.expand() == k4);
    const Polynomial p = var(1, 2) * var(1, 2) - var(1, 3);
    const Factorization sp = squarefree(p * p * -3);
    CHECK(sp.expand() == p * p * -3);
    CHECK(sp.factors.size() == 1);
    CHECK(sp.factors.front().second == 2);
}

TEST_CASE("irreducibility") {
    const Polynomial k4 = k4_polynomial({1, 2, 3, 4});
    CHECK(is_irreducible_q(k4) == Irreducibility::Irreducible);
    CHECK(is_irreducible_q((var(1, 2) + var(1, 3)) * (var(1, 2) + var(1, 4))) == Irreducibility::Reducible);
    CHECK(is_irreducible_q(var(1, 2) * var(1, 2) - var(1, 3) * var(1, 3)) == Irreducibility::Reducible);
    const Polynomial w4 = resultant(k4_polynomial({1, 2, 3, 4}), k4_polynomial({1, 2, 3, 5}), EdgeVar{1, 2});
    CHECK(is_irreducible_q(w4) == Irreducibility::Irreducible);
    CHECK(is_irreducible_q(var(1, 2) * 3 + Polynomial::constant(6)) == Irreducibility::Irreducible);
    CHECK_THROWS_AS(is_irreducible_q(Polynomial::constant(4)), Error);
}

TEST_CASE("factorization over Q") {
    const Polynomial x = var(1, 2), y = var(1, 3);
    const Factorization d = factor_q(x * x - y * y);
    CHECK(total_multiplicity(d) == 2);
    CHECK(d.expand() == x * x - y * y);

    const Polynomial a = k4_polynomial({1, 2, 3, 4}), b = k4_polynomial({1, 2, 3, 5});
    const Factorization ab = factor_q(a * b * -2);
    CHECK(ab.factors.size() == 2);
    CHECK(ab.unit == -2);
    CHECK(ab.expand() == a * b * -2);

    // Product sharing every variable, so content extraction cannot separate the factors.
    const Polynomial c = a;
    const Polynomial e = x * y + var(2, 3) * var(1, 4) + var(3, 4) * 2 + var(2, 4) - var(1, 2) * var(1, 2);
    const Factorization ce = factor_q(c * e);
    CHECK(ce.factors.size() == 2);
    CHECK(ce.expand() == c * e);

    CHECK_THROWS_AS(factor_q(Polynomial()), Error);
}

TEST_CASE("factorization of random products") {
    std::mt19937_64 rng(17);
    const std::vector<EdgeVar> vars{{1, 2}, {1, 3}, {2, 3}};
    for (int round = 0; round < 25; ++round) {
        const int k = 1 + static_cast<int>(rng() % 3);
        Polynomial prod = Polynomial::constant(1);
        std::vector<Polynomial> parts;
        for (int i = 0; i < k; ++i) {
            Polynomial f = random_irreducible_candidate(rng, vars);
            if (rng() % 2) f = f.substitute({{EdgeVar{1, 2}, mpz_class(1)}}) + var(1, 2) * var(7, 8);
            parts.push_back(normalize(f));
            prod = prod * f;
        }
        const Factorization fac = factor_q(prod, FactorOptions{static_cast<std::uint64_t>(round)});
        CHECK(fac.expand() == prod);
        CHECK(total_multiplicity(fac) == k);
        for (const auto& [f, m] : fac.factors) CHECK(is_irreducible_q(f) != Irreducibility::Reducible);
    }
}
