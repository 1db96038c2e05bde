#pragma once

#include "circpoly/polynomial.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace circpoly {

struct Factorization {
    mpq_class unit = 1;
    std::vector<std::pair<Polynomial, int>> factors;  // normalized, pairwise distinct

    Polynomial expand() const;  // unit must be integral
};

enum class Irreducibility { Irreducible, Reducible, Unknown };

const char* to_string(Irreducibility v);

struct FactorOptions {
    std::uint64_t seed = 0;
    std::size_t term_cap = 2'000'000;  // largest input handed to the lifting backend
};

// Normalized gcd; gcd(0, 0) is zero.
Polynomial multivariate_gcd(const Polynomial& f, const Polynomial& g);
// Content with respect to x: gcd of the coefficients of the powers of x.
Polynomial content_in(const Polynomial& p, EdgeVar x);

// Squarefree parts with multiplicities (parts need not be irreducible).
Factorization squarefree(const Polynomial& p);

Irreducibility is_irreducible_q(const Polynomial& p, std::uint64_t seed = 0);

// Complete factorization over Q; throws BackendLimit past the configured cap.
Factorization factor_q(const Polynomial& p, const FactorOptions& options = {});

// True iff d divides p; screened by a modular image before exact division.
bool divides(const Polynomial& d, const Polynomial& p, Polynomial* quotient = nullptr);

}  // namespace circpoly
