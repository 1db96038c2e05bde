#pragma once

#include "circpoly/monomial.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace circpoly::detail {

struct TermSpan {
    const Monomial* m;
    const mpz_class* c;
    std::size_t size;
};

// Product of two canonical term lists over the same variable layout.
void multiply_terms(TermSpan a, TermSpan b, std::vector<Monomial>& out_m, std::vector<mpz_class>& out_c);

// Exact quotient a / b; returns false if b does not divide a.
bool divide_terms(TermSpan a, TermSpan b, std::vector<Monomial>& out_m, std::vector<mpz_class>& out_c);

}  // namespace circpoly::detail
