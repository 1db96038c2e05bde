#pragma once

// Independent reference implementations used only by tests.

#include "circpoly/polynomial.hpp"

#include <gmpxx.h>

#include <cctype>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using circpoly::EdgeVar;
using circpoly::Polynomial;

// Exponent map keyed by variable; a term-level view independent of Monomial packing.
using Term = std::map<EdgeVar, int>;
using TermMap = std::map<Term, mpz_class>;

inline TermMap to_map(const Polynomial& p) {
    TermMap out;
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        Term term;
        for (std::size_t k = 0; k < p.vars().size(); ++k) {
            const int e = p.monomials()[t].exp(static_cast<int>(k));
            if (e) term[p.vars()[k]] = e;
        }
        out[term] += p.coefficients()[t];
    }
    return out;
}

inline Polynomial from_map(const TermMap& m) {
    std::vector<EdgeVar> vars;
    for (const auto& [term, c] : m)
        for (const auto& [x, e] : term) vars.push_back(x);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::vector<circpoly::Monomial> monos;
    std::vector<mpz_class> coeffs;
    for (const auto& [term, c] : m) {
        if (c == 0) continue;
        circpoly::Monomial mono;
        for (const auto& [x, e] : term)
            mono.set_exp(static_cast<int>(std::lower_bound(vars.begin(), vars.end(), x) - vars.begin()), e);
        monos.push_back(mono);
        coeffs.push_back(c);
    }
    return Polynomial::from_terms(vars, monos, coeffs);
}

// Quadratic-time schoolbook product.
inline TermMap naive_multiply(const TermMap& a, const TermMap& b) {
    TermMap out;
    for (const auto& [ta, ca] : a)
        for (const auto& [tb, cb] : b) {
            Term t = ta;
            for (const auto& [x, e] : tb) t[x] += e;
            out[t] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

// Parses sums of products written like "x34 x12^2 - 2 x13 x24"; single-digit vertex labels.
inline Polynomial parse_literal(const std::string& text) {
    TermMap out;
    std::size_t pos = 0;
    int sign = 1;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    bool expect_term = true;
    Term term;
    mpz_class coeff = 1;
    auto flush = [&] {
        if (!expect_term) out[term] += sign * coeff;
        term.clear();
        coeff = 1;
    };
    while (true) {
        skip();
        if (pos >= text.size()) break;
        if (text[pos] == '+' || text[pos] == '-') {
            flush();
            sign = text[pos] == '+' ? 1 : -1;
            ++pos;
            expect_term = true;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::size_t end = pos;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
            coeff *= mpz_class(text.substr(pos, end - pos));
            pos = end;
            expect_term = false;
            continue;
        }
        if (text[pos] == 'x') {
            const int i = text[pos + 1] - '0', j = text[pos + 2] - '0';
            pos += 3;
            int e = 1;
            if (pos < text.size() && text[pos] == '^') {
                std::size_t end = pos + 1;
                while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
                e = std::stoi(text.substr(pos + 1, end - pos - 1));
                pos = end;
            }
            term[EdgeVar{std::min(i, j), std::max(i, j)}] += e;
            expect_term = false;
            continue;
        }
        throw std::runtime_error("parse_literal: unexpected character at " + std::to_string(pos));
    }
    flush();
    for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
    return from_map(out);
}

// The 22-term K4 circuit polynomial on vertices 1..4, written out by hand.
inline const char* kK4Literal =
    "x34 x12^2 + x34^2 x12 + x13 x23 x12 - x14 x23 x12 - x13 x24 x12 + x14^2 x23 + x13 x24^2 "
    "+ x14 x24 x12 - x13 x34 x12 - x14 x34 x12 + x13^2 x24 + x14 x23^2 - x23 x34 x12 - x24 x34 x12 "
    "+ x23 x24 x34 - x13 x24 x34 - x13 x14 x23 - x13 x14 x24 - x13 x23 x24 - x14 x23 x24 "
    "+ x13 x14 x34 - x14 x23 x34";

inline Polynomial random_poly(std::mt19937_64& rng, const std::vector<EdgeVar>& vars, int terms, int max_exp,
                              int coeff_bound) {
    std::uniform_int_distribution<int> ev(0, max_exp), cv(-coeff_bound, coeff_bound);
    TermMap m;
    for (int t = 0; t < terms; ++t) {
        Term term;
        for (const EdgeVar& x : vars) {
            const int e = ev(rng);
            if (e) term[x] = e;
        }
        int c = cv(rng);
        if (c == 0) c = 1;
        m[term] += c;
    }
    for (auto it = m.begin(); it != m.end();) it = (it->second == 0) ? m.erase(it) : std::next(it);
    return from_map(m);
}

inline std::vector<EdgeVar> vars_of_complete(int n) {
    std::vector<EdgeVar> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.push_back(EdgeVar{i, j});
    return out;
}

// Determinant by Leibniz expansion over all permutations.
inline Polynomial leibniz_det(const std::vector<std::vector<Polynomial>>& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Polynomial sum;
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (perm[a] > perm[b]) ++inversions;
        Polynomial term = Polynomial::constant(inversions % 2 ? -1 : 1);
        for (std::size_t r = 0; r < n && !term.is_zero(); ++r) term = term * m[r][perm[r]];
        sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

}  // namespace oracle
