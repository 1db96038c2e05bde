#pragma once

#include "circpoly/edge_var.hpp"
#include "circpoly/graph.hpp"
#include "circpoly/monomial.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace circpoly {

// Sparse polynomial in Z[x_e]. Terms are kept in descending grevlex order
// over the variables ordered by (i,j); the variable list is exactly the support.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial constant(const mpz_class& c);
    static Polynomial variable(EdgeVar x, int exponent = 1);
    // Sorts, merges duplicates, drops zeros and unused variables.
    static Polynomial from_terms(std::vector<EdgeVar> vars, std::vector<Monomial> monos,
                                 std::vector<mpz_class> coeffs);
    // Trusted constructor: terms already canonical over `vars` (unused vars are pruned).
    static Polynomial from_sorted(std::vector<EdgeVar> vars, std::vector<Monomial> monos,
                                  std::vector<mpz_class> coeffs);

    bool is_zero() const noexcept { return monos_.empty(); }
    bool is_constant() const noexcept { return vars_.empty(); }
    std::size_t term_count() const noexcept { return monos_.size(); }

    const std::vector<EdgeVar>& vars() const noexcept { return vars_; }
    const std::vector<Monomial>& monomials() const noexcept { return monos_; }
    const std::vector<mpz_class>& coefficients() const noexcept { return coeffs_; }

    int var_index(EdgeVar x) const;
    bool contains(EdgeVar x) const { return var_index(x) >= 0; }
    int degree(EdgeVar x) const;
    int total_degree() const;
    std::optional<int> hom_degree() const;
    const mpz_class& leading_coefficient() const { return coeffs_.front(); }

    mpz_class content() const;
    Polynomial primitive() const;  // divides by content, keeps sign
    Polynomial normalized() const;  // content 1, positive leading coefficient
    bool is_normalized() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const mpz_class& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const mpz_class& c) { return a *= c; }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    Polynomial pow(unsigned k) const;
    Polynomial derivative(EdgeVar x) const;
    // Divides every coefficient by c; requires exactness.
    Polynomial divided_by(const mpz_class& c) const;

    // [a_r, ..., a_0] with p = sum a_k x^k; empty for zero.
    std::vector<Polynomial> coefficients_wrt(EdgeVar x) const;
    static Polynomial from_coefficients(EdgeVar x, const std::vector<Polynomial>& descending);

    // Renames vertices; every vertex of the support must be mapped.
    Polynomial relabel_vertices(const std::map<int, int>& map) const;
    // Returns the polynomial re-expressed over a superset of its variables.
    std::vector<Monomial> monomials_over(const std::vector<EdgeVar>& vars) const;

    mpq_class evaluate(const std::map<EdgeVar, mpq_class>& assignment) const;
    mpz_class evaluate(const std::map<EdgeVar, mpz_class>& assignment) const;
    // Substitutes integer values for some variables.
    Polynomial substitute(const std::map<EdgeVar, mpz_class>& assignment) const;

    std::size_t hash() const;

private:
    void prune_vars();

    std::vector<EdgeVar> vars_;
    std::vector<Monomial> monos_;
    std::vector<mpz_class> coeffs_;
};

// Throws NotDivisible unless b divides a exactly.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);
std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);
Polynomial normalize(const Polynomial& p);

struct Inspection {
    Graph support;
    std::optional<int> hom_degree;
    std::map<EdgeVar, int> degree_in;
    std::size_t term_count = 0;
};

// Throws ZeroPolynomial on zero input.
Inspection inspect(const Polynomial& p);
Graph support_graph(const Polynomial& p);

std::vector<EdgeVar> merge_vars(const std::vector<EdgeVar>& a, const std::vector<EdgeVar>& b);

}  // namespace circpoly
