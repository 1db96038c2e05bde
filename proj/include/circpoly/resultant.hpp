#pragma once

#include "circpoly/polynomial.hpp"

#include <vector>

namespace circpoly {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

struct SylvesterMatrix {
    int r = 0;  // degree of f in x
    int s = 0;  // degree of g in x
    PolyMatrix entries;

    std::size_t dim() const noexcept { return entries.size(); }
};

// First s rows hold f's coefficients, last r rows hold g's; throws BothDegreeZero.
SylvesterMatrix sylvester(const Polynomial& f, const Polynomial& g, EdgeVar x);

enum class DeterminantMethod { Bareiss, Cofactor };
enum class ResultantMethod { Auto, Bareiss, Cofactor, Subresultant };

Polynomial determinant(const PolyMatrix& m, DeterminantMethod method = DeterminantMethod::Bareiss);

// Raw (unnormalized) determinant of sylvester(f, g, x).
Polynomial resultant(const Polynomial& f, const Polynomial& g, EdgeVar x,
                     ResultantMethod method = ResultantMethod::Auto);

constexpr int predicted_hom_degree(int m, int r, int n, int s) { return m * s + n * r - r * s; }

}  // namespace circpoly
