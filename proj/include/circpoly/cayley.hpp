#pragma once

#include "circpoly/graph.hpp"
#include "circpoly/polynomial.hpp"

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace circpoly {

using Index5 = std::array<int, 5>;

// Entry (r, c) of the bordered squared-distance matrix, 0 <= r, c <= n.
Polynomial cayley_entry(int r, int c);

// Raw 5x5 determinant of the selected submatrix.
Polynomial minor_determinant(int n, const Index5& rows, const Index5& cols);
// Normalized minor; throws BadIndices on invalid selections.
Polynomial minor_polynomial(int n, const Index5& rows, const Index5& cols);

Polynomial k4_polynomial(const std::array<int, 4>& quad);

struct GeneratorRecord {
    Polynomial polynomial;
    Graph support;
    Index5 rows{};
    Index5 cols{};
    std::string iso_class;
};

struct IsoClassSummary {
    std::string label;
    Graph representative;
    std::size_t supports = 0;  // distinct support graphs in the class
};

struct Census {
    int n = 0;
    std::size_t index_pairs = 0;
    std::size_t nonzero_minors = 0;
    std::size_t distinct_minors = 0;
    std::size_t distinct_supports = 0;
    std::vector<IsoClassSummary> iso_classes;  // sorted by (vertices, edges, label)
};

// Streams every 5x5 minor of the Cayley matrix of n points; 4 <= n <= 10.
Census enumerate_generators(int n, unsigned threads = 1);

// All distinct normalized minors whose support is exactly g (vertices taken from g).
std::vector<GeneratorRecord> generators_on_support(const Graph& g);
// Minimal by (homogeneous degree, degree in elim, term count); nullopt if none.
std::optional<GeneratorRecord> select_generator(const Graph& g, std::optional<EdgeVar> elim);

struct Realization {
    std::vector<std::array<mpz_class, 2>> points;  // points[v] for v = 1..n; index 0 unused
    std::map<EdgeVar, mpz_class> distances;
};

Realization random_realization(int n, long bound, std::uint64_t seed);

// Exact vanishing test of p on `trials` random realizations.
bool member_test(const Polynomial& p, int trials, long bound, std::uint64_t seed);

// Exact rank over Q of the rigidity matrix of g at r.
int rigidity_matrix_rank(const Graph& g, const Realization& r);

}  // namespace circpoly
