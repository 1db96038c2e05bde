#pragma once

#include "circpoly/graph.hpp"

#include <iosfwd>
#include <vector>

namespace circpoly {

struct SparsityReport {
    int rank = 0;
    bool is_sparse = true;
    bool is_laman = false;
    bool is_rigid = false;
    bool is_dependent = false;
    bool is_circuit = false;
};

std::ostream& operator<<(std::ostream& os, const SparsityReport& r);

// (2,3)-pebble game. Edges are offered in the given order.
class PebbleGame {
public:
    explicit PebbleGame(int n);

    // Inserts the edge if independent of the accepted set; returns acceptance.
    bool insert(Edge e);
    int rank() const noexcept { return rank_; }

private:
    bool find_pebble(int root, int avoid1, int avoid2);

    std::vector<int> pebbles_;
    std::vector<std::vector<int>> out_;
    std::vector<int> seen_;
    std::vector<int> parent_;
    int stamp_ = 0;
    int rank_ = 0;
};

int sparsity_rank(const Graph& g);
SparsityReport classify(const Graph& g);
bool is_circuit(const Graph& g);

// Edges e with rank(g - e) = rank(g), restricted to their span.
Graph find_unique_circuit(const Graph& g);

}  // namespace circpoly
