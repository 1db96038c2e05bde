#pragma once

#include "circpoly/factor.hpp"
#include "circpoly/graph.hpp"
#include "circpoly/polynomial.hpp"
#include "circpoly/tree.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace circpoly {

struct PipelineEvent {
    std::string node;  // node graph in edge-list form
    std::string kind;
    std::string detail;
};

struct PipelineOptions {
    std::uint64_t seed = 0;
    int trials = 8;
    long coord_bound = 65536;
    FactorOptions factor;
    // Node polynomials held between steps are written to spill_dir once their
    // combined term count exceeds the budget; 0 disables spilling.
    std::size_t memory_budget_terms = 0;
    std::filesystem::path spill_dir;
    std::function<void(const PipelineEvent&)> on_event;
};

struct Verification {
    bool membership = false;
    bool support_matches = false;
    bool homogeneous = false;
    int hom_degree = 0;
    std::size_t term_count = 0;
    std::map<EdgeVar, int> degree_in;
};

struct NodeReport {
    Graph graph;
    std::optional<Edge> elim;
    std::size_t resultant_terms = 0;
    int irreducible_factors = 0;  // distinct non-constant factors; 0 when not factored
    int candidates = 0;
    std::size_t result_terms = 0;
    bool padded = false;
    double seconds = 0;
};

struct Timings {
    double total_seconds = 0;
    long peak_rss_kb = 0;
    std::size_t spilled_nodes = 0;
};

struct CircuitRecord {
    Graph graph;
    Polynomial polynomial;
    CRTree tree;
    Verification verification;
    Timings timings;
    std::vector<NodeReport> nodes;
    std::vector<PipelineEvent> events;
};

struct NodeResult {
    Graph graph;
    Polynomial polynomial;
    bool cleaned = false;
};

enum class Mode { Level, Postfix };

Polynomial circuit_polynomial_resultant(const Graph& a, const Graph& b, Edge e, const Polynomial& pa, const Polynomial& pb,
                                        const PipelineOptions& options = {});

// Extracts the factor of a reducible resultant supported on c and lying in the ideal.
Polynomial clean_up_resultant(const Graph& c, const Polynomial& p, const PipelineOptions& options = {});

// Removes the common factor of two polynomials whose resultant in x vanishes.
std::pair<Polynomial, Polynomial> simplified_cleanup(const Polynomial& ra, const Polynomial& rb, EdgeVar x);

CircuitRecord compute_from_tree(const CRTree& t, Mode mode = Mode::Postfix, bool delayed = false,
                                const PipelineOptions& options = {});

CircuitRecord extended_compute(const CRTree& t, const GeneratorSet& gen, const PipelineOptions& options = {});

Verification verify_polynomial(const Polynomial& p, const Graph& g, const PipelineOptions& options = {});

// Directory of {label}.poly and {label}.meta files keyed by canonical label.
class Store {
public:
    explicit Store(std::filesystem::path dir);

    const std::filesystem::path& dir() const noexcept { return dir_; }
    void put(const CircuitRecord& rec) const;
    std::optional<CircuitRecord> get(const Graph& g) const;
    std::vector<std::string> labels() const;

private:
    std::filesystem::path dir_;
};

std::string record_meta_json(const CircuitRecord& rec);

}  // namespace circpoly
