#include "circpoly/canonical.hpp"
#include "circpoly/cayley.hpp"
#include "circpoly/error.hpp"
#include "circpoly/pipeline.hpp"
#include "circpoly/poly_io.hpp"
#include "circpoly/resultant.hpp"
#include "circpoly/sparsity.hpp"
#include "circpoly/tree.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace circpoly;

namespace {

enum Exit { Ok = 0, VerificationFailed = 1, PipelineFailed = 2, BadInput = 3 };

struct RunConfig {
    std::uint64_t seed = 0;
    int trials = 8;
    long coord_bound = 65536;
    std::string mode = "postfix";
    bool delayed = false;
    std::string strategy = "min_cost";
    std::string store_dir = "circpoly-store";
    std::size_t factor_cap = FactorOptions{}.term_cap;
    std::size_t memory_budget = 0;
    std::string spill_dir;
    unsigned threads = 1;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
    out << text;
}

bool looks_like_json(const std::string& text) {
    const auto k = text.find_first_not_of(" \t\r\n");
    return k != std::string::npos && text[k] == '{';
}

PipelineOptions pipeline_options(const RunConfig& cfg) {
    PipelineOptions o;
    o.seed = cfg.seed;
    o.trials = cfg.trials;
    o.coord_bound = cfg.coord_bound;
    o.factor.seed = cfg.seed;
    o.factor.term_cap = cfg.factor_cap;
    o.memory_budget_terms = cfg.memory_budget;
    if (!cfg.spill_dir.empty()) o.spill_dir = cfg.spill_dir;
    return o;
}

Strategy parse_strategy(const std::string& s) { return s == "first" ? Strategy::First : Strategy::MinCost; }

void print_degrees(std::ostream& os, const std::map<EdgeVar, int>& degs) {
    os << "degrees";
    for (const auto& [x, d] : degs) os << ' ' << to_string(x) << ':' << d;
    os << '\n';
}

bool passed(const Verification& v) { return v.membership && v.support_matches && v.homogeneous; }

void print_verification(std::ostream& os, const Verification& v) {
    os << "terms=" << v.term_count << " homdeg=" << v.hom_degree << '\n';
    print_degrees(os, v.degree_in);
    os << "membership=" << (v.membership ? "pass" : "fail") << " support=" << (v.support_matches ? "pass" : "fail")
       << " homogeneous=" << (v.homogeneous ? "yes" : "no") << '\n';
}

int run_check(const std::string& path) {
    const Graph g = parse_graph(slurp(path));
    std::cout << classify(g) << '\n';
    return Ok;
}

int run_tree(const RunConfig& cfg, const std::string& path, const std::string& out) {
    const Graph g = parse_graph(slurp(path));
    emit(out, tree_to_json(build_tree(g, GeneratorSet::k4_only(), parse_strategy(cfg.strategy))));
    return Ok;
}

int run_compute(const RunConfig& cfg, const std::string& path, const std::string& out) {
    const std::string text = slurp(path);
    const CRTree tree = looks_like_json(text)
                            ? tree_from_json(text)
                            : build_tree(parse_graph(text), GeneratorSet::k4_only(), parse_strategy(cfg.strategy));
    GeneratorSet gen = GeneratorSet::k4_only();
    bool k4_leaves = true;
    auto collect = [&](auto&& self, const CRTree& t) -> void {
        if (t.is_leaf()) {
            if (t.generator || !gen.contains(t.graph)) {
                k4_leaves = false;
                if (!gen.contains(t.graph)) gen.members.push_back(t.graph);
            }
            return;
        }
        self(self, *t.left);
        self(self, *t.right);
    };
    collect(collect, tree);
    const PipelineOptions options = pipeline_options(cfg);
    const CircuitRecord rec = k4_leaves ? compute_from_tree(tree, cfg.mode == "level" ? Mode::Level : Mode::Postfix,
                                                            cfg.delayed, options)
                                        : extended_compute(tree, gen, options);
    print_verification(std::cout, rec.verification);
    if (!out.empty()) emit(out, serialize_polynomial(rec.polynomial));
    if (!passed(rec.verification)) return VerificationFailed;
    Store(cfg.store_dir).put(rec);
    return Ok;
}

int run_verify(const RunConfig& cfg, const std::string& poly_path, const std::string& graph_path) {
    const Polynomial p = parse_polynomial(slurp(poly_path));
    const Graph g = parse_graph(slurp(graph_path));
    const Verification v = verify_polynomial(p, g, pipeline_options(cfg));
    print_verification(std::cout, v);
    return passed(v) ? Ok : VerificationFailed;
}

int run_generators(const RunConfig& cfg, int n, bool classify_classes) {
    const Census c = enumerate_generators(n, cfg.threads);
    std::cout << "n=" << c.n << " index_pairs=" << c.index_pairs << " nonzero=" << c.nonzero_minors
              << " distinct_minors=" << c.distinct_minors << " distinct_supports=" << c.distinct_supports
              << " classes=" << c.iso_classes.size() << '\n';
    if (classify_classes)
        for (const auto& cls : c.iso_classes)
            std::cout << cls.label << " vertices=" << cls.representative.vertices().size()
                      << " edges=" << cls.representative.edge_count() << " supports=" << cls.supports << '\n';
    return Ok;
}

EdgeVar parse_var(const std::string& s) {
    int i = 0, j = 0;
    char comma = 0;
    std::istringstream in(s);
    if (!(in >> i >> comma >> j) || comma != ',' || !in.eof())
        throw Error(Errc::ParseError, "expected i,j but got '" + s + "'");
    return make_var(i, j);
}

int run_resultant(const std::string& a, const std::string& b, const std::string& var, const std::string& out) {
    const Polynomial f = parse_polynomial(slurp(a));
    const Polynomial g = parse_polynomial(slurp(b));
    const EdgeVar x = parse_var(var);
    if (!f.contains(x) && !g.contains(x))
        throw Error(Errc::InvalidArgument, to_string(x) + " occurs in neither input");
    emit(out, serialize_polynomial(resultant(f, g, x)));
    return Ok;
}

int run_store(const RunConfig& cfg, const std::string& graph_path, const std::string& out) {
    const Store store(cfg.store_dir);
    if (graph_path.empty()) {
        for (const auto& label : store.labels()) std::cout << label << '\n';
        return Ok;
    }
    const auto rec = store.get(parse_graph(slurp(graph_path)));
    if (!rec) {
        std::cerr << "not in store\n";
        return PipelineFailed;
    }
    emit(out, serialize_polynomial(rec->polynomial));
    return Ok;
}

int exit_code(Errc code) {
    switch (code) {
        case Errc::ParseError:
        case Errc::InvalidArgument:
        case Errc::InvalidGraph:
        case Errc::NotCircuit:
        case Errc::BadIndices:
        case Errc::StoreCorrupt:
            return BadInput;
        default:
            return PipelineFailed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circuit polynomials of the 2D rigidity matroid"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "Seed for every random choice");
    app.add_option("--trials", cfg.trials, "Realizations per membership test")->check(CLI::PositiveNumber);
    app.add_option("--coord-bound", cfg.coord_bound, "Coordinate bound for realizations")->check(CLI::PositiveNumber);
    app.add_option("--store", cfg.store_dir, "Store directory");
    app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.fallthrough();

    std::string input, second, out, var;
    int n = 0;
    bool classify_classes = false;

    auto* check = app.add_subcommand("check", "Print the sparsity report of a graph");
    check->add_option("graph", input)->required();

    auto* tree = app.add_subcommand("tree", "Build a construction tree for a circuit");
    tree->add_option("graph", input)->required();
    tree->add_option("-o,--output", out);
    tree->add_option("--strategy", cfg.strategy)->check(CLI::IsMember({"first", "min_cost"}));

    auto* compute = app.add_subcommand("compute", "Compute a circuit polynomial from a graph or tree");
    compute->add_option("input", input)->required();
    compute->add_option("-o,--output", out, "Also write the polynomial here");
    compute->add_option("--mode", cfg.mode)->check(CLI::IsMember({"level", "postfix"}));
    compute->add_flag("--delayed", cfg.delayed, "Clean up only at the root");
    compute->add_option("--strategy", cfg.strategy)->check(CLI::IsMember({"first", "min_cost"}));
    compute->add_option("--factor-cap", cfg.factor_cap, "Largest polynomial handed to the factorizer");
    compute->add_option("--memory-budget", cfg.memory_budget, "Held terms before spilling to disk");
    compute->add_option("--spill-dir", cfg.spill_dir);

    auto* verify = app.add_subcommand("verify", "Check membership, support and homogeneity");
    verify->add_option("poly", input)->required();
    verify->add_option("--graph", second)->required();

    auto* generators = app.add_subcommand("generators", "Census of the 5x5 Cayley minors");
    generators->add_option("--n", n)->required()->check(CLI::Range(4, 10));
    generators->add_flag("--classify", classify_classes, "List isomorphism classes");

    auto* res = app.add_subcommand("resultant", "Raw resultant of two polynomials");
    res->add_option("p1", input)->required();
    res->add_option("p2", second)->required();
    res->add_option("--var", var, "Eliminated variable i,j")->required();
    res->add_option("-o,--output", out);

    auto* store = app.add_subcommand("store", "List the store or fetch a polynomial by graph");
    store->add_option("graph", input);
    store->add_option("-o,--output", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Ok : BadInput;
    }

    try {
        if (*check) return run_check(input);
        if (*tree) return run_tree(cfg, input, out);
        if (*compute) return run_compute(cfg, input, out);
        if (*verify) return run_verify(cfg, input, second);
        if (*generators) return run_generators(cfg, n, classify_classes);
        if (*res) return run_resultant(input, second, var, out);
        if (*store) return run_store(cfg, input, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return PipelineFailed;
    }
    return Ok;
}
