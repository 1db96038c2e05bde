#include "circpoly/pipeline.hpp"

#include "circpoly/canonical.hpp"
#include "circpoly/cayley.hpp"
#include "circpoly/error.hpp"
#include "circpoly/poly_io.hpp"
#include "circpoly/resultant.hpp"
#include "circpoly/sparsity.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <sys/resource.h>

namespace circpoly {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

long peak_rss_kb() {
    rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return ru.ru_maxrss;
}

std::string edge_list(const Graph& g) {
    std::string out;
    for (const Edge& e : g.edges()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(e.u) + std::to_string(e.v);
    }
    return out;
}

bool same_support(const Polynomial& p, const Graph& g) { return support_graph(p).edges() == g.edges(); }

Polynomial k4_leaf(const Graph& g) {
    const auto vs = g.vertices();
    if (vs.size() != 4 || g.edge_count() != 6) throw Error(Errc::InvalidArgument, "leaf " + edge_list(g) + " is not a K4");
    return k4_polynomial({vs[0], vs[1], vs[2], vs[3]});
}

class Recorder {
public:
    Recorder(const PipelineOptions& options, CircuitRecord* rec) : options_(options), rec_(rec) {}

    void emit(const Graph& g, std::string kind, std::string detail) const {
        PipelineEvent ev{edge_list(g), std::move(kind), std::move(detail)};
        if (options_.on_event) options_.on_event(ev);
        if (rec_) rec_->events.push_back(std::move(ev));
    }

    void report(NodeReport r) const {
        if (rec_) rec_->nodes.push_back(std::move(r));
    }

private:
    const PipelineOptions& options_;
    CircuitRecord* rec_;
};

Polynomial clean_up(const Graph& c, const Polynomial& p, const PipelineOptions& options, const Recorder& log,
                    NodeReport* report) {
    const Factorization fac = factor_q(p, FactorOptions{options.seed, options.factor.term_cap});
    std::vector<Polynomial> candidates;
    for (const auto& [f, m] : fac.factors)
        if (same_support(f, c)) candidates.push_back(f);
    if (report) {
        report->irreducible_factors = static_cast<int>(fac.factors.size());
        report->candidates = static_cast<int>(candidates.size());
    }
    log.emit(c, "clean-up", std::to_string(fac.factors.size()) + " factors, " + std::to_string(candidates.size()) +
                                " supported on the circuit");
    if (candidates.size() == 1) return candidates.front();
    if (candidates.empty()) {
        log.emit(c, "no-factor-in-ideal", "no factor is supported on the circuit");
        throw Error(Errc::NoFactorInIdeal, "no factor supported on " + edge_list(c));
    }
    std::vector<Polynomial> members;
    for (const auto& f : candidates)
        if (member_test(f, options.trials, options.coord_bound, options.seed)) members.push_back(f);
    log.emit(c, "membership-decisive", std::to_string(members.size()) + " of " + std::to_string(candidates.size()) +
                                           " candidates pass the membership test");
    if (members.size() == 1) return members.front();
    if (members.empty()) throw Error(Errc::NoFactorInIdeal, "no candidate passes the membership test");
    log.emit(c, "multiple-factors-in-ideal", std::to_string(members.size()) + " candidates");
    throw Error(Errc::MultipleFactorsInIdeal, std::to_string(members.size()) + " factors pass the membership test");
}

Polynomial finish(const Graph& c, const Polynomial& r, const PipelineOptions& options, const Recorder& log,
                  NodeReport* report) {
    const Irreducibility irr = is_irreducible_q(r, options.seed);
    if (irr == Irreducibility::Irreducible) {
        if (report) report->irreducible_factors = 1;
        return normalize(r);
    }
    if (irr == Irreducibility::Unknown) log.emit(c, "irreducibility-unknown", "falling back to factorization");
    return clean_up(c, r, options, log, report);
}

Polynomial resultant_step(const Graph& a, const Graph& b, Edge e, const Polynomial& pa, const Polynomial& pb,
                          const PipelineOptions& options, const Recorder& log, NodeReport* report) {
    const Graph c = combinatorial_resultant(a, b, e);
    if (!is_circuit(c)) throw Error(Errc::NotCircuit, edge_list(c) + " is not a circuit");
    const Polynomial r = resultant(pa, pb, var_of(e));
    if (r.is_zero()) throw Error(Errc::ZeroResultant, "resultant at " + edge_list(c) + " vanishes");
    if (report) report->resultant_terms = r.term_count();
    return finish(c, r, options, log, report);
}

// Keeps node polynomials between steps, spilling to disk beyond the budget.
class NodeCache {
public:
    NodeCache(const PipelineOptions& options, Timings& timings) : options_(options), timings_(timings) {}

    ~NodeCache() {
        for (const auto& [id, path] : disk_) {
            std::error_code ec;
            std::filesystem::remove(path, ec);
        }
    }

    int put(Polynomial p) {
        const int id = next_++;
        held_ += p.term_count();
        mem_.emplace(id, std::move(p));
        while (options_.memory_budget_terms && held_ > options_.memory_budget_terms && !mem_.empty()) spill_largest();
        return id;
    }

    Polynomial take(int id) {
        if (const auto it = mem_.find(id); it != mem_.end()) {
            Polynomial p = std::move(it->second);
            held_ -= p.term_count();
            mem_.erase(it);
            return p;
        }
        const auto it = disk_.find(id);
        if (it == disk_.end()) throw Error(Errc::InvalidArgument, "unknown cached node");
        std::ifstream in(it->second);
        std::stringstream ss;
        ss << in.rdbuf();
        Polynomial p = parse_polynomial(ss.str());
        std::filesystem::remove(it->second);
        disk_.erase(it);
        return p;
    }

private:
    void spill_largest() {
        auto it = std::max_element(mem_.begin(), mem_.end(), [](const auto& x, const auto& y) {
            return x.second.term_count() < y.second.term_count();
        });
        const std::filesystem::path dir = options_.spill_dir.empty() ? std::filesystem::temp_directory_path() : options_.spill_dir;
        std::filesystem::create_directories(dir);
        const auto path = dir / ("spill-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "-" +
                                 std::to_string(it->first) + ".poly");
        std::ofstream(path) << serialize_polynomial(it->second);
        held_ -= it->second.term_count();
        disk_.emplace(it->first, path);
        mem_.erase(it);
        ++timings_.spilled_nodes;
    }

    const PipelineOptions& options_;
    Timings& timings_;
    std::map<int, Polynomial> mem_;
    std::map<int, std::filesystem::path> disk_;
    std::size_t held_ = 0;
    int next_ = 0;
};

class TreeRun {
public:
    TreeRun(bool delayed, const PipelineOptions& options, CircuitRecord& rec)
        : delayed_(delayed), options_(options), rec_(rec), log_(options, &rec), cache_(options, rec.timings) {}

    NodeResult postfix(const CRTree& t, bool root) {
        if (t.is_leaf()) return {t.graph, k4_leaf(t.graph), true};
        NodeResult a = postfix(*t.left, false);
        const int id = cache_.put(std::move(a.polynomial));
        NodeResult b = postfix(*t.right, false);
        a.polynomial = cache_.take(id);
        return step(t, a, b, root);
    }

    NodeResult level(const CRTree& t) {
        std::vector<std::vector<const CRTree*>> levels;
        collect(t, 0, levels);
        std::map<const CRTree*, std::pair<Graph, int>> done;
        auto fetch = [&](const CRTree* n) {
            if (n->is_leaf()) return NodeResult{n->graph, k4_leaf(n->graph), true};
            auto it = done.find(n);
            NodeResult r{it->second.first, cache_.take(it->second.second), !delayed_};
            done.erase(it);
            return r;
        };
        for (std::size_t lv = levels.size(); lv-- > 0;)
            for (const CRTree* n : levels[lv]) {
                if (n->is_leaf()) continue;
                NodeResult a = fetch(n->left.get());
                NodeResult b = fetch(n->right.get());
                NodeResult r = step(*n, a, b, n == &t);
                if (n == &t) return r;
                done.emplace(n, std::make_pair(r.graph, cache_.put(std::move(r.polynomial))));
            }
        return {t.graph, k4_leaf(t.graph), true};
    }

private:
    static void collect(const CRTree& t, std::size_t depth, std::vector<std::vector<const CRTree*>>& levels) {
        if (levels.size() <= depth) levels.resize(depth + 1);
        levels[depth].push_back(&t);
        if (t.is_leaf()) return;
        collect(*t.left, depth + 1, levels);
        collect(*t.right, depth + 1, levels);
    }

    NodeResult step(const CRTree& t, const NodeResult& a, const NodeResult& b, bool root) {
        const auto t0 = Clock::now();
        NodeReport report{t.graph, t.elim, 0, 0, 0, 0, false, 0};
        NodeResult out{t.graph, {}, true};
        if (!delayed_) {
            out.polynomial = resultant_step(a.graph, b.graph, *t.elim, a.polynomial, b.polynomial, options_, log_, &report);
        } else {
            const EdgeVar x = var_of(*t.elim);
            Polynomial r = resultant(a.polynomial, b.polynomial, x);
            if (r.is_zero()) {
                log_.emit(t.graph, "simplified-cleanup", "resultant vanished; removing common factors");
                const auto [qa, qb] = simplified_cleanup(a.polynomial, b.polynomial, x);
                r = resultant(qa, qb, x);
                if (r.is_zero()) throw Error(Errc::ZeroResultant, "resultant at " + edge_list(t.graph) + " vanishes");
            }
            report.resultant_terms = r.term_count();
            if (root) {
                out.polynomial = finish(t.graph, r, options_, log_, &report);
            } else {
                out.polynomial = normalize(r);
                out.cleaned = false;
            }
        }
        report.result_terms = out.polynomial.term_count();
        report.seconds = seconds_since(t0);
        log_.report(std::move(report));
        return out;
    }

    bool delayed_;
    const PipelineOptions& options_;
    CircuitRecord& rec_;
    Recorder log_;
    NodeCache cache_;
};

struct Candidate {
    Polynomial poly;
    int elim_degree = 0;
    int hom = 0;
};

class ExtendedRun {
public:
    ExtendedRun(const PipelineOptions& options, CircuitRecord& rec) : options_(options), log_(options, &rec) {}

    Polynomial run(const CRTree& t, std::optional<Edge> parent) {
        if (t.is_leaf()) return leaf(t, parent);
        const Polynomial v = run(*t.left, t.elim);
        const Polynomial w = run(*t.right, t.elim);
        const auto t0 = Clock::now();
        NodeReport report{t.graph, t.elim, 0, 0, 0, 0, false, 0};
        const Polynomial r = resultant(v, w, var_of(*t.elim));
        if (r.is_zero()) {
            log_.emit(t.graph, "not-possible", "zero resultant");
            throw Error(Errc::NotPossible, "Not possible to compute p: zero resultant at " + edge_list(t.graph));
        }
        report.resultant_terms = r.term_count();
        const Factorization fac = factor_q(r, FactorOptions{options_.seed, options_.factor.term_cap});
        report.irreducible_factors = static_cast<int>(fac.factors.size());
        std::vector<Candidate> cands;
        for (const auto& [f, m] : fac.factors) {
            if (!classify(support_graph(f)).is_dependent) continue;
            Candidate c{f, 0, f.hom_degree().value_or(f.total_degree())};
            if (parent) c.elim_degree = f.degree(var_of(*parent));
            cands.push_back(std::move(c));
        }
        report.candidates = static_cast<int>(cands.size());
        log_.emit(t.graph, "factor", std::to_string(fac.factors.size()) + " factors, " + std::to_string(cands.size()) +
                                         " on dependent supports");
        if (cands.empty()) throw Error(Errc::NoCandidateInIdeal, "no factor on a dependent support at " + edge_list(t.graph));
        std::optional<Polynomial> chosen;
        if (cands.size() == 1) {
            chosen = cands.front().poly;
        } else {
            std::stable_sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
                return std::make_tuple(x.elim_degree, x.hom, x.poly.term_count()) <
                       std::make_tuple(y.elim_degree, y.hom, y.poly.term_count());
            });
            for (const auto& c : cands)
                if (member_test(c.poly, options_.trials, options_.coord_bound, options_.seed)) {
                    chosen = c.poly;
                    break;
                }
            log_.emit(t.graph, "membership-decisive", std::to_string(cands.size()) + " candidates tested");
            if (!chosen) throw Error(Errc::NoCandidateInIdeal, "no candidate passes the membership test");
        }
        Polynomial p = *chosen;
        for (const Edge& e : t.graph.edges())
            if (!p.contains(var_of(e))) {
                p = p * Polynomial::variable(var_of(e));
                report.padded = true;
            }
        if (report.padded) log_.emit(t.graph, "padding", "support was a proper subset of the node graph");
        report.result_terms = p.term_count();
        report.seconds = seconds_since(t0);
        log_.report(std::move(report));
        return p;
    }

private:
    Polynomial leaf(const CRTree& t, std::optional<Edge> parent) const {
        if (t.generator) {
            int n = 0;
            for (int v : t.graph.vertices()) n = std::max(n, v);
            const Polynomial p = minor_polynomial(n, t.generator->rows, t.generator->cols);
            if (!same_support(p, t.graph))
                throw Error(Errc::InvalidArgument, "pinned minor is not supported on leaf " + edge_list(t.graph));
            return p;
        }
        if (t.graph.vertices().size() == 4 && t.graph.edge_count() == 6) return k4_leaf(t.graph);
        const auto g = select_generator(t.graph, parent ? std::optional<EdgeVar>(var_of(*parent)) : std::nullopt);
        if (!g) throw Error(Errc::InvalidArgument, "no generator supported on leaf " + edge_list(t.graph));
        return g->polynomial;
    }

    const PipelineOptions& options_;
    Recorder log_;
};

void finalize(CircuitRecord& rec, const Polynomial& p, const PipelineOptions& options, Clock::time_point t0) {
    rec.polynomial = normalize(p);
    rec.verification = verify_polynomial(rec.polynomial, rec.graph, options);
    rec.timings.total_seconds = seconds_since(t0);
    rec.timings.peak_rss_kb = peak_rss_kb();
}

}  // namespace

Polynomial circuit_polynomial_resultant(const Graph& a, const Graph& b, Edge e, const Polynomial& pa, const Polynomial& pb,
                                        const PipelineOptions& options) {
    return resultant_step(a, b, e, pa, pb, options, Recorder(options, nullptr), nullptr);
}

Polynomial clean_up_resultant(const Graph& c, const Polynomial& p, const PipelineOptions& options) {
    if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "clean-up of zero");
    return clean_up(c, p, options, Recorder(options, nullptr), nullptr);
}

std::pair<Polynomial, Polynomial> simplified_cleanup(const Polynomial& ra, const Polynomial& rb, EdgeVar x) {
    const Polynomial g = multivariate_gcd(ra, rb);
    Polynomial qa = exact_divide(ra, g), qb = exact_divide(rb, g);
    if (qa.degree(x) < 1 || qb.degree(x) < 1)
        throw Error(Errc::DegenerateAfterGcd, "a cofactor lost the elimination variable " + to_string(x));
    return {std::move(qa), std::move(qb)};
}

Verification verify_polynomial(const Polynomial& p, const Graph& g, const PipelineOptions& options) {
    Verification v;
    if (p.is_zero()) return v;
    v.membership = member_test(p, options.trials, options.coord_bound, options.seed);
    v.support_matches = same_support(p, g);
    const auto hom = p.hom_degree();
    v.homogeneous = hom.has_value();
    v.hom_degree = hom.value_or(p.total_degree());
    v.term_count = p.term_count();
    for (const EdgeVar& x : p.vars()) v.degree_in[x] = p.degree(x);
    return v;
}

CircuitRecord compute_from_tree(const CRTree& t, Mode mode, bool delayed, const PipelineOptions& options) {
    const TreeValidation check = validate_tree(t, GeneratorSet::k4_only());
    if (!check.valid) throw Error(Errc::InvalidArgument, "invalid circuit tree: " + check.diagnostics.front());
    const auto t0 = Clock::now();
    CircuitRecord rec;
    rec.graph = t.graph;
    rec.tree = t;
    Polynomial p;
    {
        TreeRun run(delayed, options, rec);
        p = (mode == Mode::Postfix ? run.postfix(t, true) : run.level(t)).polynomial;
    }
    finalize(rec, p, options, t0);
    return rec;
}

CircuitRecord extended_compute(const CRTree& t, const GeneratorSet& gen, const PipelineOptions& options) {
    const TreeValidation check = validate_tree(t, gen);
    if (!check.valid) throw Error(Errc::InvalidArgument, "invalid resultant tree: " + check.diagnostics.front());
    const auto t0 = Clock::now();
    CircuitRecord rec;
    rec.graph = t.graph;
    rec.tree = t;
    ExtendedRun run(options, rec);
    const Polynomial p = run.run(t, std::nullopt);
    finalize(rec, p, options, t0);
    return rec;
}

}  // namespace circpoly
