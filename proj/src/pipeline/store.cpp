#include "circpoly/canonical.hpp"
#include "circpoly/error.hpp"
#include "circpoly/pipeline.hpp"
#include "circpoly/poly_io.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace circpoly {

namespace {

using Json = nlohmann::ordered_json;

Json graph_json(const Graph& g) {
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    return Json{{"n", g.n()}, {"edges", std::move(edges)}};
}

std::string file_stem(const std::string& label) {
    std::string out = label;
    for (char& c : out)
        if (c == ':') c = '_';
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw Error(Errc::StoreCorrupt, "cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json meta_json(const CircuitRecord& rec) {
    Json j;
    j["graph"] = graph_json(rec.graph);
    j["label"] = canonical_label(rec.graph);
    j["tree"] = Json::parse(tree_to_json(rec.tree));
    const Verification& v = rec.verification;
    Json degrees = Json::object();
    for (const auto& [x, d] : v.degree_in) degrees[to_string(x)] = d;
    j["verification"] = Json{{"membership", v.membership},    {"support_matches", v.support_matches},
                             {"homogeneous", v.homogeneous},  {"hom_degree", v.hom_degree},
                             {"term_count", v.term_count},    {"degree_in", std::move(degrees)}};
    j["timings"] = Json{{"total_seconds", rec.timings.total_seconds},
                        {"peak_rss_kb", rec.timings.peak_rss_kb},
                        {"spilled_nodes", rec.timings.spilled_nodes}};
    Json nodes = Json::array();
    for (const NodeReport& n : rec.nodes) {
        Json node{{"graph", graph_json(n.graph)},
                  {"elim", n.elim ? Json::array({n.elim->u, n.elim->v}) : Json(nullptr)},
                  {"resultant_terms", n.resultant_terms},
                  {"irreducible_factors", n.irreducible_factors},
                  {"candidates", n.candidates},
                  {"result_terms", n.result_terms},
                  {"padded", n.padded},
                  {"seconds", n.seconds}};
        nodes.push_back(std::move(node));
    }
    j["nodes"] = std::move(nodes);
    Json events = Json::array();
    for (const PipelineEvent& e : rec.events) events.push_back(Json{{"node", e.node}, {"kind", e.kind}, {"detail", e.detail}});
    j["events"] = std::move(events);
    return j;
}

}  // namespace

std::string record_meta_json(const CircuitRecord& rec) { return meta_json(rec).dump(2) + "\n"; }

Store::Store(std::filesystem::path dir) : dir_(std::move(dir)) {}

void Store::put(const CircuitRecord& rec) const {
    if (!rec.verification.membership || !rec.verification.support_matches)
        throw Error(Errc::InvalidArgument, "refusing to store an unverified record");
    std::filesystem::create_directories(dir_);
    const CanonicalForm cf = canonical_form(rec.graph);
    const std::string stem = file_stem(cf.label);
    std::ofstream(dir_ / (stem + ".poly")) << serialize_polynomial(normalize(rec.polynomial.relabel_vertices(cf.relabel)));
    std::ofstream(dir_ / (stem + ".meta")) << record_meta_json(rec);
}

std::optional<CircuitRecord> Store::get(const Graph& g) const {
    const CanonicalForm cf = canonical_form(g);
    const std::string stem = file_stem(cf.label);
    const auto poly_path = dir_ / (stem + ".poly");
    const auto meta_path = dir_ / (stem + ".meta");
    if (!std::filesystem::exists(poly_path)) return std::nullopt;
    CircuitRecord rec;
    try {
        std::map<int, int> back;
        for (const auto& [orig, canon] : cf.relabel) back[canon] = orig;
        rec.polynomial = normalize(parse_polynomial(slurp(poly_path)).relabel_vertices(back));
        rec.graph = g;
        if (std::filesystem::exists(meta_path)) {
            const Json meta = Json::parse(slurp(meta_path));
            if (meta.at("label").get<std::string>() != cf.label) throw Error(Errc::StoreCorrupt, "label mismatch");
            rec.tree = tree_from_json(meta.at("tree").dump());
            const Json& t = meta.at("timings");
            rec.timings.total_seconds = t.at("total_seconds").get<double>();
            rec.timings.peak_rss_kb = t.at("peak_rss_kb").get<long>();
            rec.timings.spilled_nodes = t.at("spilled_nodes").get<std::size_t>();
            rec.verification.membership = meta.at("verification").at("membership").get<bool>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::StoreCorrupt, e.what());
    } catch (const Error& e) {
        if (e.code() == Errc::StoreCorrupt) throw;
        throw Error(Errc::StoreCorrupt, e.what());
    }
    if (support_graph(rec.polynomial).edges() != g.edges()) throw Error(Errc::StoreCorrupt, "stored support does not match");
    const auto hom = rec.polynomial.hom_degree();
    rec.verification.support_matches = true;
    rec.verification.homogeneous = hom.has_value();
    rec.verification.hom_degree = hom.value_or(rec.polynomial.total_degree());
    rec.verification.term_count = rec.polynomial.term_count();
    for (const EdgeVar& x : rec.polynomial.vars()) rec.verification.degree_in[x] = rec.polynomial.degree(x);
    return rec;
}

std::vector<std::string> Store::labels() const {
    std::vector<std::string> out;
    if (!std::filesystem::exists(dir_)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(dir_))
        if (entry.path().extension() == ".poly") {
            std::string stem = entry.path().stem().string();
            for (char& c : stem)
                if (c == '_') c = ':';
            out.push_back(stem);
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace circpoly
