#include "circpoly/error.hpp"
#include "circpoly/tree.hpp"

#include "json.hpp"

namespace circpoly {

namespace {

using Json = nlohmann::ordered_json;

Json edge_json(Edge e) { return Json::array({e.u, e.v}); }

Json to_json(const CRTree& t) {
    Json g;
    g["n"] = t.graph.n();
    Json edges = Json::array();
    for (const Edge& e : t.graph.edges()) edges.push_back(edge_json(e));
    g["edges"] = std::move(edges);
    Json out;
    out["graph"] = std::move(g);
    out["elim"] = t.elim ? edge_json(*t.elim) : Json(nullptr);
    out["left"] = t.left ? to_json(*t.left) : Json(nullptr);
    out["right"] = t.right ? to_json(*t.right) : Json(nullptr);
    if (t.generator) out["generator"] = Json{{"rows", t.generator->rows}, {"cols", t.generator->cols}};
    return out;
}

Edge edge_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(Errc::ParseError, "edge must be a pair");
    return make_edge(j[0].get<int>(), j[1].get<int>());
}

CRTree from_json(const Json& j) {
    if (!j.is_object() || !j.contains("graph")) throw Error(Errc::ParseError, "tree node needs a graph");
    const Json& g = j.at("graph");
    std::vector<Edge> edges;
    for (const Json& e : g.at("edges")) edges.push_back(edge_from(e));
    Graph graph(g.at("n").get<int>(), std::move(edges));
    const bool has_left = j.contains("left") && !j["left"].is_null();
    const bool has_right = j.contains("right") && !j["right"].is_null();
    if (has_left != has_right) throw Error(Errc::ParseError, "tree node needs zero or two children");
    if (!has_left) {
        std::optional<MinorChoice> gen;
        if (j.contains("generator")) {
            MinorChoice m;
            m.rows = j["generator"].at("rows").get<std::array<int, 5>>();
            m.cols = j["generator"].at("cols").get<std::array<int, 5>>();
            gen = m;
        }
        return CRTree::leaf(std::move(graph), gen);
    }
    if (!j.contains("elim") || j["elim"].is_null()) throw Error(Errc::ParseError, "internal node needs an elimination edge");
    return CRTree::node(std::move(graph), edge_from(j["elim"]), from_json(j["left"]), from_json(j["right"]));
}

}  // namespace

std::string tree_to_json(const CRTree& t) { return to_json(t).dump(2) + "\n"; }

CRTree tree_from_json(const std::string& text) {
    try {
        return from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

}  // namespace circpoly
