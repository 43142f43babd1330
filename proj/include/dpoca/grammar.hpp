// Grammar files: the type graph, named graphs, rules with their left
// conditions, and analysis defaults, read from and written to JSON with
// explicit element maps for every morphism.
#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpoca/rule.hpp"
#include "dpoca/universe.hpp"

namespace dpoca {

using Json = nlohmann::ordered_json;

struct GrammarError : std::runtime_error {
    std::string path;
    GrammarError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), path(std::move(where)) {}
};

/// A graph together with the element names used by the file format.
struct NamedGraph {
    TypedGraph graph;
    std::vector<std::string> node_names;
    std::vector<std::string> edge_names;

    int node_index(const std::string& name, const std::string& at) const {
        for (size_t i = 0; i < node_names.size(); ++i)
            if (node_names[i] == name) return static_cast<int>(i);
        throw GrammarError(at, "unknown node '" + name + "'");
    }
    int edge_index(const std::string& name, const std::string& at) const {
        for (size_t i = 0; i < edge_names.size(); ++i)
            if (edge_names[i] == name) return static_cast<int>(i);
        throw GrammarError(at, "unknown edge '" + name + "'");
    }

    static NamedGraph with_default_names(TypedGraph g) {
        NamedGraph ng{std::move(g), {}, {}};
        for (int i = 0; i < ng.graph.node_count(); ++i) ng.node_names.push_back("n" + std::to_string(i));
        for (int i = 0; i < ng.graph.edge_count(); ++i) ng.edge_names.push_back("e" + std::to_string(i));
        return ng;
    }
};

struct GrammarFile {
    TypeGraphPtr types;
    std::vector<std::pair<std::string, NamedGraph>> graphs;
    std::vector<Rule> rules;
    Bounds defaults{3, 3};

    const NamedGraph* find_graph(const std::string& name) const {
        for (const auto& [n, g] : graphs)
            if (n == name) return &g;
        return nullptr;
    }
    const Rule* find_rule(const std::string& name) const {
        for (const auto& r : rules)
            if (r.name == name) return &r;
        return nullptr;
    }
};

namespace detail {

inline NamedGraph parse_graph_body(const Json& j, const TypeGraphPtr& tg, const std::string& at) {
    if (!j.is_object()) throw GrammarError(at, "expected a graph object");
    NamedGraph ng;
    std::vector<TypeId> node_types;
    if (j.contains("nodes")) {
        if (!j["nodes"].is_array()) throw GrammarError(at + ".nodes", "expected an array");
        for (const auto& n : j["nodes"]) {
            std::string id = n.value("id", "");
            if (id.empty()) throw GrammarError(at + ".nodes", "node without id");
            for (const auto& seen : ng.node_names)
                if (seen == id) throw GrammarError(at + ".nodes." + id, "duplicate node id");
            std::string ty = n.value("type", std::string(tg->node_types.size() == 1 ? tg->node_types[0] : ""));
            auto t = tg->find_node_type(ty);
            if (!t) throw GrammarError(at + ".nodes." + id, "unknown node type '" + ty + "'");
            ng.node_names.push_back(id);
            node_types.push_back(*t);
        }
    }
    std::vector<TypedGraph::Edge> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw GrammarError(at + ".edges", "expected an array");
        for (const auto& e : j["edges"]) {
            std::string id = e.value("id", "");
            if (id.empty()) throw GrammarError(at + ".edges", "edge without id");
            for (const auto& seen : ng.edge_names)
                if (seen == id) throw GrammarError(at + ".edges." + id, "duplicate edge id");
            std::string where = at + ".edges." + id;
            std::string ty = e.value("type", std::string(tg->edge_types.size() == 1 ? tg->edge_types[0].name : ""));
            auto t = tg->find_edge_type(ty);
            if (!t) throw GrammarError(where, "unknown edge type '" + ty + "'");
            std::string src = e.value("source", ""), tgt = e.value("target", "");
            int s = -1, u = -1;
            for (size_t i = 0; i < ng.node_names.size(); ++i) {
                if (ng.node_names[i] == src) s = static_cast<int>(i);
                if (ng.node_names[i] == tgt) u = static_cast<int>(i);
            }
            if (s < 0) throw GrammarError(where, "unknown source node '" + src + "'");
            if (u < 0) throw GrammarError(where, "unknown target node '" + tgt + "'");
            ng.edge_names.push_back(id);
            edges.push_back({s, u, *t});
        }
    }
    try {
        ng.graph = TypedGraph(tg, std::move(node_types), std::move(edges));
    } catch (const std::invalid_argument& ex) {
        throw GrammarError(at, ex.what());
    }
    return ng;
}

inline NamedGraph resolve_graph(const Json& j, const GrammarFile& g, const std::string& at) {
    if (j.is_string()) {
        const NamedGraph* ng = g.find_graph(j.get<std::string>());
        if (!ng) throw GrammarError(at, "unknown graph '" + j.get<std::string>() + "'");
        return *ng;
    }
    return parse_graph_body(j, g.types, at);
}

inline GraphMorphism parse_morphism(const Json& j, const NamedGraph& dom, const NamedGraph& cod,
                                    const std::string& at) {
    std::vector<NodeId> nm(static_cast<size_t>(dom.graph.node_count()), -1);
    std::vector<EdgeId> em(static_cast<size_t>(dom.graph.edge_count()), -1);
    if (j.contains("nodes")) {
        for (const auto& [from, to] : j["nodes"].items())
            nm[static_cast<size_t>(dom.node_index(from, at + ".nodes"))] =
                cod.node_index(to.get<std::string>(), at + ".nodes." + from);
    }
    if (j.contains("edges")) {
        for (const auto& [from, to] : j["edges"].items())
            em[static_cast<size_t>(dom.edge_index(from, at + ".edges"))] =
                cod.edge_index(to.get<std::string>(), at + ".edges." + from);
    }
    for (size_t i = 0; i < nm.size(); ++i)
        if (nm[i] < 0)
            throw GrammarError(at, "node '" + dom.node_names[i] + "' has no image");
    for (size_t i = 0; i < em.size(); ++i)
        if (em[i] < 0)
            throw GrammarError(at, "edge '" + dom.edge_names[i] + "' has no image");
    try {
        return GraphMorphism(dom.graph, cod.graph, std::move(nm), std::move(em));
    } catch (const std::invalid_argument& ex) {
        throw GrammarError(at, ex.what());
    }
}

inline ConditionPtr parse_condition(const Json& j, const GrammarFile& g, const NamedGraph& context,
                                    const std::string& at) {
    std::string kind = j.value("kind", "");
    if (kind == "true") return NestedCondition::make_true(context.graph);
    if (kind == "not") {
        if (!j.contains("child")) throw GrammarError(at, "'not' requires a child");
        return NestedCondition::make_not(parse_condition(j["child"], g, context, at + ".child"));
    }
    if (kind == "and") {
        std::vector<ConditionPtr> parts;
        if (!j.contains("children") || !j["children"].is_array())
            throw GrammarError(at, "'and' requires a children array");
        int i = 0;
        for (const auto& ch : j["children"])
            parts.push_back(parse_condition(ch, g, context, at + ".children[" + std::to_string(i++) + "]"));
        return NestedCondition::make_and(context.graph, std::move(parts));
    }
    if (kind == "exists") {
        if (!j.contains("morphism") || !j["morphism"].contains("codomain"))
            throw GrammarError(at, "'exists' requires a morphism with a codomain");
        NamedGraph cod = resolve_graph(j["morphism"]["codomain"], g, at + ".morphism.codomain");
        GraphMorphism anchor = parse_morphism(j["morphism"], context, cod, at + ".morphism");
        ConditionPtr child = j.contains("child")
                                 ? parse_condition(j["child"], g, cod, at + ".child")
                                 : NestedCondition::make_true(cod.graph);
        return NestedCondition::make_exists(std::move(anchor), std::move(child));
    }
    throw GrammarError(at, "unknown condition kind '" + kind + "'");
}

} // namespace detail

inline GrammarFile parse_grammar_json(const Json& j) {
    GrammarFile g;
    auto tg = std::make_shared<TypeGraph>();
    if (j.contains("types")) {
        const Json& t = j["types"];
        if (t.contains("nodes"))
            for (const auto& n : t["nodes"]) tg->node_types.push_back(n.get<std::string>());
        if (t.contains("edges"))
            for (const auto& e : t["edges"]) {
                std::string name = e.value("name", "");
                auto s = tg->find_node_type(e.value("source", ""));
                auto u = tg->find_node_type(e.value("target", ""));
                if (!s || !u)
                    throw GrammarError("types.edges." + name, "endpoint references undeclared node type");
                tg->edge_types.push_back({name, *s, *u});
            }
    } else {
        *tg = *TypeGraph::untyped();
    }
    try {
        tg->validate();
    } catch (const std::invalid_argument& ex) {
        throw GrammarError("types", ex.what());
    }
    g.types = tg;

    if (j.contains("graphs"))
        for (const auto& [name, body] : j["graphs"].items())
            g.graphs.emplace_back(name, detail::parse_graph_body(body, tg, "graphs." + name));

    if (j.contains("rules"))
        for (const auto& [name, body] : j["rules"].items()) {
            std::string at = "rules." + name;
            if (!body.contains("left") || !body.contains("interface") || !body.contains("right"))
                throw GrammarError(at, "rule requires left, interface and right graphs");
            NamedGraph lhs = detail::resolve_graph(body["left"], g, at + ".left");
            NamedGraph iface = detail::resolve_graph(body["interface"], g, at + ".interface");
            NamedGraph rhs = detail::resolve_graph(body["right"], g, at + ".right");
            if (!body.contains("to_left") || !body.contains("to_right"))
                throw GrammarError(at, "rule requires to_left and to_right morphisms");
            GraphMorphism to_left = detail::parse_morphism(body["to_left"], iface, lhs, at + ".to_left");
            GraphMorphism to_right = detail::parse_morphism(body["to_right"], iface, rhs, at + ".to_right");
            ConditionPtr ac = body.contains("condition")
                                  ? detail::parse_condition(body["condition"], g, lhs, at + ".condition")
                                  : NestedCondition::make_true(lhs.graph);
            try {
                g.rules.emplace_back(name, RuleSpan(std::move(to_left), std::move(to_right)),
                                     std::move(ac));
            } catch (const std::invalid_argument& ex) {
                throw GrammarError(at, ex.what());
            }
        }

    if (j.contains("defaults")) {
        g.defaults.max_nodes = j["defaults"].value("max_nodes", 3);
        g.defaults.max_edges = j["defaults"].value("max_edges", 3);
    }
    return g;
}

inline GrammarFile parse_grammar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GrammarError(path, "cannot open file");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& ex) {
        throw GrammarError(path, ex.what());
    }
    return parse_grammar_json(j);
}

// ---------------------------------------------------------------------------
// Serialization. Regenerated names are canonical (n0, n1, ..., e0, ...).
// ---------------------------------------------------------------------------

namespace detail {

inline Json graph_to_json(const TypedGraph& g, const TypeGraph& tg) {
    Json nodes = Json::array();
    for (int i = 0; i < g.node_count(); ++i)
        nodes.push_back({{"id", "n" + std::to_string(i)},
                         {"type", tg.node_types[static_cast<size_t>(g.node_type(i))]}});
    Json edges = Json::array();
    for (int i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edge(i);
        edges.push_back({{"id", "e" + std::to_string(i)},
                         {"type", tg.edge_types[static_cast<size_t>(e.type)].name},
                         {"source", "n" + std::to_string(e.source)},
                         {"target", "n" + std::to_string(e.target)}});
    }
    return Json{{"nodes", nodes}, {"edges", edges}};
}

inline Json morphism_maps_to_json(const GraphMorphism& m) {
    Json nodes = Json::object();
    for (size_t i = 0; i < m.node_map.size(); ++i)
        nodes["n" + std::to_string(i)] = "n" + std::to_string(m.node_map[i]);
    Json edges = Json::object();
    for (size_t i = 0; i < m.edge_map.size(); ++i)
        edges["e" + std::to_string(i)] = "e" + std::to_string(m.edge_map[i]);
    return Json{{"nodes", nodes}, {"edges", edges}};
}

inline Json condition_to_json(const ConditionPtr& c, const TypeGraph& tg) {
    switch (c->kind()) {
        case NestedCondition::Kind::True:
            return Json{{"kind", "true"}};
        case NestedCondition::Kind::Not:
            return Json{{"kind", "not"}, {"child", condition_to_json(c->child(), tg)}};
        case NestedCondition::Kind::And: {
            Json children = Json::array();
            for (const auto& ch : c->children()) children.push_back(condition_to_json(ch, tg));
            return Json{{"kind", "and"}, {"children", children}};
        }
        case NestedCondition::Kind::Exists: {
            Json m = morphism_maps_to_json(c->anchor());
            Json out{{"kind", "exists"},
                     {"morphism", Json{{"codomain", graph_to_json(c->anchor().cod, tg)},
                                       {"nodes", m["nodes"]},
                                       {"edges", m["edges"]}}}};
            if (!c->child()->is_true()) out["child"] = condition_to_json(c->child(), tg);
            return out;
        }
    }
    return {};
}

} // namespace detail

inline Json serialize_grammar(const GrammarFile& g) {
    Json types{{"nodes", Json::array()}, {"edges", Json::array()}};
    for (const auto& n : g.types->node_types) types["nodes"].push_back(n);
    for (const auto& e : g.types->edge_types)
        types["edges"].push_back({{"name", e.name},
                                  {"source", g.types->node_types[static_cast<size_t>(e.source)]},
                                  {"target", g.types->node_types[static_cast<size_t>(e.target)]}});
    Json graphs = Json::object();
    for (const auto& [name, ng] : g.graphs) graphs[name] = detail::graph_to_json(ng.graph, *g.types);
    Json rules = Json::object();
    for (const auto& r : g.rules) {
        Json jr{{"left", detail::graph_to_json(r.left(), *g.types)},
                {"interface", detail::graph_to_json(r.interface(), *g.types)},
                {"right", detail::graph_to_json(r.right(), *g.types)},
                {"to_left", detail::morphism_maps_to_json(r.span.to_left)},
                {"to_right", detail::morphism_maps_to_json(r.span.to_right)}};
        if (!r.ac_left->is_true()) jr["condition"] = detail::condition_to_json(r.ac_left, *g.types);
        rules[r.name] = jr;
    }
    return Json{{"types", types},
                {"graphs", graphs},
                {"rules", rules},
                {"defaults", Json{{"max_nodes", g.defaults.max_nodes},
                                  {"max_edges", g.defaults.max_edges}}}};
}

} // namespace dpoca
