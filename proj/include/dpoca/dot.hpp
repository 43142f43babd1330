// DOT renderings of graphs, transformation pairs (three panels with
// deletion/creation/overlap styling), and condition trees (nested clusters).
#pragma once

#include <sstream>
#include <string>

#include "dpoca/condition.hpp"
#include "dpoca/transform_pair.hpp"

namespace dpoca {

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

struct NodeStyle {
    std::string extra; // e.g. style=dashed
};

inline void emit_graph_body(std::ostringstream& os, const TypedGraph& g, const TypeGraph& tg,
                            const std::string& prefix,
                            const std::function<std::string(bool, NodeId, EdgeId)>& style) {
    for (NodeId n = 0; n < g.node_count(); ++n) {
        os << "    " << prefix << "n" << n << " [label=\""
           << dot_escape(tg.node_types[static_cast<size_t>(g.node_type(n))]) << " " << n << "\"";
        std::string s = style ? style(true, n, -1) : "";
        if (!s.empty()) os << ", " << s;
        os << "];\n";
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        os << "    " << prefix << "n" << ed.source << " -> " << prefix << "n" << ed.target
           << " [label=\"" << dot_escape(tg.edge_types[static_cast<size_t>(ed.type)].name) << "\"";
        std::string s = style ? style(false, -1, e) : "";
        if (!s.empty()) os << ", " << s;
        os << "];\n";
    }
}

} // namespace detail

inline std::string graph_to_dot(const TypedGraph& g, const std::string& name = "G") {
    std::ostringstream os;
    os << "digraph \"" << detail::dot_escape(name) << "\" {\n  node [shape=circle];\n";
    detail::emit_graph_body(os, g, *g.type_graph(), "", nullptr);
    os << "}\n";
    return os.str();
}

/// Three panels: first result <- source -> second result. Deleted elements
/// dashed, created bold, the match overlap shaded.
inline std::string pair_to_dot(const TransformationPair& tp, const std::string& name = "pair") {
    const TypeGraph& tg = *tp.source().type_graph();
    std::ostringstream os;
    os << "digraph \"" << detail::dot_escape(name) << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";

    auto image_flags = [](const DirectTransformation& t, bool of_source) {
        const TypedGraph& target = of_source ? t.source() : t.result();
        const GraphMorphism& embed = of_source ? t.into_source : t.into_result;
        std::vector<char> n_in(static_cast<size_t>(target.node_count()), 0);
        std::vector<char> e_in(static_cast<size_t>(target.edge_count()), 0);
        for (NodeId d : embed.node_map) n_in[static_cast<size_t>(d)] = 1;
        for (EdgeId d : embed.edge_map) e_in[static_cast<size_t>(d)] = 1;
        return std::make_pair(n_in, e_in);
    };

    // results: elements outside the context image were created
    auto emit_result = [&](const DirectTransformation& t, const std::string& prefix,
                           const std::string& title) {
        auto [n_in, e_in] = image_flags(t, false);
        os << "  subgraph cluster_" << prefix << " {\n    label=\"" << title << "\";\n";
        detail::emit_graph_body(os, t.result(), tg, prefix, [&](bool is_node, NodeId n, EdgeId e) {
            bool created = is_node ? !n_in[static_cast<size_t>(n)] : !e_in[static_cast<size_t>(e)];
            return created ? std::string("style=bold, color=blue") : std::string();
        });
        os << "  }\n";
    };

    emit_result(tp.first, "h1", tp.first.rule.name + " result");

    // source: deleted = outside the context image of either step; overlap =
    // hit by both matches
    {
        auto [n_in1, e_in1] = image_flags(tp.first, true);
        auto [n_in2, e_in2] = image_flags(tp.second, true);
        std::vector<char> n_hit1(static_cast<size_t>(tp.source().node_count()), 0);
        std::vector<char> n_hit2 = n_hit1;
        for (NodeId n : tp.match_first().node_map) n_hit1[static_cast<size_t>(n)] = 1;
        for (NodeId n : tp.match_second().node_map) n_hit2[static_cast<size_t>(n)] = 1;
        os << "  subgraph cluster_src {\n    label=\"source\";\n";
        detail::emit_graph_body(os, tp.source(), tg, "g", [&](bool is_node, NodeId n, EdgeId e) {
            std::string s;
            bool deleted = is_node ? (!n_in1[static_cast<size_t>(n)] || !n_in2[static_cast<size_t>(n)])
                                   : (!e_in1[static_cast<size_t>(e)] || !e_in2[static_cast<size_t>(e)]);
            if (deleted) s = "style=dashed, color=red";
            if (is_node && n_hit1[static_cast<size_t>(n)] && n_hit2[static_cast<size_t>(n)]) {
                if (!s.empty()) s += ", ";
                s += "style=filled, fillcolor=lightgray";
            }
            return s;
        });
        os << "  }\n";
    }

    emit_result(tp.second, "h2", tp.second.rule.name + " result");
    os << "}\n";
    return os.str();
}

/// Nested clusters mirroring the condition tree.
inline std::string condition_to_dot(const ConditionPtr& cond, const std::string& name = "condition") {
    std::ostringstream os;
    os << "digraph \"" << detail::dot_escape(name) << "\" {\n  node [shape=circle];\n";
    int counter = 0;
    std::function<void(const ConditionPtr&, int)> emit = [&](const ConditionPtr& c, int depth) {
        int id = counter++;
        std::string label;
        switch (c->kind()) {
            case NestedCondition::Kind::True: label = "true"; break;
            case NestedCondition::Kind::Not: label = c->is_false() ? "false" : "not"; break;
            case NestedCondition::Kind::And: label = "and"; break;
            case NestedCondition::Kind::Exists: label = "exists"; break;
        }
        os << "  subgraph cluster_c" << id << " {\n    label=\"" << label << "\";\n";
        if (c->kind() == NestedCondition::Kind::Exists) {
            detail::emit_graph_body(os, c->anchor().cod, *c->context().type_graph(),
                                    "c" + std::to_string(id) + "_", nullptr);
        }
        if (c->is_false()) {
            os << "  }\n";
            return;
        }
        for (const auto& ch : c->children()) emit(ch, depth + 1);
        os << "  }\n";
    };
    emit(cond, 0);
    os << "}\n";
    return os.str();
}

} // namespace dpoca
