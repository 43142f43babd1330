// Exhaustive enumeration of all typed graphs within node/edge bounds, up to
// isomorphism. This is the search space for bounded satisfiability and the
// completeness verification harness.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dpoca/graph.hpp"

namespace dpoca {

struct Bounds {
    int max_nodes = 3;
    int max_edges = 3;
};

namespace detail {

inline void enumerate_node_type_multisets(const TypeGraph& tg, int n,
                                          std::vector<TypeId>& acc, TypeId min_type,
                                          const std::function<void(const std::vector<TypeId>&)>& emit) {
    if (static_cast<int>(acc.size()) == n) {
        emit(acc);
        return;
    }
    for (TypeId t = min_type; t < tg.node_type_count(); ++t) {
        acc.push_back(t);
        enumerate_node_type_multisets(tg, n, acc, t, emit);
        acc.pop_back();
    }
}

} // namespace detail

/// Every graph over tg with at most max_nodes nodes and max_edges edges, one
/// representative per isomorphism class, ordered by canonical key.
/// Parallel edges are included (typed graphs are multigraphs).
inline std::vector<TypedGraph> enumerate_graph_universe(const TypeGraphPtr& tg, Bounds bounds) {
    std::map<std::string, TypedGraph> seen;
    for (int n = 0; n <= bounds.max_nodes; ++n) {
        std::vector<TypeId> acc;
        detail::enumerate_node_type_multisets(*tg, n, acc, 0, [&](const std::vector<TypeId>& types) {
            // All legal edge slots for this node typing.
            std::vector<TypedGraph::Edge> slots;
            for (NodeId s = 0; s < n; ++s)
                for (NodeId t = 0; t < n; ++t)
                    for (TypeId et = 0; et < tg->edge_type_count(); ++et) {
                        const auto& spec = tg->edge_types[static_cast<size_t>(et)];
                        if (spec.source == types[static_cast<size_t>(s)] &&
                            spec.target == types[static_cast<size_t>(t)])
                            slots.push_back({s, t, et});
                    }
            // Multisets of slots of size <= max_edges (repetition = parallel edges).
            std::vector<TypedGraph::Edge> edges;
            std::function<void(size_t)> rec = [&](size_t min_slot) {
                TypedGraph g(tg, types, edges);
                seen.emplace(g.canonical_key(), g);
                if (static_cast<int>(edges.size()) == bounds.max_edges) return;
                for (size_t i = min_slot; i < slots.size(); ++i) {
                    edges.push_back(slots[i]);
                    rec(i);
                    edges.pop_back();
                }
            };
            rec(0);
        });
    }
    std::vector<TypedGraph> out;
    out.reserve(seen.size());
    for (auto& [key, g] : seen) out.push_back(std::move(g));
    return out;
}

} // namespace dpoca
