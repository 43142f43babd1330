// Structure- and type-preserving maps between typed graphs, plus the
// backtracking searches every higher layer relies on: all morphisms between
// two graphs, commuting extensions, and isomorphisms.
#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dpoca/graph.hpp"

namespace dpoca {

/// Total type-preserving map dom -> cod; node_map/edge_map indexed by
/// domain ids. Validity is checked at construction.
struct GraphMorphism {
    TypedGraph dom;
    TypedGraph cod;
    std::vector<NodeId> node_map;
    std::vector<EdgeId> edge_map;

    GraphMorphism() = default;
    GraphMorphism(TypedGraph d, TypedGraph c, std::vector<NodeId> nm, std::vector<EdgeId> em)
        : dom(std::move(d)), cod(std::move(c)), node_map(std::move(nm)), edge_map(std::move(em)) {
        validate();
    }

    NodeId on_node(NodeId n) const { return node_map.at(static_cast<size_t>(n)); }
    EdgeId on_edge(EdgeId e) const { return edge_map.at(static_cast<size_t>(e)); }

    static GraphMorphism identity(const TypedGraph& g) {
        std::vector<NodeId> nm(static_cast<size_t>(g.node_count()));
        std::iota(nm.begin(), nm.end(), 0);
        std::vector<EdgeId> em(static_cast<size_t>(g.edge_count()));
        std::iota(em.begin(), em.end(), 0);
        return GraphMorphism(g, g, std::move(nm), std::move(em));
    }

    /// The unique morphism from the empty graph.
    static GraphMorphism from_empty(const TypedGraph& cod) {
        return GraphMorphism(TypedGraph::empty(cod.type_graph()), cod, {}, {});
    }

    bool node_injective() const {
        std::vector<char> seen(static_cast<size_t>(cod.node_count()), 0);
        for (NodeId n : node_map) {
            if (seen[static_cast<size_t>(n)]) return false;
            seen[static_cast<size_t>(n)] = 1;
        }
        return true;
    }
    bool edge_injective() const {
        std::vector<char> seen(static_cast<size_t>(cod.edge_count()), 0);
        for (EdgeId e : edge_map) {
            if (seen[static_cast<size_t>(e)]) return false;
            seen[static_cast<size_t>(e)] = 1;
        }
        return true;
    }
    bool is_mono() const { return node_injective() && edge_injective(); }
    bool is_epi() const {
        std::vector<char> n_hit(static_cast<size_t>(cod.node_count()), 0);
        for (NodeId n : node_map) n_hit[static_cast<size_t>(n)] = 1;
        if (std::find(n_hit.begin(), n_hit.end(), 0) != n_hit.end()) return false;
        std::vector<char> e_hit(static_cast<size_t>(cod.edge_count()), 0);
        for (EdgeId e : edge_map) e_hit[static_cast<size_t>(e)] = 1;
        return std::find(e_hit.begin(), e_hit.end(), 0) == e_hit.end();
    }
    bool is_iso() const { return is_mono() && is_epi(); }

    bool operator==(const GraphMorphism& other) const {
        return dom == other.dom && cod == other.cod && node_map == other.node_map &&
               edge_map == other.edge_map;
    }

private:
    void validate() const {
        if (!same_type_graph(dom.type_graph(), cod.type_graph()))
            throw std::invalid_argument("morphism endpoints typed over different type graphs");
        if (node_map.size() != static_cast<size_t>(dom.node_count()) ||
            edge_map.size() != static_cast<size_t>(dom.edge_count()))
            throw std::invalid_argument("morphism maps not total on domain");
        for (NodeId n = 0; n < dom.node_count(); ++n) {
            NodeId img = node_map[static_cast<size_t>(n)];
            if (img < 0 || img >= cod.node_count())
                throw std::invalid_argument("node image out of range");
            if (dom.node_type(n) != cod.node_type(img))
                throw std::invalid_argument("morphism not type-preserving on nodes");
        }
        for (EdgeId e = 0; e < dom.edge_count(); ++e) {
            EdgeId img = edge_map[static_cast<size_t>(e)];
            if (img < 0 || img >= cod.edge_count())
                throw std::invalid_argument("edge image out of range");
            const auto& de = dom.edge(e);
            const auto& ce = cod.edge(img);
            if (de.type != ce.type)
                throw std::invalid_argument("morphism not type-preserving on edges");
            if (node_map[static_cast<size_t>(de.source)] != ce.source ||
                node_map[static_cast<size_t>(de.target)] != ce.target)
                throw std::invalid_argument("morphism does not commute with source/target");
        }
    }
};

struct MorphismClass {
    bool mono = false;
    bool epi = false;
    bool iso = false;
};

inline MorphismClass classify_morphism(const GraphMorphism& f) {
    MorphismClass c;
    c.mono = f.is_mono();
    c.epi = f.is_epi();
    c.iso = c.mono && c.epi;
    return c;
}

/// g after f.
inline GraphMorphism compose(const GraphMorphism& f, const GraphMorphism& g) {
    if (f.cod != g.dom) throw std::invalid_argument("compose: codomain/domain mismatch");
    std::vector<NodeId> nm(f.node_map.size());
    for (size_t i = 0; i < nm.size(); ++i) nm[i] = g.on_node(f.node_map[i]);
    std::vector<EdgeId> em(f.edge_map.size());
    for (size_t i = 0; i < em.size(); ++i) em[i] = g.on_edge(f.edge_map[i]);
    return GraphMorphism(f.dom, g.cod, std::move(nm), std::move(em));
}

enum class MorphismRestriction { All, Mono };

namespace detail {

/// Shared backtracking core. `fixed_node`/`fixed_edge` pre-assign images
/// (-1 = free); used both for plain enumeration and for commuting
/// extensions. Emits morphisms in deterministic (lexicographic) order.
inline void enumerate_morphisms_into(
    const TypedGraph& a, const TypedGraph& b, MorphismRestriction restrict_to,
    const std::vector<NodeId>& fixed_node, const std::vector<EdgeId>& fixed_edge,
    const std::function<bool(GraphMorphism&&)>& emit) {
    if (!same_type_graph(a.type_graph(), b.type_graph())) return;

    const int an = a.node_count(), ae = a.edge_count();
    std::vector<NodeId> nm(static_cast<size_t>(an), -1);
    std::vector<EdgeId> em(static_cast<size_t>(ae), -1);
    std::vector<char> node_used(static_cast<size_t>(b.node_count()), 0);
    std::vector<char> edge_used(static_cast<size_t>(b.edge_count()), 0);
    const bool mono = restrict_to == MorphismRestriction::Mono;

    for (NodeId n = 0; n < an; ++n) {
        NodeId img = fixed_node.empty() ? -1 : fixed_node[static_cast<size_t>(n)];
        if (img >= 0) {
            if (a.node_type(n) != b.node_type(img)) return;
            if (mono) {
                if (node_used[static_cast<size_t>(img)]) return;
                node_used[static_cast<size_t>(img)] = 1;
            }
            nm[static_cast<size_t>(n)] = img;
        }
    }
    for (EdgeId e = 0; e < ae; ++e) {
        EdgeId img = fixed_edge.empty() ? -1 : fixed_edge[static_cast<size_t>(e)];
        if (img >= 0) {
            if (mono) {
                if (edge_used[static_cast<size_t>(img)]) return;
                edge_used[static_cast<size_t>(img)] = 1;
            }
            em[static_cast<size_t>(e)] = img;
        }
    }

    std::vector<NodeId> free_nodes;
    for (NodeId n = 0; n < an; ++n)
        if (nm[static_cast<size_t>(n)] < 0) free_nodes.push_back(n);
    // Higher-degree nodes first: their edges constrain the rest sooner.
    std::stable_sort(free_nodes.begin(), free_nodes.end(), [&](NodeId x, NodeId y) {
        return a.out_degree(x) + a.in_degree(x) > a.out_degree(y) + a.in_degree(y);
    });
    std::vector<EdgeId> free_edges;
    for (EdgeId e = 0; e < ae; ++e)
        if (em[static_cast<size_t>(e)] < 0) free_edges.push_back(e);

    bool stop = false;

    std::function<void(size_t)> assign_edges = [&](size_t ei) {
        if (stop) return;
        if (ei == free_edges.size()) {
            std::vector<GraphMorphism> out;
            if (!emit(GraphMorphism(a, b, nm, em))) stop = true;
            return;
        }
        EdgeId e = free_edges[ei];
        const auto& de = a.edge(e);
        NodeId s = nm[static_cast<size_t>(de.source)];
        NodeId t = nm[static_cast<size_t>(de.target)];
        for (EdgeId c = 0; c < b.edge_count() && !stop; ++c) {
            const auto& ce = b.edge(c);
            if (ce.type != de.type || ce.source != s || ce.target != t) continue;
            if (mono) {
                if (edge_used[static_cast<size_t>(c)]) continue;
                edge_used[static_cast<size_t>(c)] = 1;
            }
            em[static_cast<size_t>(e)] = c;
            assign_edges(ei + 1);
            em[static_cast<size_t>(e)] = -1;
            if (mono) edge_used[static_cast<size_t>(c)] = 0;
        }
    };

    // An edge is checkable once both endpoints are placed: some compatible
    // target edge must exist.
    auto edges_feasible = [&]() {
        for (EdgeId e = 0; e < ae; ++e) {
            if (em[static_cast<size_t>(e)] >= 0) continue;
            const auto& de = a.edge(e);
            NodeId s = nm[static_cast<size_t>(de.source)];
            NodeId t = nm[static_cast<size_t>(de.target)];
            if (s < 0 || t < 0) continue;
            bool any = false;
            for (EdgeId c = 0; c < b.edge_count(); ++c) {
                const auto& ce = b.edge(c);
                if (ce.type == de.type && ce.source == s && ce.target == t) { any = true; break; }
            }
            if (!any) return false;
        }
        return true;
    };

    std::function<void(size_t)> assign_nodes = [&](size_t ni) {
        if (stop) return;
        if (ni == free_nodes.size()) {
            assign_edges(0);
            return;
        }
        NodeId n = free_nodes[ni];
        for (NodeId c = 0; c < b.node_count() && !stop; ++c) {
            if (a.node_type(n) != b.node_type(c)) continue;
            if (mono) {
                if (node_used[static_cast<size_t>(c)]) continue;
                node_used[static_cast<size_t>(c)] = 1;
            }
            nm[static_cast<size_t>(n)] = c;
            if (edges_feasible()) assign_nodes(ni + 1);
            nm[static_cast<size_t>(n)] = -1;
            if (mono) node_used[static_cast<size_t>(c)] = 0;
        }
    };

    if (edges_feasible()) assign_nodes(0);
}

inline void sort_morphisms(std::vector<GraphMorphism>& ms) {
    std::sort(ms.begin(), ms.end(), [](const GraphMorphism& x, const GraphMorphism& y) {
        if (x.node_map != y.node_map) return x.node_map < y.node_map;
        return x.edge_map < y.edge_map;
    });
}

} // namespace detail

/// Every type-preserving morphism a -> b (injective only, when restricted),
/// in deterministic order.
inline std::vector<GraphMorphism> enumerate_morphisms(
    const TypedGraph& a, const TypedGraph& b,
    MorphismRestriction restrict_to = MorphismRestriction::All) {
    std::vector<GraphMorphism> out;
    detail::enumerate_morphisms_into(a, b, restrict_to, {}, {}, [&](GraphMorphism&& m) {
        out.push_back(std::move(m));
        return true;
    });
    detail::sort_morphisms(out);
    return out;
}

/// All q : cod(a) -> cod(p) with q o a = p, in the requested class.
/// This is the satisfaction/matching workhorse: only elements outside the
/// image of `a` are free.
inline std::vector<GraphMorphism> enumerate_commuting_extensions(
    const GraphMorphism& a, const GraphMorphism& p,
    MorphismRestriction restrict_to = MorphismRestriction::Mono) {
    if (a.dom != p.dom) throw std::invalid_argument("commuting extension: domain mismatch");
    const TypedGraph& c = a.cod;
    const TypedGraph& g = p.cod;
    std::vector<NodeId> fixed_node(static_cast<size_t>(c.node_count()), -1);
    std::vector<EdgeId> fixed_edge(static_cast<size_t>(c.edge_count()), -1);
    for (NodeId n = 0; n < a.dom.node_count(); ++n) {
        NodeId cn = a.on_node(n);
        NodeId want = p.on_node(n);
        if (fixed_node[static_cast<size_t>(cn)] >= 0 && fixed_node[static_cast<size_t>(cn)] != want)
            return {}; // a identifies, p does not: no extension
        fixed_node[static_cast<size_t>(cn)] = want;
    }
    for (EdgeId e = 0; e < a.dom.edge_count(); ++e) {
        EdgeId ce = a.on_edge(e);
        EdgeId want = p.on_edge(e);
        if (fixed_edge[static_cast<size_t>(ce)] >= 0 && fixed_edge[static_cast<size_t>(ce)] != want)
            return {};
        fixed_edge[static_cast<size_t>(ce)] = want;
    }
    std::vector<GraphMorphism> out;
    detail::enumerate_morphisms_into(c, g, restrict_to, fixed_node, fixed_edge,
                                     [&](GraphMorphism&& m) {
                                         out.push_back(std::move(m));
                                         return true;
                                     });
    detail::sort_morphisms(out);
    return out;
}

/// A witnessing isomorphism a -> b, or nothing.
inline std::optional<GraphMorphism> find_isomorphism(const TypedGraph& a, const TypedGraph& b) {
    if (!same_type_graph(a.type_graph(), b.type_graph())) return std::nullopt;
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return std::nullopt;
    {
        auto ta = a.node_types();
        auto tb = b.node_types();
        std::sort(ta.begin(), ta.end());
        std::sort(tb.begin(), tb.end());
        if (ta != tb) return std::nullopt;
    }
    std::optional<GraphMorphism> found;
    detail::enumerate_morphisms_into(a, b, MorphismRestriction::Mono, {}, {},
                                     [&](GraphMorphism&& m) {
                                         if (m.is_epi()) {
                                             found = std::move(m);
                                             return false;
                                         }
                                         return true;
                                     });
    return found;
}

inline bool are_isomorphic(const TypedGraph& a, const TypedGraph& b) {
    return find_isomorphism(a, b).has_value();
}

/// Spans and cospans share their apex by construction.
struct Span {
    GraphMorphism left;  // A -> B
    GraphMorphism right; // A -> C
    Span(GraphMorphism l, GraphMorphism r) : left(std::move(l)), right(std::move(r)) {
        if (left.dom != right.dom) throw std::invalid_argument("span legs disagree on apex");
    }
};

struct Cospan {
    GraphMorphism left;  // B -> A
    GraphMorphism right; // C -> A
    Cospan(GraphMorphism l, GraphMorphism r) : left(std::move(l)), right(std::move(r)) {
        if (left.cod != right.cod) throw std::invalid_argument("cospan legs disagree on apex");
    }
};

} // namespace dpoca
