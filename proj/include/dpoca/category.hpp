// Colimit-style constructions on typed graphs: pushouts, pushout
// complements with gluing-condition diagnostics, coproducts, image
// factorization, and the enumeration of quotients / jointly surjective
// pairs that powers overlap search and condition shifting.
#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dpoca/morphism.hpp"

namespace dpoca {

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

} // namespace detail

struct PushoutResult {
    TypedGraph object;        // D
    GraphMorphism from_right; // C -> D (image of g's codomain)
    GraphMorphism from_left;  // B -> D (image of f's codomain)
};

/// Pushout of f : A -> B, g : A -> C. D is the quotient of B + C by the
/// smallest relation with f(x) ~ g(x); satisfies from_left o f = from_right o g.
inline PushoutResult pushout(const GraphMorphism& f, const GraphMorphism& g) {
    if (f.dom != g.dom) throw std::invalid_argument("pushout: legs do not share a domain");
    const TypedGraph& a = f.dom;
    const TypedGraph& b = f.cod;
    const TypedGraph& c = g.cod;

    const int bn = b.node_count(), cn = c.node_count();
    const int be = b.edge_count(), ce = c.edge_count();

    detail::UnionFind nodes(bn + cn);
    for (NodeId x = 0; x < a.node_count(); ++x) nodes.unite(f.on_node(x), bn + g.on_node(x));
    detail::UnionFind edges(be + ce);
    for (EdgeId x = 0; x < a.edge_count(); ++x) edges.unite(f.on_edge(x), be + g.on_edge(x));

    // Dense ids for node classes, in order of first occurrence.
    std::vector<NodeId> node_class(static_cast<size_t>(bn + cn), -1);
    std::vector<TypeId> out_node_types;
    for (int x = 0; x < bn + cn; ++x) {
        int r = nodes.find(x);
        if (node_class[static_cast<size_t>(r)] < 0) {
            node_class[static_cast<size_t>(r)] = static_cast<NodeId>(out_node_types.size());
            out_node_types.push_back(x < bn ? b.node_type(x) : c.node_type(x - bn));
        }
        node_class[static_cast<size_t>(x)] = node_class[static_cast<size_t>(r)];
    }
    std::vector<EdgeId> edge_class(static_cast<size_t>(be + ce), -1);
    std::vector<TypedGraph::Edge> out_edges;
    for (int x = 0; x < be + ce; ++x) {
        int r = edges.find(x);
        if (edge_class[static_cast<size_t>(r)] < 0) {
            TypedGraph::Edge e = x < be ? b.edge(x) : c.edge(x - be);
            NodeId s = x < be ? node_class[static_cast<size_t>(e.source)]
                              : node_class[static_cast<size_t>(bn + e.source)];
            NodeId t = x < be ? node_class[static_cast<size_t>(e.target)]
                              : node_class[static_cast<size_t>(bn + e.target)];
            edge_class[static_cast<size_t>(r)] = static_cast<EdgeId>(out_edges.size());
            out_edges.push_back({s, t, e.type});
        }
        edge_class[static_cast<size_t>(x)] = edge_class[static_cast<size_t>(r)];
    }

    TypedGraph d(a.type_graph(), std::move(out_node_types), std::move(out_edges));
    std::vector<NodeId> b_nm(static_cast<size_t>(bn)), c_nm(static_cast<size_t>(cn));
    for (int x = 0; x < bn; ++x) b_nm[static_cast<size_t>(x)] = node_class[static_cast<size_t>(x)];
    for (int x = 0; x < cn; ++x) c_nm[static_cast<size_t>(x)] = node_class[static_cast<size_t>(bn + x)];
    std::vector<EdgeId> b_em(static_cast<size_t>(be)), c_em(static_cast<size_t>(ce));
    for (int x = 0; x < be; ++x) b_em[static_cast<size_t>(x)] = edge_class[static_cast<size_t>(x)];
    for (int x = 0; x < ce; ++x) c_em[static_cast<size_t>(x)] = edge_class[static_cast<size_t>(be + x)];

    return PushoutResult{d, GraphMorphism(c, d, std::move(c_nm), std::move(c_em)),
                         GraphMorphism(b, d, std::move(b_nm), std::move(b_em))};
}

/// Unique morphism out of a pushout induced by a commuting cocone
/// (h_b o f = h_c o g); nothing if the cocone does not commute.
inline std::optional<GraphMorphism> pushout_mediator(const PushoutResult& po,
                                                     const GraphMorphism& h_b,
                                                     const GraphMorphism& h_c) {
    const TypedGraph& d = po.object;
    const TypedGraph& x = h_b.cod;
    if (h_c.cod != x) return std::nullopt;
    std::vector<NodeId> nm(static_cast<size_t>(d.node_count()), -1);
    std::vector<EdgeId> em(static_cast<size_t>(d.edge_count()), -1);
    auto put_node = [&](NodeId dn, NodeId img) {
        if (nm[static_cast<size_t>(dn)] >= 0 && nm[static_cast<size_t>(dn)] != img) return false;
        nm[static_cast<size_t>(dn)] = img;
        return true;
    };
    auto put_edge = [&](EdgeId de, EdgeId img) {
        if (em[static_cast<size_t>(de)] >= 0 && em[static_cast<size_t>(de)] != img) return false;
        em[static_cast<size_t>(de)] = img;
        return true;
    };
    for (NodeId n = 0; n < h_b.dom.node_count(); ++n)
        if (!put_node(po.from_left.on_node(n), h_b.on_node(n))) return std::nullopt;
    for (NodeId n = 0; n < h_c.dom.node_count(); ++n)
        if (!put_node(po.from_right.on_node(n), h_c.on_node(n))) return std::nullopt;
    for (EdgeId e = 0; e < h_b.dom.edge_count(); ++e)
        if (!put_edge(po.from_left.on_edge(e), h_b.on_edge(e))) return std::nullopt;
    for (EdgeId e = 0; e < h_c.dom.edge_count(); ++e)
        if (!put_edge(po.from_right.on_edge(e), h_c.on_edge(e))) return std::nullopt;
    // Pushout legs are jointly surjective, so every slot is filled.
    try {
        return GraphMorphism(d, x, std::move(nm), std::move(em));
    } catch (const std::invalid_argument&) {
        return std::nullopt; // cocone did not commute with source/target or types
    }
}

/// Why a pushout complement does not exist.
struct GluingViolation {
    enum class Kind { Dangling, Identification };
    Kind kind = Kind::Dangling;
    // For Dangling: host edges outside the image that touch a deleted node.
    // For Identification: pairs of left-hand-side elements merged by the match
    // of which at least one is deleted.
    std::vector<EdgeId> dangling_edges;
    std::vector<std::pair<NodeId, NodeId>> identified_nodes;
    std::vector<std::pair<EdgeId, EdgeId>> identified_edges;

    std::string describe() const {
        if (kind == Kind::Dangling) {
            std::string s = "dangling edges:";
            for (EdgeId e : dangling_edges) s += " " + std::to_string(e);
            return s;
        }
        std::string s = "identified deleted elements:";
        for (auto [x, y] : identified_nodes)
            s += " n" + std::to_string(x) + "~n" + std::to_string(y);
        for (auto [x, y] : identified_edges)
            s += " e" + std::to_string(x) + "~e" + std::to_string(y);
        return s;
    }
};

struct PushoutComplementResult {
    TypedGraph object;          // D
    GraphMorphism from_interface; // I -> D
    GraphMorphism to_host;      // D -> G (mono)
};

/// Pushout complement of I -l-> L -m-> G for mono l. Exists iff the gluing
/// condition holds; D is G minus the match image of the deleted part of L.
inline std::variant<PushoutComplementResult, GluingViolation> pushout_complement(
    const GraphMorphism& l, const GraphMorphism& m) {
    if (!l.is_mono()) throw std::invalid_argument("pushout complement requires mono first leg");
    if (l.cod != m.dom) throw std::invalid_argument("pushout complement: legs do not compose");
    const TypedGraph& li = l.dom; // I
    const TypedGraph& lhs = l.cod; // L
    const TypedGraph& g = m.cod;

    std::vector<char> node_preserved(static_cast<size_t>(lhs.node_count()), 0);
    std::vector<char> edge_preserved(static_cast<size_t>(lhs.edge_count()), 0);
    for (NodeId n = 0; n < li.node_count(); ++n) node_preserved[static_cast<size_t>(l.on_node(n))] = 1;
    for (EdgeId e = 0; e < li.edge_count(); ++e) edge_preserved[static_cast<size_t>(l.on_edge(e))] = 1;

    // Identification condition: an element merged with anything else by m
    // must be preserved.
    GluingViolation ident;
    ident.kind = GluingViolation::Kind::Identification;
    for (NodeId x = 0; x < lhs.node_count(); ++x)
        for (NodeId y = x + 1; y < lhs.node_count(); ++y)
            if (m.on_node(x) == m.on_node(y) &&
                (!node_preserved[static_cast<size_t>(x)] || !node_preserved[static_cast<size_t>(y)]))
                ident.identified_nodes.emplace_back(x, y);
    for (EdgeId x = 0; x < lhs.edge_count(); ++x)
        for (EdgeId y = x + 1; y < lhs.edge_count(); ++y)
            if (m.on_edge(x) == m.on_edge(y) &&
                (!edge_preserved[static_cast<size_t>(x)] || !edge_preserved[static_cast<size_t>(y)]))
                ident.identified_edges.emplace_back(x, y);
    if (!ident.identified_nodes.empty() || !ident.identified_edges.empty()) return ident;

    std::vector<char> g_node_deleted(static_cast<size_t>(g.node_count()), 0);
    std::vector<char> g_edge_deleted(static_cast<size_t>(g.edge_count()), 0);
    for (NodeId x = 0; x < lhs.node_count(); ++x)
        if (!node_preserved[static_cast<size_t>(x)]) g_node_deleted[static_cast<size_t>(m.on_node(x))] = 1;
    for (EdgeId x = 0; x < lhs.edge_count(); ++x)
        if (!edge_preserved[static_cast<size_t>(x)]) g_edge_deleted[static_cast<size_t>(m.on_edge(x))] = 1;

    // Dangling condition: no surviving edge may touch a deleted node.
    GluingViolation dangle;
    dangle.kind = GluingViolation::Kind::Dangling;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (g_edge_deleted[static_cast<size_t>(e)]) continue;
        const auto& ge = g.edge(e);
        if (g_node_deleted[static_cast<size_t>(ge.source)] || g_node_deleted[static_cast<size_t>(ge.target)])
            dangle.dangling_edges.push_back(e);
    }
    if (!dangle.dangling_edges.empty()) return dangle;

    std::vector<NodeId> node_new(static_cast<size_t>(g.node_count()), -1);
    std::vector<TypeId> d_node_types;
    for (NodeId n = 0; n < g.node_count(); ++n)
        if (!g_node_deleted[static_cast<size_t>(n)]) {
            node_new[static_cast<size_t>(n)] = static_cast<NodeId>(d_node_types.size());
            d_node_types.push_back(g.node_type(n));
        }
    std::vector<EdgeId> edge_new(static_cast<size_t>(g.edge_count()), -1);
    std::vector<TypedGraph::Edge> d_edges;
    std::vector<EdgeId> d_to_g_edges;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!g_edge_deleted[static_cast<size_t>(e)]) {
            const auto& ge = g.edge(e);
            edge_new[static_cast<size_t>(e)] = static_cast<EdgeId>(d_edges.size());
            d_edges.push_back({node_new[static_cast<size_t>(ge.source)],
                               node_new[static_cast<size_t>(ge.target)], ge.type});
            d_to_g_edges.push_back(e);
        }
    TypedGraph d(g.type_graph(), std::move(d_node_types), std::move(d_edges));

    std::vector<NodeId> i_nm(static_cast<size_t>(li.node_count()));
    for (NodeId n = 0; n < li.node_count(); ++n)
        i_nm[static_cast<size_t>(n)] = node_new[static_cast<size_t>(m.on_node(l.on_node(n)))];
    std::vector<EdgeId> i_em(static_cast<size_t>(li.edge_count()));
    for (EdgeId e = 0; e < li.edge_count(); ++e)
        i_em[static_cast<size_t>(e)] = edge_new[static_cast<size_t>(m.on_edge(l.on_edge(e)))];

    std::vector<NodeId> d_nm(static_cast<size_t>(d.node_count()));
    for (NodeId n = 0; n < g.node_count(); ++n)
        if (node_new[static_cast<size_t>(n)] >= 0) d_nm[static_cast<size_t>(node_new[static_cast<size_t>(n)])] = n;

    return PushoutComplementResult{
        d, GraphMorphism(li, d, std::move(i_nm), std::move(i_em)),
        GraphMorphism(d, g, std::move(d_nm), d_to_g_edges)};
}

inline bool gluing_ok(const GraphMorphism& l, const GraphMorphism& m) {
    return std::holds_alternative<PushoutComplementResult>(pushout_complement(l, m));
}

struct CoproductResult {
    TypedGraph object;
    GraphMorphism inject_left;
    GraphMorphism inject_right;
};

/// Disjoint union with its two injections.
inline CoproductResult coproduct(const TypedGraph& a, const TypedGraph& b) {
    if (!same_type_graph(a.type_graph(), b.type_graph()))
        throw std::invalid_argument("coproduct: type graph mismatch");
    std::vector<TypeId> nodes = a.node_types();
    nodes.insert(nodes.end(), b.node_types().begin(), b.node_types().end());
    std::vector<TypedGraph::Edge> edges = a.edges();
    for (const auto& e : b.edges())
        edges.push_back({e.source + a.node_count(), e.target + a.node_count(), e.type});
    TypedGraph sum(a.type_graph(), std::move(nodes), std::move(edges));

    std::vector<NodeId> a_nm(static_cast<size_t>(a.node_count()));
    std::iota(a_nm.begin(), a_nm.end(), 0);
    std::vector<EdgeId> a_em(static_cast<size_t>(a.edge_count()));
    std::iota(a_em.begin(), a_em.end(), 0);
    std::vector<NodeId> b_nm(static_cast<size_t>(b.node_count()));
    std::iota(b_nm.begin(), b_nm.end(), a.node_count());
    std::vector<EdgeId> b_em(static_cast<size_t>(b.edge_count()));
    std::iota(b_em.begin(), b_em.end(), a.edge_count());

    return CoproductResult{sum, GraphMorphism(a, sum, std::move(a_nm), std::move(a_em)),
                           GraphMorphism(b, sum, std::move(b_nm), std::move(b_em))};
}

/// Unique h with h o i1 = h1 and h o i2 = h2.
inline GraphMorphism coproduct_mediator(const CoproductResult& cp, const GraphMorphism& h1,
                                        const GraphMorphism& h2) {
    if (h1.cod != h2.cod) throw std::invalid_argument("coproduct mediator: codomain mismatch");
    std::vector<NodeId> nm(static_cast<size_t>(cp.object.node_count()));
    std::vector<EdgeId> em(static_cast<size_t>(cp.object.edge_count()));
    for (NodeId n = 0; n < h1.dom.node_count(); ++n) nm[static_cast<size_t>(cp.inject_left.on_node(n))] = h1.on_node(n);
    for (NodeId n = 0; n < h2.dom.node_count(); ++n) nm[static_cast<size_t>(cp.inject_right.on_node(n))] = h2.on_node(n);
    for (EdgeId e = 0; e < h1.dom.edge_count(); ++e) em[static_cast<size_t>(cp.inject_left.on_edge(e))] = h1.on_edge(e);
    for (EdgeId e = 0; e < h2.dom.edge_count(); ++e) em[static_cast<size_t>(cp.inject_right.on_edge(e))] = h2.on_edge(e);
    return GraphMorphism(cp.object, h1.cod, std::move(nm), std::move(em));
}

struct Factorization {
    GraphMorphism epi;  // A -> Image
    GraphMorphism mono; // Image -> B
};

/// f = mono o epi with the image as the middle object.
inline Factorization epi_mono_factorize(const GraphMorphism& f) {
    const TypedGraph& b = f.cod;
    std::vector<NodeId> node_new(static_cast<size_t>(b.node_count()), -1);
    std::vector<TypeId> img_nodes;
    std::vector<NodeId> img_to_b_nodes;
    for (NodeId n : f.node_map)
        if (node_new[static_cast<size_t>(n)] < 0) {
            node_new[static_cast<size_t>(n)] = static_cast<NodeId>(img_nodes.size());
            img_nodes.push_back(b.node_type(n));
            img_to_b_nodes.push_back(n);
        }
    std::vector<EdgeId> edge_new(static_cast<size_t>(b.edge_count()), -1);
    std::vector<TypedGraph::Edge> img_edges;
    std::vector<EdgeId> img_to_b_edges;
    for (EdgeId e : f.edge_map)
        if (edge_new[static_cast<size_t>(e)] < 0) {
            const auto& be = b.edge(e);
            edge_new[static_cast<size_t>(e)] = static_cast<EdgeId>(img_edges.size());
            img_edges.push_back({node_new[static_cast<size_t>(be.source)],
                                 node_new[static_cast<size_t>(be.target)], be.type});
            img_to_b_edges.push_back(e);
        }
    TypedGraph img(b.type_graph(), std::move(img_nodes), std::move(img_edges));
    std::vector<NodeId> e_nm(f.node_map.size());
    for (size_t i = 0; i < f.node_map.size(); ++i) e_nm[i] = node_new[static_cast<size_t>(f.node_map[i])];
    std::vector<EdgeId> e_em(f.edge_map.size());
    for (size_t i = 0; i < f.edge_map.size(); ++i) e_em[i] = edge_new[static_cast<size_t>(f.edge_map[i])];
    return Factorization{GraphMorphism(f.dom, img, std::move(e_nm), std::move(e_em)),
                         GraphMorphism(img, b, img_to_b_nodes, img_to_b_edges)};
}

struct PairFactorization {
    GraphMorphism first;  // A1 -> K, jointly surjective with second
    GraphMorphism second; // A2 -> K
    GraphMorphism mono;   // K -> B
};

/// Factor a cospan (f1, f2) into a jointly surjective pair followed by a
/// mono: the K is the union of both images inside B.
inline PairFactorization pair_factorize(const GraphMorphism& f1, const GraphMorphism& f2) {
    if (f1.cod != f2.cod) throw std::invalid_argument("pair factorization: codomain mismatch");
    const TypedGraph& b = f1.cod;
    std::vector<NodeId> node_new(static_cast<size_t>(b.node_count()), -1);
    std::vector<TypeId> k_nodes;
    std::vector<NodeId> k_to_b_nodes;
    auto touch_node = [&](NodeId n) {
        if (node_new[static_cast<size_t>(n)] < 0) {
            node_new[static_cast<size_t>(n)] = static_cast<NodeId>(k_nodes.size());
            k_nodes.push_back(b.node_type(n));
            k_to_b_nodes.push_back(n);
        }
    };
    for (NodeId n : f1.node_map) touch_node(n);
    for (NodeId n : f2.node_map) touch_node(n);
    std::vector<EdgeId> edge_new(static_cast<size_t>(b.edge_count()), -1);
    std::vector<TypedGraph::Edge> k_edges;
    std::vector<EdgeId> k_to_b_edges;
    auto touch_edge = [&](EdgeId e) {
        if (edge_new[static_cast<size_t>(e)] < 0) {
            const auto& be = b.edge(e);
            edge_new[static_cast<size_t>(e)] = static_cast<EdgeId>(k_edges.size());
            k_edges.push_back({node_new[static_cast<size_t>(be.source)],
                               node_new[static_cast<size_t>(be.target)], be.type});
            k_to_b_edges.push_back(e);
        }
    };
    for (EdgeId e : f1.edge_map) touch_edge(e);
    for (EdgeId e : f2.edge_map) touch_edge(e);
    TypedGraph k(b.type_graph(), std::move(k_nodes), std::move(k_edges));

    auto corestrict = [&](const GraphMorphism& f) {
        std::vector<NodeId> nm(f.node_map.size());
        for (size_t i = 0; i < nm.size(); ++i) nm[i] = node_new[static_cast<size_t>(f.node_map[i])];
        std::vector<EdgeId> em(f.edge_map.size());
        for (size_t i = 0; i < em.size(); ++i) em[i] = edge_new[static_cast<size_t>(f.edge_map[i])];
        return GraphMorphism(f.dom, k, std::move(nm), std::move(em));
    };
    return PairFactorization{corestrict(f1), corestrict(f2),
                             GraphMorphism(k, b, k_to_b_nodes, k_to_b_edges)};
}

// ---------------------------------------------------------------------------
// Quotient enumeration. A surjection out of X is determined by a partition of
// its nodes (type-compatible) together with a partition of each family of
// merge-compatible edges. Distinct partition pairs give pairwise
// non-isomorphic quotient morphisms, so no dedup pass is needed.
// ---------------------------------------------------------------------------

struct Quotient {
    TypedGraph object;
    GraphMorphism projection; // X -> object, surjective
};

namespace detail {

inline void enumerate_set_partitions(int n, const std::function<bool(int, int)>& compatible,
                                     const std::function<void(const std::vector<int>&)>& emit) {
    // Restricted-growth strings; block(i) <= max(block(0..i-1)) + 1.
    std::vector<int> block(static_cast<size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int maxb) {
        if (i == n) {
            emit(block);
            return;
        }
        for (int b = 0; b <= maxb + 1; ++b) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                if (block[static_cast<size_t>(j)] == b && !compatible(j, i)) ok = false;
            if (!ok) continue;
            block[static_cast<size_t>(i)] = b;
            rec(i + 1, std::max(maxb, b));
        }
    };
    if (n == 0) {
        emit({});
        return;
    }
    rec(0, -1);
}

} // namespace detail

/// All surjective morphisms out of x, one per (node partition, edge
/// partition) pair, in deterministic order.
inline std::vector<Quotient> enumerate_quotients(const TypedGraph& x) {
    std::vector<Quotient> out;
    const int n = x.node_count();
    const int ne = x.edge_count();

    detail::enumerate_set_partitions(
        n, [&](int i, int j) { return x.node_type(i) == x.node_type(j); },
        [&](const std::vector<int>& node_block) {
            // Edges may merge only when same type and merged endpoints.
            auto edge_compatible = [&](int i, int j) {
                const auto& ei = x.edge(i);
                const auto& ej = x.edge(j);
                return ei.type == ej.type &&
                       node_block[static_cast<size_t>(ei.source)] == node_block[static_cast<size_t>(ej.source)] &&
                       node_block[static_cast<size_t>(ei.target)] == node_block[static_cast<size_t>(ej.target)];
            };
            detail::enumerate_set_partitions(ne, edge_compatible, [&](const std::vector<int>& edge_block) {
                int n_blocks = 0;
                for (int b : node_block) n_blocks = std::max(n_blocks, b + 1);
                std::vector<TypeId> k_nodes(static_cast<size_t>(n_blocks));
                for (int i = 0; i < n; ++i) k_nodes[static_cast<size_t>(node_block[static_cast<size_t>(i)])] = x.node_type(i);
                int e_blocks = 0;
                for (int b : edge_block) e_blocks = std::max(e_blocks, b + 1);
                std::vector<TypedGraph::Edge> k_edges(static_cast<size_t>(e_blocks));
                for (int i = 0; i < ne; ++i) {
                    const auto& e = x.edge(i);
                    k_edges[static_cast<size_t>(edge_block[static_cast<size_t>(i)])] = {
                        node_block[static_cast<size_t>(e.source)], node_block[static_cast<size_t>(e.target)], e.type};
                }
                TypedGraph k(x.type_graph(), std::move(k_nodes), std::move(k_edges));
                std::vector<NodeId> nm(node_block.begin(), node_block.end());
                std::vector<EdgeId> em(edge_block.begin(), edge_block.end());
                out.push_back({k, GraphMorphism(x, k, std::move(nm), std::move(em))});
            });
        });
    return out;
}

struct JointlyEpiPair {
    GraphMorphism first;  // A1 -> K
    GraphMorphism second; // A2 -> K
};

/// All jointly surjective pairs (e1, e2) out of A1, A2 up to isomorphism of
/// the shared codomain; optionally restricted to injective e2.
inline std::vector<JointlyEpiPair> enumerate_jointly_epi_pairs(const TypedGraph& a1,
                                                               const TypedGraph& a2,
                                                               bool restrict_second_to_mono) {
    CoproductResult cp = coproduct(a1, a2);
    std::vector<JointlyEpiPair> out;
    for (const auto& q : enumerate_quotients(cp.object)) {
        GraphMorphism e1 = compose(cp.inject_left, q.projection);
        GraphMorphism e2 = compose(cp.inject_right, q.projection);
        if (restrict_second_to_mono && !e2.is_mono()) continue;
        out.push_back({std::move(e1), std::move(e2)});
    }
    return out;
}

/// All commuting jointly surjective completions of the span b : P -> P',
/// a : P -> C: pairs (a' : P' -> X, b' : C -> X) with a' o b = b' o a and b'
/// injective. This is the family the condition-shift construction ranges over.
inline std::vector<JointlyEpiPair> enumerate_shift_pairs(const GraphMorphism& b,
                                                         const GraphMorphism& a) {
    PushoutResult po = pushout(b, a); // from_left : P' -> Q, from_right : C -> Q
    std::vector<JointlyEpiPair> out;
    for (const auto& q : enumerate_quotients(po.object)) {
        GraphMorphism a_prime = compose(po.from_left, q.projection);
        GraphMorphism b_prime = compose(po.from_right, q.projection);
        if (!b_prime.is_mono()) continue;
        out.push_back({std::move(a_prime), std::move(b_prime)});
    }
    return out;
}

} // namespace dpoca
