// Finite typed graphs over a fixed type graph, with exact canonical forms
// for isomorphism-class bookkeeping. Everything downstream (matching,
// pushouts, condition evaluation) works on these value types; all of them
// are immutable after construction.
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpoca {

using NodeId = int;
using EdgeId = int;
using TypeId = int;

/// Declares the node and edge sorts a typed graph may use. Edge types carry
/// fixed endpoint node types.
struct TypeGraph {
    struct EdgeType {
        std::string name;
        TypeId source = 0;
        TypeId target = 0;
    };

    std::vector<std::string> node_types;
    std::vector<EdgeType> edge_types;

    int node_type_count() const { return static_cast<int>(node_types.size()); }
    int edge_type_count() const { return static_cast<int>(edge_types.size()); }

    std::optional<TypeId> find_node_type(const std::string& name) const {
        for (TypeId t = 0; t < node_type_count(); ++t)
            if (node_types[t] == name) return t;
        return std::nullopt;
    }

    std::optional<TypeId> find_edge_type(const std::string& name) const {
        for (TypeId t = 0; t < edge_type_count(); ++t)
            if (edge_types[t].name == name) return t;
        return std::nullopt;
    }

    void validate() const {
        for (size_t i = 0; i < node_types.size(); ++i)
            for (size_t j = i + 1; j < node_types.size(); ++j)
                if (node_types[i] == node_types[j])
                    throw std::invalid_argument("duplicate node type name: " + node_types[i]);
        for (size_t i = 0; i < edge_types.size(); ++i) {
            const auto& et = edge_types[i];
            if (et.source < 0 || et.source >= node_type_count() ||
                et.target < 0 || et.target >= node_type_count())
                throw std::invalid_argument("edge type '" + et.name +
                                            "' references undeclared node type");
            for (size_t j = i + 1; j < edge_types.size(); ++j)
                if (edge_types[i].name == edge_types[j].name)
                    throw std::invalid_argument("duplicate edge type name: " + et.name);
        }
    }

    bool operator==(const TypeGraph& other) const {
        if (node_types != other.node_types) return false;
        if (edge_types.size() != other.edge_types.size()) return false;
        for (size_t i = 0; i < edge_types.size(); ++i)
            if (edge_types[i].name != other.edge_types[i].name ||
                edge_types[i].source != other.edge_types[i].source ||
                edge_types[i].target != other.edge_types[i].target)
                return false;
        return true;
    }

    /// One node sort and one edge sort over it; enough for most fixtures.
    static std::shared_ptr<const TypeGraph> untyped() {
        auto tg = std::make_shared<TypeGraph>();
        tg->node_types = {"node"};
        tg->edge_types = {{"edge", 0, 0}};
        return tg;
    }
};

using TypeGraphPtr = std::shared_ptr<const TypeGraph>;

inline bool same_type_graph(const TypeGraphPtr& a, const TypeGraphPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

/// A finite graph typed over a TypeGraph. Nodes and edges use dense ids;
/// parallel edges are allowed.
class TypedGraph {
public:
    struct Edge {
        NodeId source = 0;
        NodeId target = 0;
        TypeId type = 0;
    };

    TypedGraph() : tg_(TypeGraph::untyped()) {}

    TypedGraph(TypeGraphPtr tg, std::vector<TypeId> node_types, std::vector<Edge> edges)
        : tg_(std::move(tg)), node_types_(std::move(node_types)), edges_(std::move(edges)) {
        validate();
    }

    static TypedGraph empty(TypeGraphPtr tg) { return TypedGraph(std::move(tg), {}, {}); }

    /// n nodes of the given type, no edges.
    static TypedGraph discrete(TypeGraphPtr tg, int n, TypeId node_type = 0) {
        return TypedGraph(std::move(tg), std::vector<TypeId>(static_cast<size_t>(n), node_type), {});
    }

    const TypeGraphPtr& type_graph() const { return tg_; }
    int node_count() const { return static_cast<int>(node_types_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    TypeId node_type(NodeId n) const { return node_types_.at(static_cast<size_t>(n)); }
    const Edge& edge(EdgeId e) const { return edges_.at(static_cast<size_t>(e)); }
    const std::vector<TypeId>& node_types() const { return node_types_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool operator==(const TypedGraph& other) const {
        if (!same_type_graph(tg_, other.tg_)) return false;
        if (node_types_ != other.node_types_) return false;
        if (edges_.size() != other.edges_.size()) return false;
        for (size_t i = 0; i < edges_.size(); ++i)
            if (edges_[i].source != other.edges_[i].source ||
                edges_[i].target != other.edges_[i].target ||
                edges_[i].type != other.edges_[i].type)
                return false;
        return true;
    }
    bool operator!=(const TypedGraph& other) const { return !(*this == other); }

    int out_degree(NodeId n) const {
        int d = 0;
        for (const auto& e : edges_) d += (e.source == n);
        return d;
    }
    int in_degree(NodeId n) const {
        int d = 0;
        for (const auto& e : edges_) d += (e.target == n);
        return d;
    }

    /// Encoding that is identical for two graphs iff a relabeling of nodes
    /// (and edges) turns one into the other. Exact: minimizes over node
    /// permutations, pruned by a degree/type refinement.
    std::string canonical_key() const;

private:
    void validate() const {
        if (!tg_) throw std::invalid_argument("typed graph without type graph");
        for (TypeId t : node_types_)
            if (t < 0 || t >= tg_->node_type_count())
                throw std::invalid_argument("node with undeclared type");
        for (const auto& e : edges_) {
            if (e.source < 0 || e.source >= node_count() || e.target < 0 || e.target >= node_count())
                throw std::invalid_argument("edge endpoint out of range");
            if (e.type < 0 || e.type >= tg_->edge_type_count())
                throw std::invalid_argument("edge with undeclared type");
            const auto& et = tg_->edge_types[static_cast<size_t>(e.type)];
            if (node_type(e.source) != et.source || node_type(e.target) != et.target)
                throw std::invalid_argument("edge endpoints do not match edge type '" + et.name + "'");
        }
    }

    TypeGraphPtr tg_;
    std::vector<TypeId> node_types_;
    std::vector<Edge> edges_;
};

namespace detail {

/// Node invariant used to cut the permutation search: type, degrees, loops.
inline std::vector<int64_t> node_signature(const TypedGraph& g, NodeId n) {
    int loops = 0;
    for (const auto& e : g.edges()) loops += (e.source == n && e.target == n);
    return {g.node_type(n), g.out_degree(n), g.in_degree(n), loops};
}

inline std::string encode_under(const TypedGraph& g, const std::vector<int>& pos) {
    // pos[old] = new position
    std::string s;
    s.reserve(static_cast<size_t>(g.node_count()) * 2 + static_cast<size_t>(g.edge_count()) * 6 + 8);
    std::vector<TypeId> types(static_cast<size_t>(g.node_count()));
    for (NodeId n = 0; n < g.node_count(); ++n) types[static_cast<size_t>(pos[static_cast<size_t>(n)])] = g.node_type(n);
    s += "n";
    for (TypeId t : types) { s += std::to_string(t); s += ','; }
    std::vector<std::string> es;
    es.reserve(g.edges().size());
    for (const auto& e : g.edges())
        es.push_back(std::to_string(pos[static_cast<size_t>(e.source)]) + ">" +
                     std::to_string(pos[static_cast<size_t>(e.target)]) + ":" + std::to_string(e.type));
    std::sort(es.begin(), es.end());
    s += "e";
    for (const auto& e : es) { s += e; s += ';'; }
    return s;
}

} // namespace detail

inline std::string TypedGraph::canonical_key() const {
    const int n = node_count();
    if (n == 0) return detail::encode_under(*this, {});

    // Group nodes by invariant; only permutations respecting group order can
    // be minimal, so permute within groups only.
    std::vector<std::vector<int64_t>> sig(static_cast<size_t>(n));
    for (NodeId v = 0; v < n; ++v) sig[static_cast<size_t>(v)] = detail::node_signature(*this, v);
    std::vector<NodeId> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return sig[static_cast<size_t>(a)] < sig[static_cast<size_t>(b)] ||
               (sig[static_cast<size_t>(a)] == sig[static_cast<size_t>(b)] && a < b);
    });

    std::string best;
    std::vector<int> pos(static_cast<size_t>(n));
    // Iterate over permutations of `order` that keep equal signatures adjacent.
    std::vector<NodeId> perm = order;
    auto same_group = [&](NodeId a, NodeId b) { return sig[static_cast<size_t>(a)] == sig[static_cast<size_t>(b)]; };
    // Enumerate products of within-group permutations.
    std::vector<std::pair<int, int>> groups; // [begin, end)
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && same_group(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)])) ++j;
        groups.emplace_back(i, j);
        i = j;
    }
    std::vector<std::vector<NodeId>> group_perm;
    for (auto [b, e] : groups)
        group_perm.emplace_back(order.begin() + b, order.begin() + e);

    struct Rec {
        std::vector<std::vector<NodeId>>& gp;
        std::vector<NodeId>& perm;
        const TypedGraph& g;
        std::string& best;
        std::vector<int>& pos;
        void run(size_t gi, int offset) {
            if (gi == gp.size()) {
                for (int i = 0; i < static_cast<int>(perm.size()); ++i)
                    pos[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i;
                std::string enc = detail::encode_under(g, pos);
                if (best.empty() || enc < best) best = enc;
                return;
            }
            auto& grp = gp[gi];
            std::sort(grp.begin(), grp.end());
            do {
                std::copy(grp.begin(), grp.end(), perm.begin() + offset);
                run(gi + 1, offset + static_cast<int>(grp.size()));
            } while (std::next_permutation(grp.begin(), grp.end()));
        }
    };
    Rec rec{group_perm, perm, *this, best, pos};
    rec.run(0, 0);
    return best;
}

} // namespace dpoca
