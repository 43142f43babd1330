// Two-step fans out of a shared source object: parallel independence,
// conflict classification, and embedding into larger contexts via extension
// diagrams.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dpoca/rule.hpp"

namespace dpoca {

struct TransformationPair {
    DirectTransformation first;
    DirectTransformation second;

    TransformationPair(DirectTransformation f, DirectTransformation s)
        : first(std::move(f)), second(std::move(s)) {
        if (first.source() != second.source())
            throw std::invalid_argument("transformation pair must share its source object");
    }

    const TypedGraph& source() const { return first.source(); }
    const GraphMorphism& match_first() const { return first.match; }
    const GraphMorphism& match_second() const { return second.match; }
    bool ac_respecting() const { return first.ac_respected && second.ac_respected; }
};

enum class ConflictClass { UseDelete, DeleteUse, ProduceAC, ACProduce };

inline std::string to_string(ConflictClass c) {
    switch (c) {
        case ConflictClass::UseDelete: return "use-delete";
        case ConflictClass::DeleteUse: return "delete-use";
        case ConflictClass::ProduceAC: return "produce-ac";
        case ConflictClass::ACProduce: return "ac-produce";
    }
    return "?";
}

struct IndependenceReport {
    std::optional<GraphMorphism> d12; // L1 -> D2 with into_source o d12 = match1
    std::optional<GraphMorphism> d21; // L2 -> D1 with into_source o d21 = match2
    std::optional<bool> d12_ac_ok;    // first rule's AC on the residual match
    std::optional<bool> d21_ac_ok;
    std::vector<ConflictClass> classes;
    bool parallel_independent = false;

    bool has(ConflictClass c) const {
        return std::find(classes.begin(), classes.end(), c) != classes.end();
    }
};

namespace detail {

/// Unique solution of into_source o d = match, if any (into_source is mono).
inline std::optional<GraphMorphism> solve_residual(const GraphMorphism& match,
                                                   const GraphMorphism& into_source) {
    const TypedGraph& g = into_source.cod;
    std::vector<NodeId> node_pre(static_cast<size_t>(g.node_count()), -1);
    for (NodeId d = 0; d < into_source.dom.node_count(); ++d)
        node_pre[static_cast<size_t>(into_source.on_node(d))] = d;
    std::vector<EdgeId> edge_pre(static_cast<size_t>(g.edge_count()), -1);
    for (EdgeId d = 0; d < into_source.dom.edge_count(); ++d)
        edge_pre[static_cast<size_t>(into_source.on_edge(d))] = d;

    std::vector<NodeId> nm(static_cast<size_t>(match.dom.node_count()));
    for (NodeId x = 0; x < match.dom.node_count(); ++x) {
        NodeId pre = node_pre[static_cast<size_t>(match.on_node(x))];
        if (pre < 0) return std::nullopt;
        nm[static_cast<size_t>(x)] = pre;
    }
    std::vector<EdgeId> em(static_cast<size_t>(match.dom.edge_count()));
    for (EdgeId x = 0; x < match.dom.edge_count(); ++x) {
        EdgeId pre = edge_pre[static_cast<size_t>(match.on_edge(x))];
        if (pre < 0) return std::nullopt;
        em[static_cast<size_t>(x)] = pre;
    }
    return GraphMorphism(match.dom, into_source.dom, std::move(nm), std::move(em));
}

} // namespace detail

/// Classify the pair. The residual morphisms d12/d21 are unique when they
/// exist; a missing residual is a use-delete (delete-use) conflict, a
/// present one whose extended match violates the other rule's condition is
/// an AC-produce (produce-AC) conflict. With with_acs=false only the
/// structural part is evaluated (plain reading of the pair).
inline IndependenceReport check_parallel_independence(const TransformationPair& tp,
                                                      bool with_acs = true) {
    IndependenceReport rep;
    rep.d12 = detail::solve_residual(tp.match_first(), tp.second.into_source);
    rep.d21 = detail::solve_residual(tp.match_second(), tp.first.into_source);

    if (!rep.d12) {
        rep.classes.push_back(ConflictClass::UseDelete);
    } else if (with_acs) {
        GraphMorphism extended = compose(*rep.d12, tp.second.into_result); // L1 -> H2
        rep.d12_ac_ok = satisfies(extended, tp.first.rule.ac_left);
        if (!*rep.d12_ac_ok) rep.classes.push_back(ConflictClass::ACProduce);
    }
    if (!rep.d21) {
        rep.classes.push_back(ConflictClass::DeleteUse);
    } else if (with_acs) {
        GraphMorphism extended = compose(*rep.d21, tp.first.into_result); // L2 -> H1
        rep.d21_ac_ok = satisfies(extended, tp.second.rule.ac_left);
        if (!*rep.d21_ac_ok) rep.classes.push_back(ConflictClass::ProduceAC);
    }
    rep.parallel_independent = rep.classes.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Extension diagrams. An extension morphism must not only keep both
// composite matches applicable; the preserved context of the small steps
// must stay out of the deleted zone of the big ones, otherwise no vertical
// morphisms exist and the big pair is not an extension of the small one.
// ---------------------------------------------------------------------------

struct PairEmbedding {
    TransformationPair pair;   // the lower row, at matches m o o_i
    GraphMorphism extension;   // m : K -> G
    GraphMorphism mid_first;   // D1_small -> D1_big
    GraphMorphism out_first;   // P1_small -> H1_big
    GraphMorphism mid_second;
    GraphMorphism out_second;
};

struct EmbedError {
    enum class Kind { Gluing, NoExtension };
    Kind kind = Kind::Gluing;
    int side = 0; // 1 or 2
    std::optional<GluingViolation> gluing;
};

using EmbedResult = std::variant<PairEmbedding, EmbedError>;

namespace detail {

inline std::optional<GraphMorphism> vertical_mid(const DirectTransformation& small,
                                                 const DirectTransformation& big,
                                                 const GraphMorphism& extension) {
    // D_small -> D_big: image under the extension must avoid the deleted zone.
    auto lifted = solve_residual(compose(small.into_source, extension), big.into_source);
    return lifted;
}

inline GraphMorphism vertical_out(const DirectTransformation& small,
                                  const DirectTransformation& big,
                                  const GraphMorphism& mid) {
    // P_small -> H_big, determined by the comatch on created elements and by
    // the mid vertical on preserved ones. The two prescriptions agree on the
    // interface image because the squares commute.
    const TypedGraph& p = small.result();
    std::vector<NodeId> nm(static_cast<size_t>(p.node_count()), -1);
    std::vector<EdgeId> em(static_cast<size_t>(p.edge_count()), -1);
    auto place_node = [&](NodeId at, NodeId img) {
        if (nm[static_cast<size_t>(at)] >= 0 && nm[static_cast<size_t>(at)] != img)
            throw std::logic_error("extension verticals disagree on a node");
        nm[static_cast<size_t>(at)] = img;
    };
    auto place_edge = [&](EdgeId at, EdgeId img) {
        if (em[static_cast<size_t>(at)] >= 0 && em[static_cast<size_t>(at)] != img)
            throw std::logic_error("extension verticals disagree on an edge");
        em[static_cast<size_t>(at)] = img;
    };
    for (NodeId r = 0; r < small.rule.right().node_count(); ++r)
        place_node(small.comatch.on_node(r), big.comatch.on_node(r));
    for (EdgeId r = 0; r < small.rule.right().edge_count(); ++r)
        place_edge(small.comatch.on_edge(r), big.comatch.on_edge(r));
    for (NodeId d = 0; d < small.context().node_count(); ++d)
        place_node(small.into_result.on_node(d), big.into_result.on_node(mid.on_node(d)));
    for (EdgeId d = 0; d < small.context().edge_count(); ++d)
        place_edge(small.into_result.on_edge(d), big.into_result.on_edge(mid.on_edge(d)));
    return GraphMorphism(p, big.result(), std::move(nm), std::move(em));
}

} // namespace detail

/// Apply both rules of the small pair at the translated matches and build
/// the extension diagram. Condition-disregarding: AC status of the lower
/// row is recorded, not enforced.
inline EmbedResult embed_transformation_pair(const TransformationPair& small,
                                             const GraphMorphism& extension) {
    if (extension.dom != small.source())
        throw std::invalid_argument("embed: extension domain is not the pair's source");

    auto run_side = [&](const DirectTransformation& t, int side)
        -> std::variant<DirectTransformation, EmbedError> {
        ApplyResult r = apply(t.rule, compose(t.match, extension), /*disregard_ac=*/true);
        if (std::holds_alternative<ApplyError>(r)) {
            auto& err = std::get<ApplyError>(r);
            return EmbedError{EmbedError::Kind::Gluing, side, err.gluing};
        }
        return std::get<DirectTransformation>(std::move(r));
    };

    auto r1 = run_side(small.first, 1);
    if (std::holds_alternative<EmbedError>(r1)) return std::get<EmbedError>(r1);
    auto r2 = run_side(small.second, 2);
    if (std::holds_alternative<EmbedError>(r2)) return std::get<EmbedError>(r2);
    DirectTransformation big1 = std::get<DirectTransformation>(std::move(r1));
    DirectTransformation big2 = std::get<DirectTransformation>(std::move(r2));

    auto mid1 = detail::vertical_mid(small.first, big1, extension);
    if (!mid1) return EmbedError{EmbedError::Kind::NoExtension, 1, std::nullopt};
    auto mid2 = detail::vertical_mid(small.second, big2, extension);
    if (!mid2) return EmbedError{EmbedError::Kind::NoExtension, 2, std::nullopt};

    GraphMorphism out1 = detail::vertical_out(small.first, big1, *mid1);
    GraphMorphism out2 = detail::vertical_out(small.second, big2, *mid2);
    return PairEmbedding{TransformationPair(std::move(big1), std::move(big2)), extension,
                         std::move(*mid1), std::move(out1), std::move(*mid2), std::move(out2)};
}

// ---------------------------------------------------------------------------
// Pair-level comparisons.
// ---------------------------------------------------------------------------

namespace detail {

/// All morphisms K_a -> K_b commuting with both match pairs.
inline std::vector<GraphMorphism> match_compatible_morphisms(const TransformationPair& a,
                                                             const TransformationPair& b,
                                                             MorphismRestriction restrict_to) {
    const TypedGraph& ka = a.source();
    const TypedGraph& kb = b.source();
    std::vector<NodeId> fixed_node(static_cast<size_t>(ka.node_count()), -1);
    std::vector<EdgeId> fixed_edge(static_cast<size_t>(ka.edge_count()), -1);
    auto pin = [&](const GraphMorphism& oa, const GraphMorphism& ob) -> bool {
        for (NodeId x = 0; x < oa.dom.node_count(); ++x) {
            NodeId at = oa.on_node(x);
            NodeId want = ob.on_node(x);
            if (fixed_node[static_cast<size_t>(at)] >= 0 && fixed_node[static_cast<size_t>(at)] != want)
                return false;
            fixed_node[static_cast<size_t>(at)] = want;
        }
        for (EdgeId x = 0; x < oa.dom.edge_count(); ++x) {
            EdgeId at = oa.on_edge(x);
            EdgeId want = ob.on_edge(x);
            if (fixed_edge[static_cast<size_t>(at)] >= 0 && fixed_edge[static_cast<size_t>(at)] != want)
                return false;
            fixed_edge[static_cast<size_t>(at)] = want;
        }
        return true;
    };
    if (!pin(a.match_first(), b.match_first())) return {};
    if (!pin(a.match_second(), b.match_second())) return {};
    std::vector<GraphMorphism> out;
    enumerate_morphisms_into(ka, kb, restrict_to, fixed_node, fixed_edge,
                             [&](GraphMorphism&& m) {
                                 out.push_back(std::move(m));
                                 return true;
                             });
    sort_morphisms(out);
    return out;
}

} // namespace detail

/// Isomorphism of pairs: an iso of the sources commuting with both matches
/// (everything else is then determined up to iso).
inline bool pairs_isomorphic(const TransformationPair& a, const TransformationPair& b) {
    if (a.first.rule.name != b.first.rule.name || a.second.rule.name != b.second.rule.name)
        return false;
    for (const auto& phi :
         detail::match_compatible_morphisms(a, b, MorphismRestriction::Mono))
        if (phi.is_epi()) return true;
    return false;
}

/// First extension morphism embedding `small` into `big` (matches must
/// correspond exactly and the extension diagram must exist), if any.
inline std::optional<GraphMorphism> find_embedding(const TransformationPair& small,
                                                   const TransformationPair& big) {
    for (const auto& m :
         detail::match_compatible_morphisms(small, big, MorphismRestriction::All)) {
        EmbedResult r = embed_transformation_pair(small, m);
        if (std::holds_alternative<PairEmbedding>(r)) return m;
    }
    return std::nullopt;
}

} // namespace dpoca
