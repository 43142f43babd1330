// Static conflict detection for a rule pair: overlap enumeration, plain
// critical pairs and their initiality filter, the coproduct pair, and the
// symbolic machinery deciding which candidates actually induce conflicts.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpoca/condition_bounded.hpp"
#include "dpoca/symbolic.hpp"

namespace dpoca {

/// Both rules applied (condition-disregarding) at a pair of matches into a
/// shared source; nothing if a gluing condition fails.
inline std::optional<TransformationPair> build_pair_at(const Rule& r1, const Rule& r2,
                                                       const GraphMorphism& m1,
                                                       const GraphMorphism& m2) {
    ApplyResult a1 = apply(r1, m1, /*disregard_ac=*/true);
    if (std::holds_alternative<ApplyError>(a1)) return std::nullopt;
    ApplyResult a2 = apply(r2, m2, /*disregard_ac=*/true);
    if (std::holds_alternative<ApplyError>(a2)) return std::nullopt;
    return TransformationPair(std::get<DirectTransformation>(std::move(a1)),
                              std::get<DirectTransformation>(std::move(a2)));
}

/// Jointly surjective overlap pairs of the two left-hand sides whose
/// condition-disregarding steps both exist.
inline std::vector<TransformationPair> enumerate_overlap_pairs(const Rule& r1, const Rule& r2) {
    std::vector<TransformationPair> out;
    for (const auto& overlap : enumerate_jointly_epi_pairs(r1.left(), r2.left(), false))
        if (auto tp = build_pair_at(r1, r2, overlap.first, overlap.second))
            out.push_back(std::move(*tp));
    return out;
}

/// Critical pairs of the plain parts: overlap pairs that are parallel
/// dependent when conditions are ignored. Exhaustive and duplicate-free up
/// to isomorphism (distinct overlaps are never pair-isomorphic).
inline std::vector<TransformationPair> compute_plain_critical_pairs(const Rule& r1,
                                                                    const Rule& r2) {
    std::vector<TransformationPair> out;
    for (auto& tp : enumerate_overlap_pairs(r1, r2))
        if (!check_parallel_independence(tp, /*with_acs=*/false).parallel_independent)
            out.push_back(std::move(tp));
    return out;
}

/// The initial ones among the plain critical pairs: those into which no
/// other critical pair embeds. Joint surjectivity of the matches makes
/// mutual embedding collapse to isomorphism, so the filter is well-defined.
inline std::vector<TransformationPair> compute_plain_initial_conflicts(const Rule& r1,
                                                                       const Rule& r2) {
    std::vector<TransformationPair> cps = compute_plain_critical_pairs(r1, r2);
    std::vector<TransformationPair> out;
    for (size_t i = 0; i < cps.size(); ++i) {
        bool minimal = true;
        for (size_t j = 0; j < cps.size() && minimal; ++j) {
            if (i == j) continue;
            if (find_embedding(cps[j], cps[i])) minimal = false;
        }
        if (minimal) out.push_back(cps[i]);
    }
    return out;
}

/// The pair at the coproduct injections of the two left-hand sides,
/// condition-disregarding. Disjoint matches always satisfy the gluing
/// conditions; this is asserted, not assumed.
inline TransformationPair initial_parallel_independent_pair(const Rule& r1, const Rule& r2) {
    CoproductResult cp = coproduct(r1.left(), r2.left());
    auto tp = build_pair_at(r1, r2, cp.inject_left, cp.inject_right);
    if (!tp) throw std::logic_error("coproduct matches violated a gluing condition");
    return std::move(*tp);
}

// ---------------------------------------------------------------------------
// Unfolding membership and conflict-inducing status.
// ---------------------------------------------------------------------------

struct UnfoldedPair {
    GraphMorphism extension; // K -> G
    TransformationPair pair; // lower row, condition-respecting
    IndependenceReport report;
};

/// Lower row of an extension diagram at `extension`, provided both composite
/// matches glue, the verticals exist, and the lower row respects both rule
/// conditions (membership in the unfolding).
inline std::optional<UnfoldedPair> unfold_at(const SymbolicTransformationPair& stp,
                                             const GraphMorphism& extension) {
    EmbedResult r = embed_transformation_pair(stp.pair, extension);
    if (!std::holds_alternative<PairEmbedding>(r)) return std::nullopt;
    PairEmbedding emb = std::get<PairEmbedding>(std::move(r));
    if (!emb.pair.ac_respecting()) return std::nullopt;
    IndependenceReport rep = check_parallel_independence(emb.pair);
    return UnfoldedPair{extension, std::move(emb.pair), std::move(rep)};
}

/// All members of the unfolding with extensions into graphs within bounds,
/// each classified. May contain parallel independent members.
inline std::vector<UnfoldedPair> enumerate_unfolding(const SymbolicTransformationPair& stp,
                                                     Bounds bounds) {
    std::vector<UnfoldedPair> out;
    const TypedGraph& k = stp.overlap();
    for (const auto& g : enumerate_graph_universe(k.type_graph(), bounds))
        for (const auto& m : enumerate_morphisms(k, g))
            if (auto u = unfold_at(stp, m)) out.push_back(std::move(*u));
    return out;
}

enum class InducingStatus { Inducing, No, NotInducingUpToBound, Unknown };

struct InducingResult {
    InducingStatus status = InducingStatus::Unknown;
    std::optional<UnfoldedPair> witness; // for Inducing
    Bounds bounds;
};

/// Does some conflicting pair lie in the unfolding? Witness candidates come
/// first from the positive disjuncts of the combined condition (complete on
/// that fragment, hence a definitive No there), then from bounded search.
inline InducingResult conflict_inducing_status(const SymbolicTransformationPair& stp,
                                               Bounds bounds) {
    ConditionPtr want = normalize(stp.combined_ac());
    if (auto lits = flatten_to_positive_disjunction(want)) {
        for (const auto& lit : *lits) {
            if (auto u = unfold_at(stp, lit.anchor))
                if (!u->report.parallel_independent)
                    return {InducingStatus::Inducing, std::move(u), bounds};
        }
        // Every extension satisfying the combined condition factors through
        // some literal anchor, and anchors that fail membership only fail on
        // gluing/extension grounds their extensions inherit.
        return {InducingStatus::No, std::nullopt, bounds};
    }
    const TypedGraph& k = stp.overlap();
    for (const auto& g : enumerate_graph_universe(k.type_graph(), bounds))
        for (const auto& m : enumerate_morphisms(k, g))
            if (auto u = unfold_at(stp, m))
                if (!u->report.parallel_independent)
                    return {InducingStatus::Inducing, std::move(u), bounds};
    return {InducingStatus::NotInducingUpToBound, std::nullopt, bounds};
}

// ---------------------------------------------------------------------------
// Initial conflicts.
// ---------------------------------------------------------------------------

enum class InitialConflictKind { UseDeleteDeleteUse, ACInitial };

struct InitialConflict {
    SymbolicTransformationPair stp;
    InitialConflictKind kind = InitialConflictKind::UseDeleteDeleteUse;
    InducingResult inducing;
};

/// A candidate that did not make it (status other than Inducing).
struct RejectedCandidate {
    SymbolicTransformationPair stp;
    InitialConflictKind kind = InitialConflictKind::UseDeleteDeleteUse;
    InducingResult inducing;
};

struct InitialConflictSet {
    std::vector<InitialConflict> conflicts;
    std::vector<RejectedCandidate> rejected;
    std::vector<TransformationPair> plain_initial_conflicts;
};

/// Candidates are the plain initial conflicts plus the coproduct pair; the
/// conflict-inducing ones are the initial conflicts of the rule pair.
inline InitialConflictSet compute_initial_conflicts(const Rule& r1, const Rule& r2,
                                                    Bounds bounds) {
    InitialConflictSet out;
    Rule p1 = r1.stripped(), p2 = r2.stripped();
    out.plain_initial_conflicts = compute_plain_initial_conflicts(p1, p2);

    auto classify = [&](const TransformationPair& plain_tp, InitialConflictKind kind) {
        // Re-run the steps with the condition-carrying rules so the symbolic
        // pair sees the real conditions.
        auto tp = build_pair_at(r1, r2, plain_tp.match_first(), plain_tp.match_second());
        if (!tp) throw std::logic_error("candidate pair lost its gluing condition");
        SymbolicTransformationPair stp = build_symbolic_pair(*tp);
        InducingResult ind = conflict_inducing_status(stp, bounds);
        if (ind.status == InducingStatus::Inducing)
            out.conflicts.push_back({std::move(stp), kind, std::move(ind)});
        else
            out.rejected.push_back({std::move(stp), kind, std::move(ind)});
    };

    for (const auto& tp : out.plain_initial_conflicts)
        classify(tp, InitialConflictKind::UseDeleteDeleteUse);
    classify(initial_parallel_independent_pair(p1, p2), InitialConflictKind::ACInitial);
    return out;
}

// ---------------------------------------------------------------------------
// Critical pair verdicts.
// ---------------------------------------------------------------------------

enum class CriticalPairStatus { Yes, No, NoUpToBound, Unknown };

struct CriticalPairResult {
    CriticalPairStatus status = CriticalPairStatus::Unknown;
    std::optional<GraphMorphism> witness; // injective K -> G
    Bounds bounds;
};

/// Jointly surjective matches plus an injective extension satisfying the
/// combined condition with both composites gluing.
inline CriticalPairResult is_critical_pair(const SymbolicTransformationPair& stp, Bounds bounds) {
    if (!stp.matches_jointly_surjective()) return {CriticalPairStatus::No, std::nullopt, bounds};
    ConditionPtr want = normalize(stp.combined_ac());

    auto admissible = [&](const GraphMorphism& m) {
        if (!m.is_mono()) return false;
        if (!satisfies(m, want)) return false;
        if (!gluing_ok(stp.pair.first.rule.span.to_left, compose(stp.pair.match_first(), m)))
            return false;
        if (!gluing_ok(stp.pair.second.rule.span.to_left, compose(stp.pair.match_second(), m)))
            return false;
        return true;
    };

    if (auto lits = flatten_to_positive_disjunction(want)) {
        for (const auto& lit : *lits)
            if (admissible(lit.anchor)) return {CriticalPairStatus::Yes, lit.anchor, bounds};
        // An injective extension satisfying a literal forces an injective
        // anchor, and gluing failures transfer along injective extensions.
        return {CriticalPairStatus::No, std::nullopt, bounds};
    }
    const TypedGraph& k = stp.overlap();
    for (const auto& g : enumerate_graph_universe(k.type_graph(), bounds))
        for (const auto& m : enumerate_morphisms(k, g, MorphismRestriction::Mono))
            if (admissible(m)) return {CriticalPairStatus::Yes, m, bounds};
    return {CriticalPairStatus::NoUpToBound, std::nullopt, bounds};
}

// ---------------------------------------------------------------------------
// Representative lookup: which initial conflict stands for a given conflict.
// ---------------------------------------------------------------------------

struct Representation {
    const InitialConflict* conflict = nullptr;
    GraphMorphism extension; // K -> G embedding the initial conflict
};

/// For a use-delete/delete-use conflict the representing initial conflict is
/// a plain one embedded into it; for a pure condition conflict it is the
/// coproduct candidate with the mediating morphism. The chosen extension
/// must satisfy the combined condition; failure to find one is reported as
/// absence (a completeness counterexample).
inline std::optional<Representation> find_representing_initial_conflict(
    const TransformationPair& tp, const InitialConflictSet& ics) {
    IndependenceReport rep = check_parallel_independence(tp);
    if (rep.parallel_independent)
        throw std::invalid_argument("representation lookup on a parallel independent pair");

    bool structural =
        rep.has(ConflictClass::UseDelete) || rep.has(ConflictClass::DeleteUse);
    for (const auto& ic : ics.conflicts) {
        if (structural && ic.kind != InitialConflictKind::UseDeleteDeleteUse) continue;
        if (!structural && ic.kind != InitialConflictKind::ACInitial) continue;
        for (const auto& m :
             detail::match_compatible_morphisms(ic.stp.pair, tp, MorphismRestriction::All)) {
            EmbedResult r = embed_transformation_pair(ic.stp.pair, m);
            if (!std::holds_alternative<PairEmbedding>(r)) continue;
            if (!satisfies(m, normalize(ic.stp.combined_ac()))) continue;
            return Representation{&ic, m};
        }
    }
    return std::nullopt;
}

} // namespace dpoca
