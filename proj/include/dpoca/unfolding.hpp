// Regularity of initial conflicts and their disjunctive unfolding into
// concrete conflicts, plus the classical conflict-pair characterization for
// rules whose conditions are plain negative conjunctions.
#pragma once

#include <optional>
#include <vector>

#include "dpoca/conflicts.hpp"

namespace dpoca {

/// One positive way of completing the overlap into a concrete conflict.
struct UnfoldingLiteral {
    GraphMorphism anchor;    // K -> C_i
    NacConjunction remainder; // over C_i, all members non-iso
    bool gluing_ok = false;  // both composite matches admit the steps

    ConditionPtr as_condition() const {
        return NestedCondition::make_exists(anchor, remainder.as_condition());
    }
};

struct DisjunctiveForm {
    TypedGraph context; // K
    std::vector<UnfoldingLiteral> literals;

    ConditionPtr as_condition() const {
        std::vector<ConditionPtr> ds;
        ds.reserve(literals.size());
        for (const auto& lit : literals) ds.push_back(lit.as_condition());
        return NestedCondition::make_or(context, std::move(ds));
    }
};

struct RegularityResult {
    std::optional<DisjunctiveForm> form; // set iff established
    bool verified = false;               // bounded equivalence against the combined condition
    Bounds verify_bounds;
};

/// Establish the positive-disjunction form of the combined condition.
/// For rules whose conditions are negative conjunctions this is constructive
/// (distribute the negatives over the positive disjuncts); for other shapes
/// the normalizer either happens to reach the form syntactically or gives up.
inline RegularityResult check_regular(const InitialConflict& ic, Bounds bounds) {
    ConditionPtr combined = normalize(ic.stp.combined_ac());
    auto pd = flatten_to_positive_disjunction(combined);
    if (!pd || pd->empty()) return {std::nullopt, false, bounds};

    const TypedGraph& k = ic.stp.overlap();
    DisjunctiveForm form{k, {}};
    for (auto& lit : *pd) {
        bool glue =
            gluing_ok(ic.stp.pair.first.rule.span.to_left,
                      compose(ic.stp.pair.match_first(), lit.anchor)) &&
            gluing_ok(ic.stp.pair.second.rule.span.to_left,
                      compose(ic.stp.pair.match_second(), lit.anchor));
        form.literals.push_back({std::move(lit.anchor), std::move(lit.remainder), glue});
    }
    bool verified =
        bounded_equivalent(form.as_condition(), combined, bounds).status == EquivStatus::Equivalent;
    if (!verified) return {std::nullopt, false, bounds};
    return {std::move(form), true, bounds};
}

/// The concrete conflicts named by the literals: one condition-respecting
/// pair per gluing-admissible literal, duplicates merged up to isomorphism.
/// Every produced pair must come out parallel dependent; a literal whose
/// pair is not would contradict the form and trips a logic error.
inline std::vector<TransformationPair> disjunctive_unfolding(const InitialConflict& ic,
                                                             const DisjunctiveForm& form) {
    std::vector<TransformationPair> out;
    for (const auto& lit : form.literals) {
        if (!lit.gluing_ok) continue;
        auto u = unfold_at(ic.stp, lit.anchor);
        if (!u) throw std::logic_error("gluing-admissible literal failed to unfold");
        if (!u->pair.ac_respecting())
            throw std::logic_error("unfolded pair violates a rule condition");
        if (u->report.parallel_independent)
            throw std::logic_error("unfolded pair is parallel independent");
        bool dup = false;
        for (const auto& seen : out)
            if (pairs_isomorphic(seen, u->pair)) dup = true;
        if (!dup) out.push_back(std::move(u->pair));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Classical conflict-pair shape for negative-conjunction rules: either the
// matches overlap jointly surjectively on a deletion, or one step produces a
// forbidden pattern covering the result together with the comatch.
// ---------------------------------------------------------------------------

enum class NacCriticalPairCase { None, UseDelete, ForbidProduce, DeleteUse, ProduceForbid };

struct NacCriticalPairVerdict {
    bool holds = false;
    NacCriticalPairCase which = NacCriticalPairCase::None;
};

inline std::string to_string(NacCriticalPairCase c) {
    switch (c) {
        case NacCriticalPairCase::None: return "none";
        case NacCriticalPairCase::UseDelete: return "use-delete";
        case NacCriticalPairCase::ForbidProduce: return "forbid-produce";
        case NacCriticalPairCase::DeleteUse: return "delete-use";
        case NacCriticalPairCase::ProduceForbid: return "produce-forbid";
    }
    return "?";
}

namespace detail {

inline bool jointly_surjective(const GraphMorphism& f, const GraphMorphism& g) {
    std::vector<char> n_hit(static_cast<size_t>(f.cod.node_count()), 0);
    std::vector<char> e_hit(static_cast<size_t>(f.cod.edge_count()), 0);
    for (NodeId n : f.node_map) n_hit[static_cast<size_t>(n)] = 1;
    for (NodeId n : g.node_map) n_hit[static_cast<size_t>(n)] = 1;
    for (EdgeId e : f.edge_map) e_hit[static_cast<size_t>(e)] = 1;
    for (EdgeId e : g.edge_map) e_hit[static_cast<size_t>(e)] = 1;
    return std::count(n_hit.begin(), n_hit.end(), 0) == 0 &&
           std::count(e_hit.begin(), e_hit.end(), 0) == 0;
}

/// Case pair for one orientation: (a) no residual and jointly surjective
/// matches; (b) residual exists but some forbidden pattern of `first` covers
/// the other step's result jointly with its comatch.
inline NacCriticalPairCase nac_case_for_side(const TransformationPair& tp,
                                             const NacConjunction& first_nacs, bool first_side) {
    const DirectTransformation& other = first_side ? tp.second : tp.first;
    const GraphMorphism& match = first_side ? tp.match_first() : tp.match_second();
    auto residual = detail::solve_residual(match, other.into_source);
    if (!residual) {
        if (jointly_surjective(tp.match_first(), tp.match_second()))
            return first_side ? NacCriticalPairCase::UseDelete : NacCriticalPairCase::DeleteUse;
        return NacCriticalPairCase::None;
    }
    GraphMorphism extended = compose(*residual, other.into_result); // L -> P_other
    for (const auto& nac : first_nacs.nacs) {
        for (const auto& q :
             enumerate_commuting_extensions(nac, extended, MorphismRestriction::Mono)) {
            if (jointly_surjective(q, other.comatch))
                return first_side ? NacCriticalPairCase::ForbidProduce
                                  : NacCriticalPairCase::ProduceForbid;
        }
    }
    return NacCriticalPairCase::None;
}

} // namespace detail

/// Decide the classical conflict-pair characterization for a conflicting,
/// condition-respecting pair of steps of negative-conjunction rules.
inline NacCriticalPairVerdict nac_critical_pair_predicate(const TransformationPair& tp) {
    auto nacs1 = as_nac_conjunction(tp.first.rule.ac_left);
    auto nacs2 = as_nac_conjunction(tp.second.rule.ac_left);
    if (!nacs1 || !nacs2)
        throw std::invalid_argument(
            "classical conflict-pair check requires negative-conjunction rule conditions");

    NacCriticalPairCase c = detail::nac_case_for_side(tp, *nacs1, true);
    if (c == NacCriticalPairCase::None) {
        // 1b considered before 2a/2b in the fixed evaluation order
        c = detail::nac_case_for_side(tp, *nacs2, false);
    }
    return {c != NacCriticalPairCase::None, c};
}

} // namespace dpoca
