// Symbolic transformation pairs: a condition-disregarding two-step fan
// over K together with two conditions on K. The extension condition holds
// for exactly those embeddings whose translated matches satisfy both rule
// conditions; the conflict condition holds for exactly those whose lower
// row is parallel dependent.
#pragma once

#include <optional>

#include "dpoca/transform_pair.hpp"

namespace dpoca {

struct SymbolicTransformationPair {
    TransformationPair pair;   // over K, condition-disregarding
    ConditionPtr extension_ac; // ac over K: both translated matches satisfy their rule ACs
    ConditionPtr conflict_ac;  // ac over K: the embedded pair is parallel dependent
    // The two halves of the no-conflict condition (false when the residual
    // morphism is missing): "first rule still applicable and satisfied after
    // the second step" and vice versa.
    ConditionPtr first_survives;
    ConditionPtr second_survives;

    const TypedGraph& overlap() const { return pair.source(); }
    ConditionPtr combined_ac() const { return conjoin(extension_ac, conflict_ac); }

    bool matches_jointly_surjective() const {
        const TypedGraph& k = overlap();
        std::vector<char> n_hit(static_cast<size_t>(k.node_count()), 0);
        std::vector<char> e_hit(static_cast<size_t>(k.edge_count()), 0);
        for (NodeId n : pair.match_first().node_map) n_hit[static_cast<size_t>(n)] = 1;
        for (NodeId n : pair.match_second().node_map) n_hit[static_cast<size_t>(n)] = 1;
        for (EdgeId e : pair.match_first().edge_map) e_hit[static_cast<size_t>(e)] = 1;
        for (EdgeId e : pair.match_second().edge_map) e_hit[static_cast<size_t>(e)] = 1;
        return std::count(n_hit.begin(), n_hit.end(), 0) == 0 &&
               std::count(e_hit.begin(), e_hit.end(), 0) == 0;
    }
};

/// Assemble the two conditions from a condition-disregarding pair. Stored in
/// constructed form; callers normalize for display or equivalence checks.
inline SymbolicTransformationPair build_symbolic_pair(const TransformationPair& tp) {
    const TypedGraph& k = tp.source();
    ConditionPtr ext = conjoin(shift(tp.match_first(), tp.first.rule.ac_left),
                               shift(tp.match_second(), tp.second.rule.ac_left));

    IndependenceReport rep = check_parallel_independence(tp, /*with_acs=*/false);

    ConditionPtr first_survives;
    if (rep.d12) {
        // Residual match of the first rule after the second step, pulled back
        // through the derived span of the second step.
        GraphMorphism extended = compose(*rep.d12, tp.second.into_result); // L1 -> P2
        first_survives = left(tp.second.derived_span(), shift(extended, tp.first.rule.ac_left));
    } else {
        first_survives = NestedCondition::make_false(k);
    }
    ConditionPtr second_survives;
    if (rep.d21) {
        GraphMorphism extended = compose(*rep.d21, tp.first.into_result); // L2 -> P1
        second_survives = left(tp.first.derived_span(), shift(extended, tp.second.rule.ac_left));
    } else {
        second_survives = NestedCondition::make_false(k);
    }
    ConditionPtr conflict =
        NestedCondition::make_not(conjoin(first_survives, second_survives));
    return SymbolicTransformationPair{tp, std::move(ext), std::move(conflict),
                                      std::move(first_survives), std::move(second_survives)};
}

} // namespace dpoca
