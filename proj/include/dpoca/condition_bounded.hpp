// Bounded decision procedures for conditions. Satisfiability is decided
// exactly on the positive-disjunction fragment (each disjunct carries its
// own witness); everywhere else an exhaustive search over the bounded graph
// universe yields either a witness or an honest Unknown.
#pragma once

#include <optional>

#include "dpoca/condition_transform.hpp"
#include "dpoca/universe.hpp"

namespace dpoca {

enum class SatStatus { Yes, No, Unknown };

struct SatResult {
    SatStatus status = SatStatus::Unknown;
    std::optional<GraphMorphism> witness;
};

inline SatResult bounded_satisfiable(const ConditionPtr& cond, MorphismRestriction restrict_to,
                                     Bounds bounds) {
    // Fragment: \/_i exists(a_i, nacs). Any model shrinks onto a literal
    // anchor, so trying the anchors decides satisfiability outright.
    if (auto lits = flatten_to_positive_disjunction(cond)) {
        for (const auto& lit : *lits) {
            if (restrict_to == MorphismRestriction::Mono && !lit.anchor.is_mono()) continue;
            if (satisfies(lit.anchor, cond)) return {SatStatus::Yes, lit.anchor};
        }
        return {SatStatus::No, std::nullopt};
    }
    for (const auto& g : enumerate_graph_universe(cond->context().type_graph(), bounds))
        for (const auto& p : enumerate_morphisms(cond->context(), g, restrict_to))
            if (satisfies(p, cond)) return {SatStatus::Yes, p};
    return {SatStatus::Unknown, std::nullopt};
}

enum class EquivStatus { Equivalent, Inequivalent, Unknown };

struct EquivResult {
    EquivStatus status = EquivStatus::Unknown;
    std::optional<GraphMorphism> counterexample;
};

/// Compares satisfaction of the two conditions by every morphism out of the
/// shared context into every graph within bounds. Equivalent is a bounded
/// claim; Inequivalent is definitive.
inline EquivResult bounded_equivalent(const ConditionPtr& c1, const ConditionPtr& c2,
                                      Bounds bounds) {
    if (c1->context() != c2->context())
        throw std::invalid_argument("bounded equivalence requires a shared context");
    for (const auto& g : enumerate_graph_universe(c1->context().type_graph(), bounds))
        for (const auto& p : enumerate_morphisms(c1->context(), g))
            if (satisfies(p, c1) != satisfies(p, c2)) return {EquivStatus::Inequivalent, p};
    return {EquivStatus::Equivalent, std::nullopt};
}

} // namespace dpoca
