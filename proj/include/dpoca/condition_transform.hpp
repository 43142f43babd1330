// Translating conditions along morphisms (shift) and across rules (left).
// Both preserve satisfaction exactly:
//   n o b |= c            <=>  n |= shift(b, c)
//   m |= left(span, c_R)  <=>  m* |= c_R   for every step with match m.
#pragma once

#include <variant>
#include <vector>

#include "dpoca/category.hpp"
#include "dpoca/condition.hpp"

namespace dpoca {

/// Plain rule span L <- I -> R with injective legs.
struct RuleSpan {
    GraphMorphism to_left;  // I -> L
    GraphMorphism to_right; // I -> R

    RuleSpan(GraphMorphism tl, GraphMorphism tr)
        : to_left(std::move(tl)), to_right(std::move(tr)) {
        if (to_left.dom != to_right.dom)
            throw std::invalid_argument("rule span legs disagree on the interface");
        if (!to_left.is_mono() || !to_right.is_mono())
            throw std::invalid_argument("rule span legs must be injective");
    }

    const TypedGraph& left() const { return to_left.cod; }
    const TypedGraph& interface() const { return to_left.dom; }
    const TypedGraph& right() const { return to_right.cod; }

    RuleSpan inverted() const { return RuleSpan(to_right, to_left); }
};

/// Condition over cod(b) equivalent to cond pre-composed with b. For each
/// existential the whole family of jointly surjective commuting completions
/// (injective on the condition side) becomes a disjunction.
inline ConditionPtr shift(const GraphMorphism& b, const ConditionPtr& cond) {
    if (cond->context() != b.dom)
        throw std::invalid_argument("shift: condition context differs from morphism domain");
    switch (cond->kind()) {
        case NestedCondition::Kind::True:
            return NestedCondition::make_true(b.cod);
        case NestedCondition::Kind::Not:
            return NestedCondition::make_not(shift(b, cond->child()));
        case NestedCondition::Kind::And: {
            std::vector<ConditionPtr> parts;
            parts.reserve(cond->children().size());
            for (const auto& ch : cond->children()) parts.push_back(shift(b, ch));
            return NestedCondition::make_and(b.cod, std::move(parts));
        }
        case NestedCondition::Kind::Exists: {
            std::vector<ConditionPtr> disjuncts;
            for (const auto& pair : enumerate_shift_pairs(b, cond->anchor())) {
                ConditionPtr d =
                    NestedCondition::make_exists(pair.first, shift(pair.second, cond->child()));
                bool dup = false;
                for (const auto& seen : disjuncts)
                    if (conditions_iso_equal(d, seen)) dup = true;
                if (!dup) disjuncts.push_back(std::move(d));
            }
            if (disjuncts.empty()) return NestedCondition::make_false(b.cod);
            if (disjuncts.size() == 1) return disjuncts[0];
            return NestedCondition::make_or(b.cod, std::move(disjuncts));
        }
    }
    return nullptr;
}

namespace detail {

/// Exact positive form of a bare negative conjunction over ctx:
///   N  ==  \/_{surjections e out of ctx} exists(e, shift(e, N))
/// (factor any satisfier epi-mono; the epi part is one of the quotients, the
/// mono part witnesses the literal). Quotients whose shifted remainder
/// collapses are unsatisfiable and dropped.
inline std::vector<PositiveLiteral> quotient_closure_literals(
    const TypedGraph& ctx, const std::vector<GraphMorphism>& nacs) {
    ConditionPtr ncond = [&] {
        std::vector<ConditionPtr> parts;
        for (const auto& n : nacs)
            parts.push_back(NestedCondition::make_not(NestedCondition::make_exists(n)));
        return NestedCondition::make_and(ctx, std::move(parts));
    }();
    std::vector<PositiveLiteral> out;
    for (const auto& q : enumerate_quotients(ctx)) {
        ConditionPtr shifted = normalize(shift(q.projection, ncond));
        auto shape = parse_nac_shape(shifted);
        if (!shape) throw std::logic_error("shift left the negative-conjunction fragment");
        auto rem = NacConjunction::make(q.object, std::move(*shape));
        if (!rem) continue;
        out.push_back({q.projection, std::move(*rem)});
    }
    return out;
}

} // namespace detail

/// Bring a condition into the positive-disjunction fragment when the
/// constructive route applies. The result is satisfaction-equivalent to the
/// input for arbitrary morphisms:
///  - syntactic \/ exists(a_i, nacs) is taken as-is;
///  - a conjunction of negative factors with at most one positive-disjunction
///    factor distributes the negatives into every disjunct
///    (exists(a, r) /\ N == exists(a, r /\ shift(a, N)));
///  - a bare negative conjunction (including true) expands into its quotient
///    closure, one literal per surjection out of the context.
/// Literals whose remainder collapses (isomorphic NAC) are unsatisfiable and
/// dropped; duplicates are identified up to isomorphism. Nothing when the
/// condition does not have one of these shapes.
inline std::optional<std::vector<PositiveLiteral>> flatten_to_positive_disjunction(
    const ConditionPtr& cond) {
    ConditionPtr c = normalize(cond);
    std::optional<std::vector<PositiveLiteral>> direct = as_positive_disjunction(c);
    if (!direct) {
        std::vector<GraphMorphism> nacs;
        std::optional<std::vector<PositiveLiteral>> disjunction;
        if (auto shape = detail::parse_nac_shape(c)) {
            nacs = std::move(*shape);
        } else if (c->kind() == NestedCondition::Kind::And) {
            for (const auto& part : c->children()) {
                if (auto part_shape = detail::parse_nac_shape(part)) {
                    for (auto& n : *part_shape) nacs.push_back(std::move(n));
                    continue;
                }
                if (auto lits = as_positive_disjunction(part); lits && !disjunction) {
                    disjunction = std::move(lits);
                    continue;
                }
                return std::nullopt;
            }
        } else {
            return std::nullopt;
        }
        if (!disjunction) {
            direct = detail::quotient_closure_literals(c->context(), nacs);
        } else {
            ConditionPtr nac_cond = [&] {
                std::vector<ConditionPtr> parts;
                for (const auto& n : nacs)
                    parts.push_back(NestedCondition::make_not(NestedCondition::make_exists(n)));
                return NestedCondition::make_and(c->context(), std::move(parts));
            }();
            std::vector<PositiveLiteral> out;
            for (const auto& lit : *disjunction) {
                ConditionPtr shifted = normalize(shift(lit.anchor, nac_cond));
                auto shape = detail::parse_nac_shape(shifted);
                if (!shape) return std::nullopt; // shift left the fragment; give up
                std::vector<GraphMorphism> joined = lit.remainder.nacs;
                for (auto& n : *shape) joined.push_back(std::move(n));
                auto rem = NacConjunction::make(lit.anchor.cod, std::move(joined));
                if (!rem) continue; // literal unsatisfiable
                out.push_back({lit.anchor, std::move(*rem)});
            }
            direct = std::move(out);
        }
    }
    // dedup literals up to iso of the codomain commuting with the anchor
    std::vector<PositiveLiteral> dedup;
    for (auto& lit : *direct) {
        bool dup = false;
        for (const auto& seen : dedup)
            if (conditions_iso_equal(lit.as_condition(), seen.as_condition())) dup = true;
        if (!dup) dedup.push_back(std::move(lit));
    }
    return dedup;
}

/// Condition over the left side of the span equivalent to cond_right over
/// the right side, under any application of the span. An existential whose
/// anchor does not admit the inverse step collapses to false.
inline ConditionPtr left(const RuleSpan& span, const ConditionPtr& cond_right) {
    if (cond_right->context() != span.right())
        throw std::invalid_argument("left: condition context differs from rule right side");
    switch (cond_right->kind()) {
        case NestedCondition::Kind::True:
            return NestedCondition::make_true(span.left());
        case NestedCondition::Kind::Not:
            return NestedCondition::make_not(left(span, cond_right->child()));
        case NestedCondition::Kind::And: {
            std::vector<ConditionPtr> parts;
            parts.reserve(cond_right->children().size());
            for (const auto& ch : cond_right->children()) parts.push_back(left(span, ch));
            return NestedCondition::make_and(span.left(), std::move(parts));
        }
        case NestedCondition::Kind::Exists: {
            // Apply the inverted span at the anchor: delete what the rule
            // creates, then rebuild the left-hand context.
            auto poc = pushout_complement(span.to_right, cond_right->anchor());
            if (std::holds_alternative<GluingViolation>(poc))
                return NestedCondition::make_false(span.left());
            const auto& pc = std::get<PushoutComplementResult>(poc);
            PushoutResult po = pushout(span.to_left, pc.from_interface);
            // po.from_left : L -> C' is the transformed anchor; the derived
            // span C' <- D' -> C carries the recursion.
            RuleSpan derived(po.from_right, pc.to_host);
            return NestedCondition::make_exists(po.from_left, left(derived, cond_right->child()));
        }
    }
    return nullptr;
}

} // namespace dpoca
