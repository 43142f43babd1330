// Rules with left application conditions, match search, and DPO steps.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dpoca/condition.hpp"
#include "dpoca/condition_transform.hpp"

namespace dpoca {

struct Rule {
    std::string name;
    RuleSpan span;       // L <- I -> R
    ConditionPtr ac_left; // over L

    Rule(std::string n, RuleSpan s, ConditionPtr ac)
        : name(std::move(n)), span(std::move(s)), ac_left(std::move(ac)) {
        if (!ac_left) ac_left = NestedCondition::make_true(span.left());
        if (ac_left->context() != span.left())
            throw std::invalid_argument("rule '" + name + "': AC context is not the left-hand side");
    }

    static Rule plain(std::string n, RuleSpan s) {
        ConditionPtr t = NestedCondition::make_true(s.left());
        return Rule(std::move(n), std::move(s), std::move(t));
    }

    const TypedGraph& left() const { return span.left(); }
    const TypedGraph& interface() const { return span.interface(); }
    const TypedGraph& right() const { return span.right(); }

    bool is_plain() const { return normalize(ac_left)->is_true(); }

    /// Same span, application condition replaced by true.
    Rule stripped() const { return plain(name, span); }
};

/// One DPO step. Both squares are pushouts by construction; ac_respected
/// records whether the match satisfied the rule's condition.
struct DirectTransformation {
    Rule rule;
    GraphMorphism match;           // L -> G
    GraphMorphism comatch;         // R -> H
    GraphMorphism into_source;     // D -> G (mono)
    GraphMorphism into_result;     // D -> H (mono)
    GraphMorphism interface_embed; // I -> D
    bool ac_respected = false;

    const TypedGraph& source() const { return match.cod; }
    const TypedGraph& result() const { return comatch.cod; }
    const TypedGraph& context() const { return into_source.dom; }

    /// The derived span G <- D -> H.
    RuleSpan derived_span() const { return RuleSpan(into_source, into_result); }
};

struct ApplyError {
    enum class Kind { Gluing, AcViolated };
    Kind kind = Kind::Gluing;
    std::optional<GluingViolation> gluing;
};

using ApplyResult = std::variant<DirectTransformation, ApplyError>;

/// Run the step at match m. With disregard_ac the condition is still
/// evaluated (recorded in ac_respected) but not enforced.
inline ApplyResult apply(const Rule& rule, const GraphMorphism& m, bool disregard_ac = false) {
    if (m.dom != rule.left()) throw std::invalid_argument("apply: match domain is not the rule LHS");
    bool ac_ok = satisfies(m, rule.ac_left);
    if (!disregard_ac && !ac_ok) return ApplyError{ApplyError::Kind::AcViolated, std::nullopt};
    auto poc = pushout_complement(rule.span.to_left, m);
    if (std::holds_alternative<GluingViolation>(poc))
        return ApplyError{ApplyError::Kind::Gluing, std::get<GluingViolation>(poc)};
    auto& pc = std::get<PushoutComplementResult>(poc);
    PushoutResult po = pushout(rule.span.to_right, pc.from_interface);
    DirectTransformation t{rule,
                           m,
                           po.from_left,      // R -> H
                           pc.to_host,        // D -> G
                           po.from_right,     // D -> H
                           pc.from_interface, // I -> D
                           ac_ok};
    return t;
}

/// Convenience overload: transfer a condition over the rule's right-hand
/// side to its left-hand side.
inline ConditionPtr left(const Rule& rule, const ConditionPtr& cond_right) {
    return left(rule.span, cond_right);
}

struct MatchInfo {
    GraphMorphism match;
    bool gluing_ok = false;
    bool ac_ok = false;
};

/// All matches of the rule into g, annotated with applicability. With
/// respect_ac only condition-satisfying matches are returned.
inline std::vector<MatchInfo> find_matches(const Rule& rule, const TypedGraph& g, bool respect_ac,
                                           MorphismRestriction restrict_to = MorphismRestriction::All) {
    std::vector<MatchInfo> out;
    for (const auto& m : enumerate_morphisms(rule.left(), g, restrict_to)) {
        MatchInfo info{m, gluing_ok(rule.span.to_left, m), satisfies(m, rule.ac_left)};
        if (respect_ac && !info.ac_ok) continue;
        out.push_back(std::move(info));
    }
    return out;
}

} // namespace dpoca
