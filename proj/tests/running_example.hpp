// The two-rule fixture used across the suite: one rule grows an edge to a
// fresh node, the other adds an isolated node unless two other nodes are
// already present (a three-node NAC).
#pragma once

#include "dpoca/rule.hpp"
#include "test_helpers.hpp"

namespace dpoca::testing {

/// L = I = single node; R = two nodes with an edge from the preserved one.
inline Rule make_edge_grower() {
    TypedGraph one = nodes(1);
    TypedGraph r = graph(2, {{0, 1}});
    RuleSpan span(node_map(one, one, {0}), GraphMorphism(one, r, {0}, {}));
    return Rule::plain("growEdge", span);
}

/// L = I = single node; R = two nodes; NAC forbids two further nodes.
inline Rule make_node_adder_with_nac() {
    TypedGraph one = nodes(1);
    TypedGraph r = nodes(2);
    RuleSpan span(node_map(one, one, {0}), node_map(one, r, {0}));
    GraphMorphism nac = node_map(one, nodes(3), {0});
    ConditionPtr ac = NestedCondition::make_not(NestedCondition::make_exists(nac));
    return Rule("addNode", span, ac);
}

/// The two conditions over the 2-node overlap, as stated for the example:
/// extension: no third node when kept apart, no two extra when merged.
inline ConditionPtr example_extension_ac(const TypedGraph& k2) {
    ConditionPtr no_third = NestedCondition::make_not(
        NestedCondition::make_exists(node_map(k2, nodes(3), {0, 1})));
    ConditionPtr no_two_extra_merged = NestedCondition::make_not(
        NestedCondition::make_exists(node_map(k2, nodes(3), {0, 0})));
    return NestedCondition::make_and(k2, {no_third, no_two_extra_merged});
}

/// conflict: merged with one extra node, or kept apart.
inline ConditionPtr example_conflict_ac(const TypedGraph& k2) {
    ConditionPtr merged_plus_one =
        NestedCondition::make_exists(node_map(k2, nodes(2), {0, 0}));
    ConditionPtr kept_apart = NestedCondition::make_exists(node_map(k2, nodes(2), {0, 1}));
    return NestedCondition::make_or(k2, {merged_plus_one, kept_apart});
}

} // namespace dpoca::testing
