// Nested application conditions over a context graph: true, existential
// extension along a morphism, negation, and finite conjunction. Satisfaction
// quantifies inner witnesses over injective morphisms; the outer morphism
// may be arbitrary.
#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dpoca/morphism.hpp"

namespace dpoca {

class NestedCondition;
using ConditionPtr = std::shared_ptr<const NestedCondition>;

class NestedCondition {
public:
    enum class Kind { True, Exists, Not, And };

    static ConditionPtr make_true(TypedGraph context) {
        return ConditionPtr(new NestedCondition(Kind::True, std::move(context)));
    }
    /// not(true); the canonical unsatisfiable condition.
    static ConditionPtr make_false(TypedGraph context) {
        return make_not(make_true(std::move(context)));
    }
    static ConditionPtr make_exists(GraphMorphism anchor, ConditionPtr child) {
        if (!child) throw std::invalid_argument("exists without child condition");
        if (child->context() != anchor.cod)
            throw std::invalid_argument("exists child context must equal anchor codomain");
        auto c = new NestedCondition(Kind::Exists, anchor.dom);
        c->anchor_ = std::move(anchor);
        c->children_ = {std::move(child)};
        return ConditionPtr(c);
    }
    static ConditionPtr make_exists(GraphMorphism anchor) {
        ConditionPtr t = make_true(anchor.cod);
        return make_exists(std::move(anchor), std::move(t));
    }
    static ConditionPtr make_not(ConditionPtr child) {
        if (!child) throw std::invalid_argument("negation without child");
        auto c = new NestedCondition(Kind::Not, child->context());
        c->children_ = {std::move(child)};
        return ConditionPtr(c);
    }
    static ConditionPtr make_and(TypedGraph context, std::vector<ConditionPtr> children) {
        for (const auto& ch : children) {
            if (!ch) throw std::invalid_argument("conjunction with null child");
            if (ch->context() != context)
                throw std::invalid_argument("conjunction children must share the context");
        }
        auto c = new NestedCondition(Kind::And, std::move(context));
        c->children_ = std::move(children);
        return ConditionPtr(c);
    }
    /// Disjunction, encoded as not(and(not(...))).
    static ConditionPtr make_or(TypedGraph context, std::vector<ConditionPtr> children) {
        std::vector<ConditionPtr> negs;
        negs.reserve(children.size());
        for (auto& ch : children) negs.push_back(make_not(std::move(ch)));
        return make_not(make_and(std::move(context), std::move(negs)));
    }
    /// forall(a, c) := not(exists(a, not(c))).
    static ConditionPtr make_forall(GraphMorphism anchor, ConditionPtr child) {
        return make_not(make_exists(std::move(anchor), make_not(std::move(child))));
    }

    Kind kind() const { return kind_; }
    const TypedGraph& context() const { return context_; }
    const GraphMorphism& anchor() const { return anchor_; }
    const ConditionPtr& child() const { return children_.at(0); }
    const std::vector<ConditionPtr>& children() const { return children_; }

    bool is_true() const { return kind_ == Kind::True; }
    bool is_false() const { return kind_ == Kind::Not && children_[0]->is_true(); }

    size_t depth() const {
        size_t d = 0;
        for (const auto& ch : children_) d = std::max(d, ch->depth());
        return kind_ == Kind::Exists ? d + 1 : d;
    }

private:
    NestedCondition(Kind k, TypedGraph ctx) : kind_(k), context_(std::move(ctx)) {}

    Kind kind_;
    TypedGraph context_;
    GraphMorphism anchor_;              // Exists only
    std::vector<ConditionPtr> children_; // Exists/Not: one; And: any number
};

/// p |= cond. Witnesses for existentials range over injective morphisms;
/// p itself may be any morphism out of the condition's context.
inline bool satisfies(const GraphMorphism& p, const ConditionPtr& cond) {
    if (cond->context() != p.dom)
        throw std::invalid_argument("satisfaction: condition context differs from morphism domain");
    switch (cond->kind()) {
        case NestedCondition::Kind::True:
            return true;
        case NestedCondition::Kind::Not:
            return !satisfies(p, cond->child());
        case NestedCondition::Kind::And:
            for (const auto& ch : cond->children())
                if (!satisfies(p, ch)) return false;
            return true;
        case NestedCondition::Kind::Exists: {
            for (const auto& q :
                 enumerate_commuting_extensions(cond->anchor(), p, MorphismRestriction::Mono))
                if (satisfies(q, cond->child())) return true;
            return false;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Structural equality up to isomorphism of the codomain graphs: the dedup
// relation for disjuncts and conjuncts.
// ---------------------------------------------------------------------------

inline bool conditions_iso_equal(const ConditionPtr& a, const ConditionPtr& b);

namespace detail {

/// Compare children after transporting a's child context along iso phi.
inline bool iso_equal_under(const ConditionPtr& a, const ConditionPtr& b,
                            const GraphMorphism& phi);

inline bool iso_equal_core(const ConditionPtr& a, const ConditionPtr& b,
                           const std::optional<GraphMorphism>& context_iso) {
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case NestedCondition::Kind::True:
            return true;
        case NestedCondition::Kind::Not:
            return context_iso ? iso_equal_under(a->child(), b->child(), *context_iso)
                               : conditions_iso_equal(a->child(), b->child());
        case NestedCondition::Kind::And: {
            if (a->children().size() != b->children().size()) return false;
            // multiset match, greedy with backtracking
            std::vector<char> used(b->children().size(), 0);
            std::function<bool(size_t)> rec = [&](size_t i) -> bool {
                if (i == a->children().size()) return true;
                for (size_t j = 0; j < b->children().size(); ++j) {
                    if (used[j]) continue;
                    bool eq = context_iso
                                  ? iso_equal_under(a->children()[i], b->children()[j], *context_iso)
                                  : conditions_iso_equal(a->children()[i], b->children()[j]);
                    if (!eq) continue;
                    used[j] = 1;
                    if (rec(i + 1)) return true;
                    used[j] = 0;
                }
                return false;
            };
            return rec(0);
        }
        case NestedCondition::Kind::Exists: {
            // need iso psi : cod(anchor_a) -> cod(anchor_b) with
            // psi o anchor_a (o context_iso^-1 implicitly handled by caller)
            const GraphMorphism& aa = a->anchor();
            const GraphMorphism& ab = b->anchor();
            std::vector<GraphMorphism> candidates;
            if (context_iso) {
                // anchor_a : Pa -> Ca; context_iso : Pa -> Pb (iso). We need
                // psi : Ca -> Cb with psi o anchor_a = anchor_b o context_iso.
                GraphMorphism want = compose(*context_iso, ab); // Pa -> Cb
                for (const auto& psi : enumerate_commuting_extensions(aa, want, MorphismRestriction::Mono))
                    if (psi.is_epi()) candidates.push_back(psi);
            } else {
                if (aa.dom != ab.dom) return false;
                for (const auto& psi : enumerate_commuting_extensions(aa, ab, MorphismRestriction::Mono))
                    if (psi.is_epi()) candidates.push_back(psi);
            }
            for (const auto& psi : candidates)
                if (iso_equal_under(a->child(), b->child(), psi)) return true;
            return false;
        }
    }
    return false;
}

inline bool iso_equal_under(const ConditionPtr& a, const ConditionPtr& b,
                            const GraphMorphism& phi) {
    if (a->context() != phi.dom || b->context() != phi.cod) return false;
    return iso_equal_core(a, b, phi);
}

} // namespace detail

/// Syntactic equality up to isomorphism of all embedded graphs (contexts
/// handled position-wise; anchors must correspond under the isos).
inline bool conditions_iso_equal(const ConditionPtr& a, const ConditionPtr& b) {
    if (a->context() != b->context()) {
        auto iso = find_isomorphism(a->context(), b->context());
        if (!iso) return false;
        return detail::iso_equal_under(a, b, *iso);
    }
    return detail::iso_equal_core(a, b, std::nullopt);
}

// ---------------------------------------------------------------------------
// Normalization: flatten conjunctions, fuse double negation, prune
// true/false, drop duplicate conjuncts. Logically equivalence-preserving.
// ---------------------------------------------------------------------------

inline ConditionPtr normalize(const ConditionPtr& cond) {
    switch (cond->kind()) {
        case NestedCondition::Kind::True:
            return cond;
        case NestedCondition::Kind::Not: {
            ConditionPtr c = normalize(cond->child());
            if (c->kind() == NestedCondition::Kind::Not) return c->child();
            return NestedCondition::make_not(c);
        }
        case NestedCondition::Kind::Exists: {
            ConditionPtr c = normalize(cond->child());
            if (c->is_false()) return NestedCondition::make_false(cond->context());
            return NestedCondition::make_exists(cond->anchor(), c);
        }
        case NestedCondition::Kind::And: {
            std::vector<ConditionPtr> flat;
            for (const auto& ch : cond->children()) {
                ConditionPtr c = normalize(ch);
                if (c->is_true()) continue;
                if (c->is_false()) return NestedCondition::make_false(cond->context());
                if (c->kind() == NestedCondition::Kind::And) {
                    for (const auto& g : c->children()) flat.push_back(g);
                } else {
                    flat.push_back(c);
                }
            }
            std::vector<ConditionPtr> dedup;
            for (const auto& c : flat) {
                bool dup = false;
                for (const auto& d : dedup)
                    if (conditions_iso_equal(c, d)) dup = true;
                if (!dup) dedup.push_back(c);
            }
            if (dedup.empty()) return NestedCondition::make_true(cond->context());
            if (dedup.size() == 1) return dedup[0];
            return NestedCondition::make_and(cond->context(), std::move(dedup));
        }
    }
    return cond;
}

/// Conjunction helper over a shared context.
inline ConditionPtr conjoin(const ConditionPtr& a, const ConditionPtr& b) {
    if (a->context() != b->context()) throw std::invalid_argument("conjoin: context mismatch");
    return NestedCondition::make_and(a->context(), {a, b});
}

// ---------------------------------------------------------------------------
// Negative-conjunction fragment: /\_j not exists(n_j). An isomorphic n_j
// would make the conjunction unsatisfiable for injective satisfiers, so
// construction rejects it (callers treat that case as false).
// ---------------------------------------------------------------------------

struct NacConjunction {
    TypedGraph context;
    std::vector<GraphMorphism> nacs; // each context -> N_j, non-iso

    /// Nothing if some morphism is an iso (the denoted condition would be
    /// unsatisfiable by injective morphisms).
    static std::optional<NacConjunction> make(TypedGraph context,
                                              std::vector<GraphMorphism> nacs) {
        for (const auto& n : nacs) {
            if (n.dom != context)
                throw std::invalid_argument("NAC morphism domain differs from context");
            if (n.is_iso()) return std::nullopt;
        }
        return NacConjunction{std::move(context), std::move(nacs)};
    }

    ConditionPtr as_condition() const {
        std::vector<ConditionPtr> parts;
        parts.reserve(nacs.size());
        for (const auto& n : nacs)
            parts.push_back(NestedCondition::make_not(NestedCondition::make_exists(n)));
        if (parts.empty()) return NestedCondition::make_true(context);
        if (parts.size() == 1) return parts[0];
        return NestedCondition::make_and(context, std::move(parts));
    }
};

namespace detail {

/// Shape-only parse of /\_j not exists(n_j, true); the morphisms may still
/// include isomorphisms.
inline std::optional<std::vector<GraphMorphism>> parse_nac_shape(const ConditionPtr& cond) {
    ConditionPtr c = normalize(cond);
    std::vector<GraphMorphism> nacs;
    auto take = [&](const ConditionPtr& part) -> bool {
        if (part->kind() != NestedCondition::Kind::Not) return false;
        const ConditionPtr& inner = part->child();
        if (inner->kind() != NestedCondition::Kind::Exists) return false;
        if (!inner->child()->is_true()) return false;
        nacs.push_back(inner->anchor());
        return true;
    };
    if (c->is_true()) return nacs;
    if (take(c)) return nacs;
    if (c->kind() == NestedCondition::Kind::And) {
        for (const auto& part : c->children())
            if (!take(part)) return std::nullopt;
        return nacs;
    }
    return std::nullopt;
}

} // namespace detail

/// Recognize a (normalized) condition of shape /\_j not exists(n_j, true),
/// including the degenerate cases true (empty) and a single NAC.
/// A condition containing an isomorphic NAC is NOT in the fragment
/// (the type bans it); callers fall back to general handling.
inline std::optional<NacConjunction> as_nac_conjunction(const ConditionPtr& cond) {
    auto shape = detail::parse_nac_shape(cond);
    if (!shape) return std::nullopt;
    return NacConjunction::make(cond->context(), std::move(*shape));
}

/// One disjunct of the positive-disjunction fragment: exists(a, negative
/// remainder).
struct PositiveLiteral {
    GraphMorphism anchor; // context -> C_i
    NacConjunction remainder;

    ConditionPtr as_condition() const {
        return NestedCondition::make_exists(anchor, remainder.as_condition());
    }
};

/// Recognize a syntactic \/_i exists(a_i, nac-conjunction). Covers the
/// degenerate shapes: false (empty disjunction), a single literal, and a
/// bare exists. Literals whose remainder contains an isomorphic NAC are
/// unsatisfiable and dropped. Bare negative conjunctions are NOT rewritten
/// here (see flatten_to_positive_disjunction for the exact treatment).
inline std::optional<std::vector<PositiveLiteral>> as_positive_disjunction(
    const ConditionPtr& cond) {
    ConditionPtr c = normalize(cond);
    std::vector<PositiveLiteral> out;
    auto take = [&](const ConditionPtr& part) -> bool {
        if (part->kind() != NestedCondition::Kind::Exists) return false;
        auto shape = detail::parse_nac_shape(part->child());
        if (!shape) return false;
        auto rem = NacConjunction::make(part->child()->context(), std::move(*shape));
        if (rem) out.push_back({part->anchor(), std::move(*rem)});
        return true; // recognized either way; unsatisfiable literal dropped
    };
    if (c->is_false()) return out;
    if (take(c)) return out;
    // not(and(not l1, ..., not lk))
    if (c->kind() == NestedCondition::Kind::Not &&
        c->child()->kind() == NestedCondition::Kind::And) {
        for (const auto& part : c->child()->children()) {
            if (part->kind() != NestedCondition::Kind::Not) return std::nullopt;
            if (!take(part->child())) return std::nullopt;
        }
        return out;
    }
    // not(not l) with l a literal (single-disjunct encoding)
    if (c->kind() == NestedCondition::Kind::Not &&
        c->child()->kind() == NestedCondition::Kind::Not)
        if (take(c->child()->child())) return out;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pretty printing, for reports and diagnostics.
// ---------------------------------------------------------------------------

inline std::string describe_graph_brief(const TypedGraph& g) {
    std::string s = std::to_string(g.node_count()) + "n";
    if (g.edge_count() > 0) s += std::to_string(g.edge_count()) + "e";
    return s;
}

inline std::string describe_condition(const ConditionPtr& cond) {
    switch (cond->kind()) {
        case NestedCondition::Kind::True:
            return "true";
        case NestedCondition::Kind::Not:
            if (cond->is_false()) return "false";
            return "!" + describe_condition(cond->child());
        case NestedCondition::Kind::And: {
            std::string s = "(";
            for (size_t i = 0; i < cond->children().size(); ++i) {
                if (i) s += " & ";
                s += describe_condition(cond->children()[i]);
            }
            return s + ")";
        }
        case NestedCondition::Kind::Exists: {
            std::string s = "E[" + describe_graph_brief(cond->context()) + "->" +
                            describe_graph_brief(cond->anchor().cod);
            if (!cond->child()->is_true()) s += ", " + describe_condition(cond->child());
            return s + "]";
        }
    }
    return "?";
}

} // namespace dpoca
