// The analysis pipeline over a rule pair: conflict candidates and verdicts,
// regular forms and unfoldings, concrete-pair classification, and the
// bounded completeness verification harness.
#pragma once

#include <atomic>
#include <chrono>
#include <future>
#include <map>
#include <thread>

#include <json.hpp>

#include "dpoca/conflicts.hpp"
#include "dpoca/grammar.hpp"
#include "dpoca/unfolding.hpp"

namespace dpoca {

namespace detail {

inline Json pair_to_json(const TransformationPair& tp, const TypeGraph& tg) {
    Json m1 = morphism_maps_to_json(tp.match_first());
    Json m2 = morphism_maps_to_json(tp.match_second());
    return Json{{"source", graph_to_json(tp.source(), tg)},
                {"first", Json{{"rule", tp.first.rule.name},
                               {"match", m1},
                               {"result", graph_to_json(tp.first.result(), tg)}}},
                {"second", Json{{"rule", tp.second.rule.name},
                                {"match", m2},
                                {"result", graph_to_json(tp.second.result(), tg)}}}};
}

inline Json classes_to_json(const IndependenceReport& rep) {
    Json cs = Json::array();
    for (ConflictClass c : rep.classes) cs.push_back(to_string(c));
    return cs;
}

inline Json condition_report(const ConditionPtr& c, const TypeGraph& tg) {
    ConditionPtr n = normalize(c);
    return Json{{"pretty", describe_condition(n)}, {"structured", condition_to_json(n, tg)}};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Bounded completeness verification.
// ---------------------------------------------------------------------------

enum class VerifyMode { CriticalPairsM, InitialConflicts, UnfoldingM };

inline std::string to_string(VerifyMode m) {
    switch (m) {
        case VerifyMode::CriticalPairsM: return "critical-pairs-M";
        case VerifyMode::InitialConflicts: return "initial-conflicts";
        case VerifyMode::UnfoldingM: return "unfolding-M";
    }
    return "?";
}

struct VerifyCounterexample {
    TypedGraph host;
    GraphMorphism match_first;
    GraphMorphism match_second;
    std::vector<ConflictClass> classes;
    std::string reason;
};

struct VerifyResult {
    VerifyMode mode = VerifyMode::InitialConflicts;
    Bounds bounds;
    bool pass = false;
    long conflicts_checked = 0;
    long independent_seen = 0;
    long graphs_scanned = 0;
    std::vector<VerifyCounterexample> counterexamples;
    // initial-conflicts mode: every conflict must have exactly one
    // representative up to isomorphism
    bool uniqueness_ok = true;
    std::vector<VerifyCounterexample> uniqueness_violations;
    std::vector<std::string> setup_errors;
};

namespace detail {

/// Does the symbolic pair embed into tp at an extension with the stated
/// injectivity that satisfies the combined condition?
inline bool represents(const SymbolicTransformationPair& stp, const TransformationPair& tp,
                       MorphismRestriction restrict_to) {
    ConditionPtr want = normalize(stp.combined_ac());
    for (const auto& m : match_compatible_morphisms(stp.pair, tp, restrict_to)) {
        if (!std::holds_alternative<PairEmbedding>(embed_transformation_pair(stp.pair, m)))
            continue;
        if (satisfies(m, want)) return true;
    }
    return false;
}

} // namespace detail

/// Exhaustively enumerate condition-respecting conflicting pairs over all
/// graphs within bounds and check that every one of them is represented in
/// the sense of the selected mode. Counterexamples are re-validated from
/// scratch before being reported.
inline VerifyResult verify_completeness(const Rule& r1, const Rule& r2, Bounds bounds,
                                        VerifyMode mode,
                                        MorphismRestriction match_restriction =
                                            MorphismRestriction::All,
                                        const InitialConflictSet* injected_representatives =
                                            nullptr) {
    VerifyResult result;
    result.mode = mode;
    result.bounds = bounds;

    // Representatives, per mode. The injection hook lets the test suite
    // confirm that a truncated set is caught.
    InitialConflictSet ics;
    std::vector<SymbolicTransformationPair> unfolded_members;
    if (mode == VerifyMode::InitialConflicts || mode == VerifyMode::UnfoldingM) {
        ics = injected_representatives ? *injected_representatives
                                       : compute_initial_conflicts(r1, r2, bounds);
        if (mode == VerifyMode::UnfoldingM) {
            for (const auto& ic : ics.conflicts) {
                RegularityResult reg = check_regular(ic, bounds);
                if (!reg.form) {
                    result.setup_errors.push_back("initial conflict over " +
                                                  describe_graph_brief(ic.stp.overlap()) +
                                                  " is not established as regular");
                    continue;
                }
                for (const auto& tp : disjunctive_unfolding(ic, *reg.form))
                    unfolded_members.push_back(build_symbolic_pair(tp));
            }
        }
    }

    auto check_conflict = [&](const TransformationPair& tp) -> std::optional<std::string> {
        switch (mode) {
            case VerifyMode::CriticalPairsM: {
                // The overlap of the matches is the canonical candidate; it
                // must be a critical pair witnessed by the inclusion.
                PairFactorization pf = pair_factorize(tp.match_first(), tp.match_second());
                auto overlap_tp = build_pair_at(tp.first.rule, tp.second.rule, pf.first, pf.second);
                if (!overlap_tp) return "overlap pair lost the gluing condition";
                SymbolicTransformationPair stp = build_symbolic_pair(*overlap_tp);
                if (!stp.matches_jointly_surjective()) return "overlap matches not jointly surjective";
                if (!std::holds_alternative<PairEmbedding>(
                        embed_transformation_pair(stp.pair, pf.mono)))
                    return "overlap does not extend along the inclusion";
                if (!satisfies(pf.mono, normalize(stp.combined_ac())))
                    return "inclusion violates the combined condition";
                return std::nullopt;
            }
            case VerifyMode::InitialConflicts: {
                int reps = 0;
                for (const auto& ic : ics.conflicts)
                    if (detail::represents(ic.stp, tp, MorphismRestriction::All)) ++reps;
                if (reps == 0) return "no initial conflict represents this conflict";
                if (reps != 1) return "uniqueness: " + std::to_string(reps) + " representatives";
                return std::nullopt;
            }
            case VerifyMode::UnfoldingM: {
                for (const auto& member : unfolded_members)
                    if (detail::represents(member, tp, MorphismRestriction::Mono)) return std::nullopt;
                return "no unfolded conflict embeds injectively";
            }
        }
        return std::nullopt;
    };

    auto universe = enumerate_graph_universe(r1.left().type_graph(), bounds);
    result.graphs_scanned = static_cast<long>(universe.size());

    struct PerGraph {
        long conflicts = 0;
        long independent = 0;
        std::vector<VerifyCounterexample> bad;
    };
    std::vector<PerGraph> per_graph(universe.size());

    auto scan_graph = [&](size_t gi) {
        const TypedGraph& g = universe[gi];
        PerGraph& out = per_graph[gi];
        auto ms1 = find_matches(r1, g, /*respect_ac=*/true, match_restriction);
        auto ms2 = find_matches(r2, g, /*respect_ac=*/true, match_restriction);
        for (const auto& m1 : ms1) {
            if (!m1.gluing_ok) continue;
            for (const auto& m2 : ms2) {
                if (!m2.gluing_ok) continue;
                auto tp = build_pair_at(r1, r2, m1.match, m2.match);
                if (!tp) continue;
                IndependenceReport rep = check_parallel_independence(*tp);
                if (rep.parallel_independent) {
                    ++out.independent;
                    continue;
                }
                ++out.conflicts;
                if (auto why = check_conflict(*tp)) {
                    std::vector<ConflictClass> classes = rep.classes;
                    out.bad.push_back(
                        {g, m1.match, m2.match, std::move(classes), std::move(*why)});
                }
            }
        }
    };

    // Witness graphs are independent; scan them concurrently and merge in
    // universe order.
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    std::vector<std::future<void>> futures;
    for (unsigned w = 0; w < workers; ++w)
        futures.push_back(std::async(std::launch::async, [&] {
            for (size_t gi = next.fetch_add(1); gi < universe.size(); gi = next.fetch_add(1))
                scan_graph(gi);
        }));
    for (auto& f : futures) f.get();

    for (auto& pg : per_graph) {
        result.conflicts_checked += pg.conflicts;
        result.independent_seen += pg.independent;
        for (auto& ce : pg.bad) {
            // Re-validate from scratch: rebuild the pair and re-run the check.
            auto tp = build_pair_at(r1, r2, ce.match_first, ce.match_second);
            if (!tp) continue;
            IndependenceReport rep = check_parallel_independence(*tp);
            if (rep.parallel_independent) continue;
            if (auto why = check_conflict(*tp)) {
                ce.reason = *why;
                if (why->rfind("uniqueness", 0) == 0) {
                    result.uniqueness_ok = false;
                    result.uniqueness_violations.push_back(std::move(ce));
                } else {
                    result.counterexamples.push_back(std::move(ce));
                }
            }
        }
    }
    result.pass = result.counterexamples.empty() && result.uniqueness_ok &&
                  result.setup_errors.empty();
    return result;
}

inline Json verify_result_to_json(const VerifyResult& r, const TypeGraph& tg) {
    Json ces = Json::array();
    auto ce_json = [&](const VerifyCounterexample& ce) {
        Json cls = Json::array();
        for (ConflictClass c : ce.classes) cls.push_back(to_string(c));
        return Json{{"host", detail::graph_to_json(ce.host, tg)},
                    {"match_first", detail::morphism_maps_to_json(ce.match_first)},
                    {"match_second", detail::morphism_maps_to_json(ce.match_second)},
                    {"classes", cls},
                    {"reason", ce.reason}};
    };
    for (const auto& ce : r.counterexamples) ces.push_back(ce_json(ce));
    Json uv = Json::array();
    for (const auto& ce : r.uniqueness_violations) uv.push_back(ce_json(ce));
    return Json{{"mode", to_string(r.mode)},
                {"bounds", Json{{"max_nodes", r.bounds.max_nodes}, {"max_edges", r.bounds.max_edges}}},
                {"pass", r.pass},
                {"graphs_scanned", r.graphs_scanned},
                {"conflicts_checked", r.conflicts_checked},
                {"independent_seen", r.independent_seen},
                {"counterexamples", ces},
                {"uniqueness_ok", r.uniqueness_ok},
                {"uniqueness_violations", uv},
                {"setup_errors", r.setup_errors}};
}

// ---------------------------------------------------------------------------
// Report assembly for the CLI pipeline.
// ---------------------------------------------------------------------------

struct AnalysisRequest {
    std::string rule_first;
    std::string rule_second;
    Bounds bounds{3, 3};
    MorphismRestriction matches = MorphismRestriction::All;
    bool want_critical_pairs = false;
    bool want_initial_conflicts = false;
    bool want_unfold = false;
    bool want_classify = false;
};

struct AnalysisReport {
    Json body;                              // deterministic content
    std::map<std::string, double> timings_ms; // reported separately, never in body
};

inline std::string inducing_status_name(InducingStatus s) {
    switch (s) {
        case InducingStatus::Inducing: return "inducing";
        case InducingStatus::No: return "not-inducing";
        case InducingStatus::NotInducingUpToBound: return "not-inducing-up-to-bound";
        case InducingStatus::Unknown: return "unknown";
    }
    return "?";
}

inline std::string critical_status_name(CriticalPairStatus s) {
    switch (s) {
        case CriticalPairStatus::Yes: return "yes";
        case CriticalPairStatus::No: return "no";
        case CriticalPairStatus::NoUpToBound: return "no-up-to-bound";
        case CriticalPairStatus::Unknown: return "unknown";
    }
    return "?";
}

inline AnalysisReport run_analysis(const GrammarFile& grammar, const AnalysisRequest& req) {
    const Rule* r1 = grammar.find_rule(req.rule_first);
    const Rule* r2 = grammar.find_rule(req.rule_second);
    if (!r1) throw GrammarError("rules." + req.rule_first, "rule not found");
    if (!r2) throw GrammarError("rules." + req.rule_second, "rule not found");
    const TypeGraph& tg = *grammar.types;

    AnalysisReport report;
    auto timed = [&](const std::string& name, const std::function<void()>& f) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        report.timings_ms[name] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    };

    report.body = Json{
        {"rules", Json{{"first", r1->name}, {"second", r2->name}}},
        {"bounds", Json{{"max_nodes", req.bounds.max_nodes}, {"max_edges", req.bounds.max_edges}}},
        {"matches", req.matches == MorphismRestriction::Mono ? "mono" : "all"}};

    std::optional<InitialConflictSet> ics;
    auto ensure_ics = [&] {
        if (!ics) ics = compute_initial_conflicts(*r1, *r2, req.bounds);
    };

    if (req.want_critical_pairs) timed("critical-pairs", [&] {
        Json out = Json::array();
        Json plain = Json::array();
        for (const auto& tp : compute_plain_critical_pairs(r1->stripped(), r2->stripped()))
            plain.push_back(detail::pair_to_json(tp, tg));
        for (const auto& tp : enumerate_overlap_pairs(*r1, *r2)) {
            SymbolicTransformationPair stp = build_symbolic_pair(tp);
            CriticalPairResult verdict = is_critical_pair(stp, req.bounds);
            if (verdict.status == CriticalPairStatus::No && !stp.matches_jointly_surjective())
                continue; // not even a candidate
            Json entry{{"pair", detail::pair_to_json(tp, tg)},
                       {"extension_condition", detail::condition_report(stp.extension_ac, tg)},
                       {"conflict_condition", detail::condition_report(stp.conflict_ac, tg)},
                       {"verdict", critical_status_name(verdict.status)}};
            if (verdict.witness)
                entry["witness"] = detail::morphism_maps_to_json(*verdict.witness);
            out.push_back(std::move(entry));
        }
        report.body["plain_critical_pairs"] = plain;
        report.body["critical_pair_candidates"] = out;
    });

    if (req.want_initial_conflicts || req.want_unfold) timed("initial-conflicts", [&] {
        ensure_ics();
        Json plain = Json::array();
        for (const auto& tp : ics->plain_initial_conflicts)
            plain.push_back(detail::pair_to_json(tp, tg));
        auto candidate_json = [&](const SymbolicTransformationPair& stp, InitialConflictKind kind,
                                  const InducingResult& ind) {
            Json entry{{"kind", kind == InitialConflictKind::ACInitial ? "condition-initial"
                                                                       : "use-delete/delete-use"},
                       {"overlap", detail::graph_to_json(stp.overlap(), tg)},
                       {"match_first", detail::morphism_maps_to_json(stp.pair.match_first())},
                       {"match_second", detail::morphism_maps_to_json(stp.pair.match_second())},
                       {"extension_condition", detail::condition_report(stp.extension_ac, tg)},
                       {"conflict_condition", detail::condition_report(stp.conflict_ac, tg)},
                       {"inducing", inducing_status_name(ind.status)}};
            if (ind.witness) {
                entry["witness"] = Json{
                    {"extension", detail::morphism_maps_to_json(ind.witness->extension)},
                    {"host", detail::graph_to_json(ind.witness->pair.source(), tg)},
                    {"classes", detail::classes_to_json(ind.witness->report)}};
            }
            return entry;
        };
        Json conflicts = Json::array();
        for (const auto& ic : ics->conflicts)
            conflicts.push_back(candidate_json(ic.stp, ic.kind, ic.inducing));
        Json rejected = Json::array();
        for (const auto& rc : ics->rejected)
            rejected.push_back(candidate_json(rc.stp, rc.kind, rc.inducing));
        report.body["plain_initial_conflicts"] = plain;
        report.body["initial_conflicts"] = conflicts;
        report.body["rejected_candidates"] = rejected;
    });

    if (req.want_unfold) timed("unfold", [&] {
        ensure_ics();
        bool nac_rules = as_nac_conjunction(r1->ac_left).has_value() &&
                         as_nac_conjunction(r2->ac_left).has_value();
        Json out = Json::array();
        for (const auto& ic : ics->conflicts) {
            Json entry{{"overlap", detail::graph_to_json(ic.stp.overlap(), tg)}};
            RegularityResult reg = check_regular(ic, req.bounds);
            if (!reg.form) {
                entry["regular"] = "not-established";
                out.push_back(std::move(entry));
                continue;
            }
            entry["regular"] = "established";
            entry["form_verified"] = reg.verified;
            Json lits = Json::array();
            for (const auto& lit : reg.form->literals) {
                Json jl{{"context", detail::graph_to_json(lit.anchor.cod, tg)},
                        {"anchor", detail::morphism_maps_to_json(lit.anchor)},
                        {"gluing_ok", lit.gluing_ok}};
                Json rem = Json::array();
                for (const auto& n : lit.remainder.nacs)
                    rem.push_back(Json{{"codomain", detail::graph_to_json(n.cod, tg)},
                                       {"maps", detail::morphism_maps_to_json(n)}});
                jl["remainder"] = rem;
                lits.push_back(std::move(jl));
            }
            entry["literals"] = lits;
            Json pairs = Json::array();
            for (const auto& tp : disjunctive_unfolding(ic, *reg.form)) {
                IndependenceReport rep = check_parallel_independence(tp);
                Json jp{{"pair", detail::pair_to_json(tp, tg)},
                        {"classes", detail::classes_to_json(rep)}};
                if (nac_rules) {
                    NacCriticalPairVerdict v = nac_critical_pair_predicate(tp);
                    jp["classical_conflict_pair"] =
                        Json{{"holds", v.holds}, {"case", to_string(v.which)}};
                }
                pairs.push_back(std::move(jp));
            }
            entry["unfolded"] = pairs;
            out.push_back(std::move(entry));
        }
        report.body["disjunctive_unfoldings"] = out;
    });

    if (req.want_classify) timed("classify", [&] {
        Json out = Json::array();
        std::map<std::string, long> totals{{"independent", 0}};
        for (const auto& g : enumerate_graph_universe(grammar.types, req.bounds)) {
            for (const auto& m1 : find_matches(*r1, g, true, req.matches)) {
                if (!m1.gluing_ok) continue;
                for (const auto& m2 : find_matches(*r2, g, true, req.matches)) {
                    if (!m2.gluing_ok) continue;
                    auto tp = build_pair_at(*r1, *r2, m1.match, m2.match);
                    if (!tp) continue;
                    IndependenceReport rep = check_parallel_independence(*tp);
                    if (rep.parallel_independent) {
                        ++totals["independent"];
                        continue;
                    }
                    for (ConflictClass c : rep.classes) ++totals[to_string(c)];
                    out.push_back(Json{{"host", detail::graph_to_json(g, tg)},
                                       {"match_first", detail::morphism_maps_to_json(m1.match)},
                                       {"match_second", detail::morphism_maps_to_json(m2.match)},
                                       {"classes", detail::classes_to_json(rep)}});
                }
            }
        }
        Json totals_json = Json::object();
        for (const auto& [k, v] : totals) totals_json[k] = v;
        report.body["classified_conflicts"] = out;
        report.body["classification_totals"] = totals_json;
    });

    return report;
}

inline std::string report_to_text(const Json& body) {
    std::ostringstream os;
    os << "rules: " << body["rules"]["first"].get<std::string>() << " vs "
       << body["rules"]["second"].get<std::string>() << "\n";
    os << "bounds: " << body["bounds"]["max_nodes"] << " nodes / " << body["bounds"]["max_edges"]
       << " edges, matches: " << body["matches"].get<std::string>() << "\n";
    if (body.contains("plain_critical_pairs"))
        os << "plain critical pairs: " << body["plain_critical_pairs"].size() << "\n";
    if (body.contains("critical_pair_candidates")) {
        long yes = 0;
        for (const auto& e : body["critical_pair_candidates"])
            if (e["verdict"] == "yes") ++yes;
        os << "critical pairs (overlap candidates): " << yes << " of "
           << body["critical_pair_candidates"].size() << "\n";
    }
    if (body.contains("initial_conflicts")) {
        os << "plain initial conflicts: " << body["plain_initial_conflicts"].size() << "\n";
        os << "initial conflicts: " << body["initial_conflicts"].size() << "\n";
        for (const auto& e : body["initial_conflicts"]) {
            os << "  - kind: " << e["kind"].get<std::string>() << ", overlap nodes: "
               << e["overlap"]["nodes"].size()
               << ", extension: " << e["extension_condition"]["pretty"].get<std::string>()
               << ", conflict: " << e["conflict_condition"]["pretty"].get<std::string>() << "\n";
        }
        os << "rejected candidates: " << body["rejected_candidates"].size() << "\n";
    }
    if (body.contains("disjunctive_unfoldings")) {
        for (const auto& e : body["disjunctive_unfoldings"]) {
            os << "unfolding over " << e["overlap"]["nodes"].size()
               << "-node overlap: " << e["regular"].get<std::string>();
            if (e.contains("unfolded")) os << ", " << e["unfolded"].size() << " conflicts";
            os << "\n";
        }
    }
    if (body.contains("classification_totals")) {
        os << "classification totals:";
        for (const auto& [k, v] : body["classification_totals"].items())
            os << " " << k << "=" << v;
        os << "\n";
    }
    if (body.contains("verification")) {
        const auto& v = body["verification"];
        os << "verify " << v["mode"].get<std::string>() << ": "
           << (v["pass"].get<bool>() ? "PASS" : "FAIL") << " (" << v["conflicts_checked"]
           << " conflicts over " << v["graphs_scanned"] << " graphs, "
           << v["counterexamples"].size() << " counterexamples)\n";
    }
    return os.str();
}

} // namespace dpoca
