// Command-line front end for the conflict analysis pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dpoca/analysis.hpp"
#include "dpoca/dot.hpp"

using namespace dpoca;

namespace {

int write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return 2;
    }
    out << content;
    return 0;
}

void export_dots(const Json& body, const GrammarFile& grammar, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const Rule* r1 = grammar.find_rule(body["rules"]["first"].get<std::string>());
    const Rule* r2 = grammar.find_rule(body["rules"]["second"].get<std::string>());
    auto rebuild_pair = [&](const Json& host_json, const Json& m1_json, const Json& m2_json) {
        NamedGraph host = detail::parse_graph_body(host_json, grammar.types, "report.host");
        GraphMorphism m1 = detail::parse_morphism(
            m1_json, NamedGraph::with_default_names(r1->left()), host, "report.match_first");
        GraphMorphism m2 = detail::parse_morphism(
            m2_json, NamedGraph::with_default_names(r2->left()), host, "report.match_second");
        return build_pair_at(*r1, *r2, m1, m2);
    };
    int i = 0;
    if (body.contains("initial_conflicts")) {
        for (const auto& entry : body["initial_conflicts"]) {
            if (auto tp =
                    rebuild_pair(entry["overlap"], entry["match_first"], entry["match_second"])) {
                std::string name = "initial_conflict_" + std::to_string(i);
                write_file(std::filesystem::path(dir) / (name + ".dot"), pair_to_dot(*tp, name));
                SymbolicTransformationPair stp = build_symbolic_pair(*tp);
                write_file(std::filesystem::path(dir) / (name + "_conditions.dot"),
                           condition_to_dot(normalize(stp.combined_ac()), name + " conditions"));
            }
            ++i;
        }
    }
    i = 0;
    if (body.contains("classified_conflicts")) {
        for (const auto& entry : body["classified_conflicts"]) {
            if (auto tp = rebuild_pair(entry["host"], entry["match_first"], entry["match_second"])) {
                std::string name = "conflict_" + std::to_string(i);
                write_file(std::filesystem::path(dir) / (name + ".dot"), pair_to_dot(*tp, name));
            }
            ++i;
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Static conflict analysis for typed-graph rewrite rules"};
    app.require_subcommand(1);

    std::string grammar_path, rule1, rule2;
    int max_nodes = -1, max_edges = -1;
    std::string matches = "all", format = "json", dot_dir, mode = "initial-conflicts";
    bool emit_timings = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("grammar", grammar_path, "grammar file (JSON)")->required();
        cmd->add_option("rule1", rule1, "first rule name")->required();
        cmd->add_option("rule2", rule2, "second rule name")->required();
        cmd->add_option("--max-nodes", max_nodes, "node bound for search universes");
        cmd->add_option("--max-edges", max_edges, "edge bound for search universes");
        cmd->add_option("--matches", matches, "match class: all|mono")
            ->check(CLI::IsMember({"all", "mono"}));
        cmd->add_option("--format", format, "output format: json|text")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--dot-dir", dot_dir, "directory for DOT exports");
        cmd->add_flag("--timings", emit_timings, "print stage timings to stderr");
    };

    CLI::App* cmd_cp = app.add_subcommand("critical-pairs", "overlap candidates and verdicts");
    add_common(cmd_cp);
    CLI::App* cmd_ic = app.add_subcommand("initial-conflicts", "compute the initial conflicts");
    add_common(cmd_ic);
    CLI::App* cmd_unfold = app.add_subcommand("unfold", "regular forms and disjunctive unfoldings");
    add_common(cmd_unfold);
    CLI::App* cmd_classify =
        app.add_subcommand("classify", "classify concrete conflicts within bounds");
    add_common(cmd_classify);
    CLI::App* cmd_verify = app.add_subcommand("verify", "bounded completeness verification");
    add_common(cmd_verify);
    cmd_verify->add_option("--mode", mode, "critical-pairs-M|initial-conflicts|unfolding-M")
        ->check(CLI::IsMember({"critical-pairs-M", "initial-conflicts", "unfolding-M"}));

    CLI11_PARSE(app, argc, argv);

    try {
        GrammarFile grammar = parse_grammar(grammar_path);
        AnalysisRequest req;
        req.rule_first = rule1;
        req.rule_second = rule2;
        req.bounds = grammar.defaults;
        if (max_nodes >= 0) req.bounds.max_nodes = max_nodes;
        if (max_edges >= 0) req.bounds.max_edges = max_edges;
        req.matches = matches == "mono" ? MorphismRestriction::Mono : MorphismRestriction::All;
        req.want_critical_pairs = cmd_cp->parsed();
        req.want_initial_conflicts = cmd_ic->parsed();
        req.want_unfold = cmd_unfold->parsed();
        req.want_classify = cmd_classify->parsed();

        int exit_code = 0;
        AnalysisReport report;
        if (cmd_verify->parsed()) {
            const Rule* r1 = grammar.find_rule(rule1);
            const Rule* r2 = grammar.find_rule(rule2);
            if (!r1) throw GrammarError("rules." + rule1, "rule not found");
            if (!r2) throw GrammarError("rules." + rule2, "rule not found");
            VerifyMode vm = mode == "critical-pairs-M" ? VerifyMode::CriticalPairsM
                            : mode == "unfolding-M"    ? VerifyMode::UnfoldingM
                                                       : VerifyMode::InitialConflicts;
            auto t0 = std::chrono::steady_clock::now();
            VerifyResult vr = verify_completeness(*r1, *r2, req.bounds, vm, req.matches);
            auto t1 = std::chrono::steady_clock::now();
            report.timings_ms["verify"] =
                std::chrono::duration<double, std::milli>(t1 - t0).count();
            report.body = Json{{"rules", Json{{"first", rule1}, {"second", rule2}}},
                               {"bounds", Json{{"max_nodes", req.bounds.max_nodes},
                                               {"max_edges", req.bounds.max_edges}}},
                               {"matches", matches},
                               {"verification", verify_result_to_json(vr, *grammar.types)}};
            if (!vr.pass) exit_code = 1;
        } else {
            report = run_analysis(grammar, req);
        }

        if (!dot_dir.empty()) export_dots(report.body, grammar, dot_dir);
        if (format == "json")
            std::cout << report.body.dump(2) << "\n";
        else
            std::cout << report_to_text(report.body);
        if (emit_timings)
            for (const auto& [name, ms] : report.timings_ms)
                std::cerr << "timing " << name << ": " << ms << " ms\n";
        return exit_code;
    } catch (const GrammarError& ex) {
        std::cerr << "input error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
