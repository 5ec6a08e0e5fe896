#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "papp/axioms.hpp"
#include "papp/errors.hpp"
#include "papp/instances.hpp"
#include "papp/json_io.hpp"
#include "papp/portioning.hpp"
#include "papp/rules.hpp"

namespace {

using namespace papp;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

struct GlobalOptions {
    bool json = false;
    int threads = 1;
    unsigned long long cap = 5'000'000;

    RuleOptions rule_options(uint64_t seed, long long trials, double tol) const {
        RuleOptions options;
        options.search.cap = cap;
        options.search.threads = threads;
        options.rp_seed = seed;
        options.rp_trials = trials;
        options.nash_tolerance = tol;
        return options;
    }
};

std::string witness_summary(const Election& e, const AxiomVerdict& v) {
    if (v.pass || !v.witness) return "";
    const Witness& w = *v.witness;
    std::ostringstream out;
    if (w.party >= 0) out << "party=" << e.parties[w.party] << " ";
    if (v.axiom == Axiom::ejr || v.axiom == Axiom::pjr) out << "l=" << w.level << " ";
    if (!w.coalition.empty()) out << "|S|=" << coalition_size(w) << " ";
    if (w.deviation) out << "|T|=" << w.deviation->total() << " ";
    if (v.axiom == Axiom::monotone) out << "k=" << w.k_small << " ";
    std::string text = out.str();
    if (!text.empty()) text.pop_back();
    return text;
}

int cmd_compute(const GlobalOptions& global, const std::string& rule_name,
                const std::string& input, bool audit, uint64_t seed, long long trials,
                double tol) {
    Election e = parse_election(read_input(input));
    PartyRule rule = make_rule(rule_name, global.rule_options(seed, trials, tol));
    Committee w = rule(e);
    Json out;
    out["rule"] = rule_name;
    out["committee"] = committee_to_json(e, w);
    out["pav_score"] = rat_to_string(pav_score(e, w));
    if (!global.json) {
        std::cout << "committee: " << format_committee(e, w) << '\n';
        std::cout << "pav_score: " << rat_to_string(pav_score(e, w)) << '\n';
    }
    if (audit) {
        Json audit_json = Json::object();
        std::ostringstream line;
        for (Axiom axiom : {Axiom::jr, Axiom::pjr, Axiom::ejr}) {
            AxiomVerdict v = axiom == Axiom::jr    ? check_jr(e, w)
                             : axiom == Axiom::pjr ? check_pjr_mincut(e, w)
                                                   : check_ejr(e, w);
            audit_json[axiom_name(axiom)] = verdict_to_json(e, v);
            line << axiom_name(axiom) << '=' << (v.pass ? "PASS" : "FAIL");
            if (!v.pass) line << '(' << witness_summary(e, v) << ')';
            line << ' ';
        }
        out["audit"] = std::move(audit_json);
        if (!global.json) std::cout << "audit: " << line.str() << '\n';
    }
    if (global.json) std::cout << out.dump() << '\n';
    return 0;
}

int cmd_portion(const GlobalOptions& global, const std::string& method, const std::string& input,
                uint64_t seed, long long trials, double tol) {
    Election e = parse_election(read_input(input));
    Portioning r = [&] {
        if (method == "cu" || method == "conditional-utilitarian")
            return conditional_utilitarian(e);
        if (method == "rp" || method == "random-priority") {
            if (trials > 0) return random_priority_sampled(e, seed, trials);
            return random_priority_exact(e);
        }
        if (method == "nash") {
            NashOptions options;
            options.tolerance = tol;
            return nash(e, options);
        }
        if (method == "maj" || method == "majoritarian") return majoritarian(e);
        throw StructuralError("unknown portioning method: " + method);
    }();
    if (global.json)
        std::cout << Json{{"method", method}, {"shares", portioning_to_json(e, r)}}.dump()
                  << '\n';
    else
        std::cout << "portioning: " << format_portioning(e, r) << '\n';
    return 0;
}

int cmd_check(const GlobalOptions& global, const std::string& axiom_text,
              const std::string& input, const std::string& committee_spec,
              const std::string& rule_name, int k_max, bool pjr_bruteforce, uint64_t seed,
              long long trials, double tol) {
    Election e = parse_election(read_input(input));
    const Axiom axiom = axiom_from_name(axiom_text);
    const RuleOptions options = global.rule_options(seed, trials, tol);

    AxiomVerdict verdict;
    if (axiom == Axiom::monotone) {
        if (rule_name.empty())
            throw StructuralError("check --axiom monotone requires --rule");
        verdict = check_committee_monotonic(make_rule(rule_name, options), e,
                                            k_max > 0 ? k_max : e.k);
        if (!global.json) {
            std::cout << "monotone[" << rule_name << "]: " << (verdict.pass ? "PASS" : "FAIL")
                      << '\n';
            if (!verdict.pass)
                std::cout << witness_to_json(e, verdict.axiom, *verdict.witness).dump() << '\n';
        } else {
            std::cout << verdict_to_json(e, verdict).dump() << '\n';
        }
        return verdict.pass ? 0 : 1;
    }

    Committee w;
    if (!committee_spec.empty())
        w = parse_committee(e, committee_spec);
    else if (!rule_name.empty())
        w = make_rule(rule_name, options)(e);
    else
        throw StructuralError("check requires --committee or --rule");

    switch (axiom) {
        case Axiom::jr: verdict = check_jr(e, w); break;
        case Axiom::ejr: verdict = check_ejr(e, w); break;
        case Axiom::pjr:
            verdict = pjr_bruteforce ? check_pjr_bruteforce(e, w) : check_pjr_mincut(e, w);
            break;
        case Axiom::core: verdict = check_core_bruteforce(e, w, options.search); break;
        case Axiom::pr: verdict = check_pr(e, w); break;
        case Axiom::monotone: break; // handled above
    }
    if (global.json) {
        std::cout << verdict_to_json(e, verdict).dump() << '\n';
    } else {
        std::cout << axiom_text << ": " << (verdict.pass ? "PASS" : "FAIL");
        std::string summary = witness_summary(e, verdict);
        if (!summary.empty()) std::cout << " (" << summary << ")";
        std::cout << '\n';
        if (!verdict.pass && verdict.witness)
            std::cout << witness_to_json(e, verdict.axiom, *verdict.witness).dump() << '\n';
    }
    return verdict.pass ? 0 : 1;
}

int cmd_generate(const std::string& example_id, std::optional<int> k, const std::string& reduction,
                 const std::string& graph_path, int t, bool random, uint64_t seed, long long n,
                 int parties, int k_random, const std::string& model, double density) {
    if (!example_id.empty()) {
        WorkedExample example = worked_example(example_id, k);
        if (example.below_threshold)
            std::cerr << "warning: k below the guarantee threshold for " << example_id << '\n';
        std::cout << serialize_election(example.election);
        return 0;
    }
    if (!reduction.empty()) {
        Graph g = parse_graph(read_input(graph_path));
        if (reduction == "is-pav") {
            auto [e, threshold] = reduce_is_to_pav(g, t);
            std::cout << "# reduction: is-pav t=" << t
                      << " pav-threshold=" << rat_to_string(threshold) << '\n';
            std::cout << serialize_election(e);
        } else if (reduction == "is-maxphragmen") {
            Election e = reduce_is_to_maxphragmen(g, t);
            std::cout << "# reduction: is-maxphragmen t=" << t << " load-bound=1/3\n";
            std::cout << serialize_election(e);
        } else {
            throw StructuralError("unknown reduction: " + reduction);
        }
        return 0;
    }
    if (random) {
        Election e =
            random_election(seed, n, parties, k_random, ballot_model_from_name(model), density);
        std::cout << serialize_election(e);
        return 0;
    }
    throw StructuralError("generate requires --example, --reduction or --random");
}

int cmd_examples(const GlobalOptions& global, bool all, const std::string& id,
                 std::optional<int> k, uint64_t seed, long long trials, double tol) {
    std::vector<std::string> ids;
    if (all)
        ids = worked_example_ids();
    else if (!id.empty())
        ids.push_back(id);
    else
        throw StructuralError("examples requires --all or --id");

    const RuleOptions options = global.rule_options(seed, trials, tol);
    bool ok = true;
    Json rows = Json::array();
    for (const std::string& example_id : ids) {
        auto checks = run_golden_checks(example_id, all ? std::nullopt : k, options);
        for (const auto& check : checks) {
            ok &= check.pass;
            if (global.json)
                rows.push_back(
                    {{"id", example_id}, {"check", check.name}, {"pass", check.pass}});
            else
                std::cout << (check.pass ? "PASS" : "FAIL") << "  " << example_id << ": "
                          << check.name << '\n';
        }
    }
    if (global.json) std::cout << rows.dump() << '\n';
    if (!global.json) std::cout << (ok ? "all golden checks passed" : "golden checks FAILED") << '\n';
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"approval-based apportionment: portioning, apportionment, committee rules "
                 "and representation-axiom checkers"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_flag("--json", global.json, "machine-readable output");
    app.add_option("--threads", global.threads, "worker count for exact-search rules");
    app.add_option("--cap", global.cap, "enumeration cap for exact-search rules");

    uint64_t seed = 1;
    long long trials = 0;
    double tol = 1e-9;

    auto* compute = app.add_subcommand("compute", "run a rule on a ballot file");
    std::string rule_name, input, committee_spec;
    bool audit = false;
    compute->add_option("--rule", rule_name, "rule name")->required();
    compute->add_option("--input", input, "ballot file ('-' for stdin)")->required();
    compute->add_flag("--audit", audit, "run jr/pjr/ejr checkers on the result");
    compute->add_option("--seed", seed, "seed for sampled random priority");
    compute->add_option("--trials", trials, "sample count for random priority (n > 10)");
    compute->add_option("--tol", tol, "nash KKT tolerance");

    auto* portion = app.add_subcommand("portion", "run a portioning method");
    std::string method;
    portion->add_option("--method", method, "cu | rp | nash | maj")->required();
    portion->add_option("--input", input, "ballot file")->required();
    portion->add_option("--seed", seed, "seed for sampled random priority");
    portion->add_option("--trials", trials, "sample count for random priority");
    portion->add_option("--tol", tol, "nash KKT tolerance");

    auto* check = app.add_subcommand("check", "check an axiom for a committee or rule");
    std::string axiom_text;
    int k_max = 0;
    bool pjr_bruteforce = false;
    check->add_option("--axiom", axiom_text, "jr | pjr | ejr | core | pr | monotone")->required();
    check->add_option("--input", input, "ballot file")->required();
    check->add_option("--committee", committee_spec, "committee as p0=4,p1=2");
    check->add_option("--rule", rule_name, "rule whose output to check");
    check->add_option("--kmax", k_max, "sweep bound for monotone (default: k)");
    check->add_flag("--bruteforce", pjr_bruteforce, "use the exhaustive PJR oracle (n <= 14)");
    check->add_option("--seed", seed, "seed for sampled random priority");
    check->add_option("--trials", trials, "sample count for random priority");
    check->add_option("--tol", tol, "nash KKT tolerance");

    auto* generate = app.add_subcommand("generate", "emit instances in ballot-file format");
    std::string example_id, reduction, graph_path, model = "uniform";
    int k_flag = -1, t = 1, parties = 4, k_random = 3;
    long long n = 10;
    bool random = false;
    double density = 0.4;
    generate->add_option("--example", example_id, "bundled example id");
    generate->add_option("--k", k_flag, "committee size for parameterized examples");
    generate->add_option("--reduction", reduction, "is-pav | is-maxphragmen");
    generate->add_option("--graph", graph_path, "edge-list file for reductions");
    generate->add_option("--t", t, "independent-set size for reductions");
    generate->add_flag("--random", random, "seeded random election");
    generate->add_option("--seed", seed, "random election seed");
    generate->add_option("--n", n, "random election voters");
    generate->add_option("--parties", parties, "random election parties");
    generate->add_option("--committee-size", k_random, "random election k");
    generate->add_option("--model", model, "uniform | blocks | clustered");
    generate->add_option("--density", density, "ballot density in [0,1]");

    auto* examples = app.add_subcommand("examples", "run the golden example corpus");
    bool run_all = false;
    examples->add_flag("--all", run_all, "run every bundled example");
    examples->add_option("--id", example_id, "run a single example");
    examples->add_option("--k", k_flag, "committee size for parameterized examples");
    examples->add_option("--seed", seed, "seed for sampled random priority");
    examples->add_option("--trials", trials, "sample count for random priority");
    examples->add_option("--tol", tol, "nash KKT tolerance");

    try {
        app.parse(argc, argv);
        std::optional<int> k_override;
        if (k_flag >= 0) k_override = k_flag;
        if (compute->parsed())
            return cmd_compute(global, rule_name, input, audit, seed, trials, tol);
        if (portion->parsed()) return cmd_portion(global, method, input, seed, trials, tol);
        if (check->parsed())
            return cmd_check(global, axiom_text, input, committee_spec, rule_name, k_max,
                             pjr_bruteforce, seed, trials, tol);
        if (generate->parsed())
            return cmd_generate(example_id, k_override, reduction, graph_path, t, random, seed, n,
                                parties, k_random, model, density);
        if (examples->parsed())
            return cmd_examples(global, run_all, example_id, k_override, seed, trials, tol);
        return 2;
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : 2;
    } catch (const CapacityError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const NumericalError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
}
