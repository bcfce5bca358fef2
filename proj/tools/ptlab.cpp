// ptlab command line: run config-driven experiments, verify the guarantee
// suites, list the registries, and brute-force-check the distance oracles.

#include <ptlab/harness.hpp>
#include <ptlab/suites.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

int cmd_run(const std::string& config_path, const std::string& csv_path, const std::string& json_path,
            const std::string& transcripts_path) {
    const ptlab::experiment_config cfg = ptlab::load_config(config_path);

    std::ofstream transcripts;
    ptlab::trial_observer observe;
    if (!transcripts_path.empty()) {
        transcripts.open(transcripts_path, std::ios::binary);
        if (!transcripts) throw std::runtime_error("cannot open " + transcripts_path);
        observe = [&](std::size_t id, const ptlab::oracle_session& s) {
            transcripts << ptlab::transcript_jsonl(id, s);
        };
    }

    const ptlab::experiment_result result = ptlab::run_trials(cfg, observe);
    ptlab::emit_report(result,
                       csv_path.empty() ? std::nullopt : std::optional<std::string>(csv_path),
                       json_path.empty() ? std::nullopt : std::optional<std::string>(json_path));

    std::cout << ptlab::summary_json(result).dump(2) << "\n";
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
    if (!result.assertions_ok) {
        std::cerr << "assertion failed: acceptance rate " << result.stats.acceptance_rate
                  << " outside the configured bounds\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const std::string& suite_name) {
    int failures = 0;
    const auto report = [&](const ptlab::suites::suite_result& r) {
        std::printf("[%s] %-20s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        if (!r.pass) ++failures;
    };
    if (suite_name == "all") {
        for (const auto& [name, fn] : ptlab::suites::all_suites()) report(fn());
    } else {
        report(ptlab::suites::run_suite(suite_name));
    }
    return failures == 0 ? 0 : 1;
}

int cmd_list(const std::string& what) {
    std::vector<std::string> names;
    if (what == "properties") {
        names = ptlab::property_names();
    } else if (what == "testers") {
        names = ptlab::tester_names();
    } else if (what == "adversaries") {
        names = ptlab::adversary_names();
    } else if (what == "suites") {
        for (const auto& [name, fn] : ptlab::suites::all_suites()) names.push_back(name);
    } else {
        std::cerr << "unknown registry '" << what << "' (properties|testers|adversaries|suites)\n";
        return 1;
    }
    for (const std::string& n : names) std::cout << n << "\n";
    return 0;
}

int cmd_oracle_check(std::size_t n_max, std::uint32_t sigma_max) {
    const auto result = ptlab::suites::suite_oracle_equivalence(n_max, sigma_max);
    std::printf("[%s] %s\n", result.pass ? "PASS" : "FAIL", result.detail.c_str());
    return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ptlab: property testing under online and offline adversarial manipulation"};
    app.require_subcommand(1);

    std::string config_path, csv_path, json_path, transcripts_path;
    auto* run = app.add_subcommand("run", "run an experiment from a JSON config file");
    run->add_option("config", config_path, "config file (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--csv", csv_path, "write per-trial CSV here");
    run->add_option("--json", json_path, "write the summary JSON here");
    run->add_option("--transcripts", transcripts_path, "write query transcripts as JSON lines here");

    std::string suite_name{"all"};
    auto* verify = app.add_subcommand("verify", "run a guarantee suite (or 'all')");
    verify->add_option("suite", suite_name, "suite name; see 'list suites'");

    std::string what;
    auto* list = app.add_subcommand("list", "list registered properties|testers|adversaries|suites");
    list->add_option("what", what, "which registry")->required();

    std::size_t n_max = 10;
    std::uint32_t sigma_max = 3;
    auto* oracle_check =
        app.add_subcommand("oracle-check", "brute-force distance-oracle equivalence sweep");
    oracle_check->add_option("n-max", n_max, "max string length (default 10)");
    oracle_check->add_option("sigma-max", sigma_max, "max alphabet size (default 3)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, csv_path, json_path, transcripts_path);
        if (verify->parsed()) return cmd_verify(suite_name);
        if (list->parsed()) return cmd_list(what);
        if (oracle_check->parsed()) return cmd_oracle_check(n_max, sigma_max);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
