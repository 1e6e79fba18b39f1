// Copyright 2026 The cellfree-maxmin Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cellfree-maxmin: Monte Carlo campaigns of joint max-min power control and
// user-centric AP clustering.
//
//   cellfree-maxmin run --setup II --scheme exhaustive --candidate-size 3 \
//       --users 58 --trials 200 --pmax-dbm 20 --epsilon 1e-8 --seed 42 --out results/
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure in oracle mode.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cellfree/errors.hpp"
#include "cellfree/experiment.hpp"
#include "cellfree/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunArgs {
    std::vector<std::string> setups;
    std::vector<std::string> schemes{"exhaustive"};
    std::vector<std::size_t> candidate_sizes;
    std::size_t users = 58;
    std::size_t trials = 200;
    double pmax_dbm = 20.0;
    double epsilon = 1e-8;
    std::size_t max_iter = 1000000;
    std::uint64_t seed = 42;
    std::string out = "results";
    std::string config;
    std::optional<std::size_t> aps;
    std::optional<std::size_t> antennas;
    std::optional<double> spacing;
    bool oracle = false;
    std::size_t oracle_budget = 1000000;
    std::size_t exhaustive_cap = 5;
    bool allow_large_exhaustive = false;
    unsigned threads = 1;
    bool timing = false;
    bool quiet = false;
};

cellfree::CampaignSpec make_spec(const RunArgs& a) {
    using namespace cellfree;
    CampaignSpec spec;
    if (!a.config.empty()) spec.network = load_scenario(a.config);
    if (a.aps) spec.network.num_aps = *a.aps;
    if (a.antennas) spec.network.antennas_per_ap = *a.antennas;
    if (a.spacing) spec.network.inter_ap_distance = *a.spacing;

    spec.setups.clear();
    if (a.setups.empty()) {
        const bool custom = !a.config.empty() || a.aps || a.antennas || a.spacing;
        spec.setups.push_back(custom ? Setup::Custom : Setup::II);
    }
    for (const auto& s : a.setups) spec.setups.push_back(parse_setup(s));

    spec.schemes.clear();
    for (const auto& s : a.schemes) spec.schemes.push_back(parse_scheme(s));

    spec.candidate_sizes = a.candidate_sizes;
    spec.num_users = a.users;
    spec.num_trials = a.trials;
    spec.p_max_dbm = a.pmax_dbm;
    spec.epsilon = a.epsilon;
    spec.max_iterations = a.max_iter;
    spec.seed = a.seed;
    spec.oracle_check = a.oracle;
    spec.oracle_budget = a.oracle_budget;
    spec.clustering.exhaustive_soft_cap = a.exhaustive_cap;
    spec.clustering.allow_large_exhaustive = a.allow_large_exhaustive;
    spec.threads = a.threads;
    spec.validate();
    return spec;
}

int run(const RunArgs& args) {
    using namespace cellfree;
    const CampaignSpec spec = make_spec(args);

    const std::filesystem::path out_dir(args.out);
    std::filesystem::create_directories(out_dir);

    ProgressCallback progress;
    if (!args.quiet) {
        progress = [](std::size_t done, std::size_t total) {
            std::fprintf(stderr, "\r[%zu/%zu] trials", done, total);
            if (done == total) std::fprintf(stderr, "\n");
        };
    }
    const CampaignResult result = run_campaign(spec, progress);
    const auto groups = summarize_cdf(result.records);

    {
        std::ofstream csv(out_dir / "trials.csv", std::ios::binary);
        write_trials_csv(result.records, csv, args.timing);
        if (!csv) throw std::runtime_error("failed writing trials.csv");
    }
    {
        std::ofstream js(out_dir / "summary.json", std::ios::binary);
        write_summary_json(spec, result, groups, js);
        if (!js) throw std::runtime_error("failed writing summary.json");
    }

    if (!args.quiet) {
        std::printf("%-7s %-11s %4s %7s %9s %9s\n", "setup", "scheme", "cs", "trials", "median", "p10");
        for (const auto& g : groups) {
            std::printf("%-7s %-11s %4zu %7zu %8.3fdB %8.3fdB\n", std::string(to_string(g.setup)).c_str(),
                        std::string(to_string(g.scheme)).c_str(), g.candidate_size, g.trials, g.median_db, g.p10_db);
        }
        if (result.solver_failures) std::printf("solver failures: %zu\n", result.solver_failures);
        if (spec.oracle_check) std::printf("oracle mismatches: %zu\n", result.oracle_failures);
    }

    if (spec.oracle_check && result.oracle_failures > 0) return kExitNumerical;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint max-min power control and user-centric AP clustering for cell-free uplinks"};
    app.set_version_flag("--version", std::string(cellfree::version_string()));
    app.require_subcommand(1);

    RunArgs args;
    auto* run_cmd = app.add_subcommand("run", "Run a seeded Monte Carlo campaign");
    run_cmd->add_option("--setup", args.setups, "Deployment(s): I, II, III or custom")->delimiter(',');
    run_cmd->add_option("--scheme", args.schemes, "Clustering scheme(s): fixed, add, exhaustive")->delimiter(',');
    run_cmd->add_option("--candidate-size", args.candidate_sizes, "Candidate AP set size(s)")->delimiter(',');
    run_cmd->add_option("--users", args.users, "Users per network")->capture_default_str();
    run_cmd->add_option("--trials", args.trials, "Monte Carlo trials")->capture_default_str();
    run_cmd->add_option("--pmax-dbm", args.pmax_dbm, "Per-user power budget [dBm]")->capture_default_str();
    run_cmd->add_option("--epsilon", args.epsilon, "Relative stopping tolerance")->capture_default_str();
    run_cmd->add_option("--max-iter", args.max_iter, "Fixed-point iteration cap")->capture_default_str();
    run_cmd->add_option("--seed", args.seed, "Campaign seed")->capture_default_str();
    run_cmd->add_option("--out", args.out, "Output directory")->capture_default_str();
    run_cmd->add_option("--config", args.config, "Scenario file (key = value)");
    run_cmd->add_option("--aps", args.aps, "Number of APs (custom setup)");
    run_cmd->add_option("--antennas", args.antennas, "Antennas per AP (custom setup)");
    run_cmd->add_option("--inter-ap-distance", args.spacing, "AP spacing [m] (custom setup)");
    run_cmd->add_flag("--oracle", args.oracle, "Cross-check every instance against the spectral oracle");
    run_cmd->add_option("--oracle-budget", args.oracle_budget, "Max associations the oracle enumerates")
        ->capture_default_str();
    run_cmd->add_option("--exhaustive-cap", args.exhaustive_cap, "Soft cap on exhaustive candidate size")
        ->capture_default_str();
    run_cmd->add_flag("--allow-large-exhaustive", args.allow_large_exhaustive, "Lift the exhaustive soft cap");
    run_cmd->add_option("--threads", args.threads, "Worker threads")->capture_default_str();
    run_cmd->add_flag("--timing", args.timing, "Add per-record wall time to trials.csv");
    run_cmd->add_flag("-q,--quiet", args.quiet, "No progress or summary on the console");

    auto* scenario_cmd = app.add_subcommand("scenario", "Print a scenario file with every default value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (scenario_cmd->parsed()) {
            std::cout << cellfree::format_scenario(cellfree::NetworkConfig{});
            return kExitOk;
        }
        return run(args);
    } catch (const cellfree::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const cellfree::OracleBudgetError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const cellfree::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
