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

#include "cellfree/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "cellfree/errors.hpp"
#include "cellfree/solver.hpp"
#include "cellfree/spectral.hpp"
#include "cellfree/units.hpp"

#ifndef CELLFREE_VERSION_STRING
#define CELLFREE_VERSION_STRING "unknown"
#endif

namespace cellfree {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

NetworkConfig config_for(const CampaignSpec& spec, Setup setup) {
    NetworkConfig cfg = spec.network;
    if (setup != Setup::Custom) {
        const SetupLayout layout = table_setup(setup);
        cfg.num_aps = layout.num_aps;
        cfg.antennas_per_ap = layout.antennas_per_ap;
        cfg.inter_ap_distance = layout.inter_ap_distance;
    }
    cfg.num_users = spec.num_users;
    cfg.rng_seed = spec.seed;
    return cfg;
}

std::vector<std::size_t> sizes_for(const CampaignSpec& spec, Setup setup) {
    if (!spec.candidate_sizes.empty()) return spec.candidate_sizes;
    if (setup == Setup::Custom) throw ConfigError("custom setup needs an explicit candidate size");
    return {table_setup(setup).candidate_size};
}

void check_oracle(const CoefficientTable& table, const MaxMinSolution& alg, double p_max, const CampaignSpec& spec,
                  TrialRecord& rec) {
    if (association_count(table) > spec.oracle_budget) return;
    rec.oracle_checked = true;
    try {
        OracleOptions opts;
        opts.p_max = p_max;
        opts.budget = spec.oracle_budget;
        const MaxMinSolution ref = oracle_max_min(table, opts);
        rec.oracle_gamma_error = std::abs(alg.gamma_star - ref.gamma_star) / ref.gamma_star;
        rec.oracle_power_error = (alg.p_star - ref.p_star).cwiseAbs().maxCoeff() / p_max;
        rec.oracle_ok = rec.oracle_gamma_error < spec.oracle_tolerance && rec.oracle_power_error < spec.oracle_tolerance;
    } catch (const NumericalError& e) {
        rec.oracle_ok = false;
        rec.error = std::string("oracle: ") + e.what();
    }
}

std::vector<TrialRecord> run_unit(const CampaignSpec& spec, Setup setup, std::size_t trial) {
    const NetworkConfig cfg = config_for(spec, setup);
    TrialStreams streams = TrialStreams::make(spec.seed, trial);
    const NetworkInstance net = make_network(cfg, streams);
    const ChannelRealization channel = draw_channel(net.gains, cfg, streams.fading);
    const std::uint64_t checksum = channel.checksum();
    const double noise = cfg.noise_power_watts();
    const double p_max = dbm_to_watts(spec.p_max_dbm);

    SolverConfig solver;
    solver.p_max = p_max;
    solver.epsilon = spec.epsilon;
    solver.max_iterations = spec.max_iterations;

    std::vector<TrialRecord> out;
    for (const SchemeId scheme : spec.schemes) {
        for (const std::size_t cs : sizes_for(spec, setup)) {
            const auto start = Clock::now();
            TrialRecord rec;
            rec.trial = trial;
            rec.setup = setup;
            rec.scheme = scheme;
            rec.candidate_size = cs;
            rec.channel_checksum = checksum;
            rec.cluster_sizes.assign(cs, 0);

            const auto lists = build_cluster_lists(net.gains, cs, scheme, spec.clustering);
            try {
                const CoefficientTable table = build_coefficient_table(channel, lists, noise);
                const MaxMinSolution sol = solve_max_min(table, solver);
                rec.converged = true;
                rec.gamma_star_db = linear_to_db(sol.gamma_star);
                rec.iterations = sol.iterations;
                for (const auto& c : sol.clusters) ++rec.cluster_sizes.at(c.size() - 1);
                const Eigen::VectorXd sinr = achieved_sinr(table, sol);
                rec.sinr_spread = (sinr.maxCoeff() - sinr.minCoeff()) / sol.gamma_star;
                rec.max_power_error = std::abs(sol.p_star.maxCoeff() - p_max) / p_max;
                if (spec.oracle_check) check_oracle(table, sol, p_max, spec, rec);
            } catch (const NonConvergenceError& e) {
                rec.iterations = e.residuals().size();
                rec.error = e.what();
            } catch (const DegenerateChannelError& e) {
                rec.error = e.what();
            }
            rec.wall_time_s = seconds_since(start);
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string histogram_field(const std::vector<std::size_t>& sizes) {
    std::string s;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (k) s += ';';
        s += std::to_string(sizes[k]);
    }
    return s;
}

}  // namespace

std::string_view to_string(Setup setup) {
    switch (setup) {
        case Setup::I: return "I";
        case Setup::II: return "II";
        case Setup::III: return "III";
        case Setup::Custom: return "custom";
    }
    return "unknown";
}

Setup parse_setup(std::string_view name) {
    if (name == "I") return Setup::I;
    if (name == "II") return Setup::II;
    if (name == "III") return Setup::III;
    if (name == "custom") return Setup::Custom;
    throw ConfigError("unknown setup '" + std::string(name) + "' (expected I|II|III|custom)");
}

double reference_area() {
    NetworkConfig cfg;
    cfg.num_aps = 36;
    cfg.inter_ap_distance = 100.0;
    return build_topology(cfg).area.area();
}

double matched_spacing(std::size_t num_aps) {
    NetworkConfig cfg;
    cfg.num_aps = num_aps;
    cfg.inter_ap_distance = 1.0;
    const double unit_area = build_topology(cfg).area.area();
    if (!(unit_area > 0.0)) throw ConfigError("a single-row grid has no area to match");
    return std::sqrt(reference_area() / unit_area);
}

SetupLayout table_setup(Setup setup) {
    switch (setup) {
        case Setup::I: return {9, 16, 1, matched_spacing(9)};
        case Setup::II: return {36, 4, 4, 100.0};
        case Setup::III: return {72, 2, 8, matched_spacing(72)};
        case Setup::Custom: break;
    }
    throw ConfigError("custom setup has no fixed layout");
}

void CampaignSpec::validate() const {
    if (setups.empty()) throw ConfigError("at least one setup required");
    if (schemes.empty()) throw ConfigError("at least one scheme required");
    if (num_trials < 1) throw ConfigError("num_trials must be >= 1");
    if (num_users < 1) throw ConfigError("num_users must be >= 1");
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (!std::isfinite(p_max_dbm)) throw ConfigError("p_max_dbm must be finite");
    for (const Setup s : setups) {
        NetworkConfig cfg = config_for(*this, s);
        cfg.validate();
        build_topology(cfg);
        for (const std::size_t cs : sizes_for(*this, s)) {
            if (cs < 1 || cs > cfg.num_aps) {
                throw ConfigError("candidate size " + std::to_string(cs) + " invalid for setup " +
                                  std::string(to_string(s)));
            }
            for (const SchemeId scheme : schemes) {
                if (scheme == SchemeId::Exhaustive && cs > clustering.exhaustive_soft_cap &&
                    !clustering.allow_large_exhaustive) {
                    throw ConfigError("exhaustive scheme limited to " + std::to_string(clustering.exhaustive_soft_cap) +
                                      " candidate APs; pass the override flag for size " + std::to_string(cs));
                }
                if (scheme == SchemeId::Exhaustive && cs > kExhaustiveHardCap) {
                    throw ConfigError("exhaustive candidate size above hard cap");
                }
            }
        }
    }
}

double plotting_quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw ConfigError("quantile of empty sample");
    const double t = static_cast<double>(sorted.size());
    const double pos = std::clamp(q * (t + 1.0), 1.0, t);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    if (lo >= sorted.size()) return sorted.back();
    return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

CampaignResult run_campaign(const CampaignSpec& spec, const ProgressCallback& progress) {
    spec.validate();
    const auto start = Clock::now();
    const std::size_t num_setups = spec.setups.size();
    const std::size_t units = spec.num_trials * num_setups;

    std::vector<std::vector<TrialRecord>> slots(units);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;

    auto worker = [&] {
        for (std::size_t u = next++; u < units; u = next++) {
            slots[u] = run_unit(spec, spec.setups[u % num_setups], u / num_setups);
            const std::size_t finished = ++done;
            if (progress) {
                const std::lock_guard lock(progress_mutex);
                progress(finished, units);
            }
        }
    };

    const unsigned threads = std::max(1u, spec.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    CampaignResult result;
    for (auto& slot : slots) {
        for (auto& rec : slot) {
            if (!rec.converged) ++result.solver_failures;
            if (rec.oracle_checked && !rec.oracle_ok) ++result.oracle_failures;
            result.records.push_back(std::move(rec));
        }
    }
    result.wall_time_s = seconds_since(start);
    return result;
}

std::vector<CdfGroup> summarize_cdf(const std::vector<TrialRecord>& records, const std::vector<double>& grid) {
    std::vector<CdfGroup> groups;
    auto find_group = [&](const TrialRecord& r) -> CdfGroup& {
        for (auto& g : groups) {
            if (g.setup == r.setup && g.scheme == r.scheme && g.candidate_size == r.candidate_size) return g;
        }
        CdfGroup g;
        g.setup = r.setup;
        g.scheme = r.scheme;
        g.candidate_size = r.candidate_size;
        groups.push_back(std::move(g));
        return groups.back();
    };

    for (const auto& r : records) {
        CdfGroup& g = find_group(r);
        ++g.trials;
        if (r.converged) g.values_db.push_back(r.gamma_star_db);
        else ++g.failures;
    }

    for (auto& g : groups) {
        std::sort(g.values_db.begin(), g.values_db.end());
        const double t = static_cast<double>(g.values_db.size());
        g.ranks.resize(g.values_db.size());
        for (std::size_t k = 0; k < g.values_db.size(); ++k) g.ranks[k] = static_cast<double>(k + 1) / (t + 1.0);
        if (g.values_db.empty()) continue;
        g.median_db = plotting_quantile(g.values_db, 0.5);
        g.p10_db = plotting_quantile(g.values_db, 0.1);
        for (const double q : grid) g.percentiles.emplace_back(q, plotting_quantile(g.values_db, q));
    }
    return groups;
}

void write_trials_csv(const std::vector<TrialRecord>& records, std::ostream& out, bool include_timing) {
    out << "trial,setup,scheme,candidate_size,converged,gamma_star_db,iterations,cluster_sizes,"
           "sinr_spread_rel,max_power_rel_err,channel_checksum,oracle_checked,oracle_gamma_rel_err,"
           "oracle_power_err";
    if (include_timing) out << ",wall_time_s";
    out << '\n';
    for (const auto& r : records) {
        char checksum[24];
        std::snprintf(checksum, sizeof(checksum), "%016llx", static_cast<unsigned long long>(r.channel_checksum));
        out << r.trial << ',' << to_string(r.setup) << ',' << to_string(r.scheme) << ',' << r.candidate_size << ','
            << (r.converged ? 1 : 0) << ',' << (r.converged ? format_double(r.gamma_star_db) : "nan") << ','
            << r.iterations << ',' << histogram_field(r.cluster_sizes) << ',' << format_double(r.sinr_spread) << ','
            << format_double(r.max_power_error) << ',' << checksum << ',' << (r.oracle_checked ? 1 : 0) << ','
            << (r.oracle_checked ? format_double(r.oracle_gamma_error) : "") << ','
            << (r.oracle_checked ? format_double(r.oracle_power_error) : "");
        if (include_timing) out << ',' << format_double(r.wall_time_s);
        out << '\n';
    }
}

void write_summary_json(const CampaignSpec& spec, const CampaignResult& result, const std::vector<CdfGroup>& groups,
                        std::ostream& out) {
    using nlohmann::json;
    json j;
    j["version"] = std::string(version_string());

    json cfg;
    json setups = json::array();
    for (const Setup s : spec.setups) setups.push_back(std::string(to_string(s)));
    json schemes = json::array();
    for (const SchemeId s : spec.schemes) schemes.push_back(std::string(to_string(s)));
    cfg["setups"] = setups;
    cfg["schemes"] = schemes;
    cfg["candidate_sizes"] = spec.candidate_sizes;
    cfg["num_users"] = spec.num_users;
    cfg["num_trials"] = spec.num_trials;
    cfg["p_max_dbm"] = spec.p_max_dbm;
    cfg["epsilon"] = spec.epsilon;
    cfg["max_iterations"] = spec.max_iterations;
    cfg["seed"] = spec.seed;
    cfg["oracle_check"] = spec.oracle_check;
    cfg["oracle_budget"] = spec.oracle_budget;
    cfg["network"] = {
        {"num_aps", spec.network.num_aps},
        {"antennas_per_ap", spec.network.antennas_per_ap},
        {"inter_ap_distance", spec.network.inter_ap_distance},
        {"ap_height_offset", spec.network.ap_height_offset},
        {"pathloss_intercept_db", spec.network.pathloss_intercept_db},
        {"pathloss_exponent_scale", spec.network.pathloss_exponent_scale},
        {"shadow_std_db", spec.network.shadow_std_db},
        {"shadow_decorrelation_distance", spec.network.shadow_decorrelation_distance},
        {"noise_power_dbm", spec.network.noise_power_dbm},
    };
    j["config"] = cfg;

    json gs = json::array();
    for (const auto& g : groups) {
        json pct = json::array();
        for (const auto& [q, v] : g.percentiles) pct.push_back({{"q", q}, {"gamma_star_db", v}});
        json cdf = json::array();
        for (std::size_t k = 0; k < g.values_db.size(); ++k) cdf.push_back({g.values_db[k], g.ranks[k]});
        gs.push_back({{"setup", std::string(to_string(g.setup))},
                      {"scheme", std::string(to_string(g.scheme))},
                      {"candidate_size", g.candidate_size},
                      {"trials", g.trials},
                      {"failures", g.failures},
                      {"median_db", g.median_db},
                      {"p10_db", g.p10_db},
                      {"percentiles", pct},
                      {"cdf", cdf}});
    }
    j["groups"] = gs;
    j["solver_failures"] = result.solver_failures;
    j["oracle_failures"] = result.oracle_failures;
    j["wall_time_s"] = result.wall_time_s;
    out << j.dump(2) << '\n';
}

std::string_view version_string() { return CELLFREE_VERSION_STRING; }

}  // namespace cellfree
