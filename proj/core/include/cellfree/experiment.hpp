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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cellfree/channel.hpp"
#include "cellfree/clustering.hpp"

namespace cellfree {

/// Deployments sharing one geographical area. I: 9 APs x 16 antennas,
/// candidate size 1 (cellular). II: 36 x 4, size 4. III: 72 x 2, size 8.
enum class Setup { I, II, III, Custom };

std::string_view to_string(Setup setup);
Setup parse_setup(std::string_view name);

struct SetupLayout {
    std::size_t num_aps = 0;
    std::size_t antennas_per_ap = 0;
    std::size_t candidate_size = 0;
    double inter_ap_distance = 0.0;
};

/// Bounding-rectangle area of the reference deployment (6 x 6 grid, 100 m spacing).
double reference_area();

/// Spacing that gives an R-AP grid the reference bounding area.
double matched_spacing(std::size_t num_aps);

/// Throws ConfigError for Setup::Custom.
SetupLayout table_setup(Setup setup);

struct CampaignSpec {
    std::vector<Setup> setups{Setup::II};
    /// Channel parameters; also supplies R, K and spacing for Setup::Custom.
    NetworkConfig network;
    std::vector<SchemeId> schemes{SchemeId::Exhaustive};
    /// Empty: use each setup's own candidate size.
    std::vector<std::size_t> candidate_sizes;
    std::size_t num_users = 58;
    std::size_t num_trials = 200;
    double p_max_dbm = 20.0;
    double epsilon = 1e-8;
    /// Weakly coupled users can slow the iteration to ~1e5 steps on the
    /// 72-AP deployment, hence the larger cap than SolverConfig's.
    std::size_t max_iterations = 1000000;
    std::uint64_t seed = 42;
    bool oracle_check = false;
    std::size_t oracle_budget = 1000000;
    double oracle_tolerance = 1e-6;
    ClusteringOptions clustering;
    unsigned threads = 1;

    void validate() const;
};

struct TrialRecord {
    std::size_t trial = 0;
    Setup setup = Setup::II;
    SchemeId scheme = SchemeId::Fixed;
    std::size_t candidate_size = 0;
    bool converged = false;
    double gamma_star_db = 0.0;
    std::size_t iterations = 0;
    /// cluster_sizes[k] = number of users served by k+1 APs.
    std::vector<std::size_t> cluster_sizes;
    /// (max_n SINR_n - min_n SINR_n) / gamma*.
    double sinr_spread = 0.0;
    /// |max_n p_n - p_max| / p_max.
    double max_power_error = 0.0;
    std::uint64_t channel_checksum = 0;
    /// Only meaningful when oracle_checked.
    bool oracle_checked = false;
    bool oracle_ok = false;
    double oracle_gamma_error = 0.0;
    double oracle_power_error = 0.0;
    std::string error;
    double wall_time_s = 0.0;
};

struct CdfGroup {
    Setup setup = Setup::II;
    SchemeId scheme = SchemeId::Fixed;
    std::size_t candidate_size = 0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    /// Sorted gamma* [dB] of converged trials, with ranks k / (T + 1).
    std::vector<double> values_db;
    std::vector<double> ranks;
    double median_db = 0.0;
    double p10_db = 0.0;
    std::vector<std::pair<double, double>> percentiles;  ///< (q, value dB)
};

/// Quantile under the k/(T+1) plotting-position rule with linear
/// interpolation between order statistics. `sorted` must be non-empty.
double plotting_quantile(const std::vector<double>& sorted, double q);

struct CampaignResult {
    std::vector<TrialRecord> records;
    std::size_t solver_failures = 0;
    std::size_t oracle_failures = 0;
    double wall_time_s = 0.0;
};

using ProgressCallback = std::function<void(std::size_t done, std::size_t total)>;

/// Monte Carlo campaign. Every (setup, trial) draws one network and channel
/// from TrialStreams(seed, trial); all schemes and candidate sizes of that
/// trial run on the same realization. Solver failures are recorded, not thrown.
/// Records come back sorted by (trial, setup, scheme, candidate size).
CampaignResult run_campaign(const CampaignSpec& spec, const ProgressCallback& progress = {});

/// One CDF group per (setup, scheme, candidate size) in first-seen order.
std::vector<CdfGroup> summarize_cdf(const std::vector<TrialRecord>& records,
                                    const std::vector<double>& percentile_grid = {0.1, 0.25, 0.5, 0.75, 0.9});

/// CSV with a fixed header, LF line endings. Wall time is only written when
/// `include_timing` is set, so default output is byte-reproducible.
void write_trials_csv(const std::vector<TrialRecord>& records, std::ostream& out, bool include_timing = false);

/// Per-group percentile tables plus a config echo and version string.
void write_summary_json(const CampaignSpec& spec, const CampaignResult& result, const std::vector<CdfGroup>& groups,
                        std::ostream& out);

/// git-describe style version baked in at configure time.
std::string_view version_string();

}  // namespace cellfree
