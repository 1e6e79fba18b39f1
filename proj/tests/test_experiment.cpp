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


#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "cellfree/errors.hpp"
#include "cellfree/experiment.hpp"

using namespace cellfree;

namespace {

CampaignSpec small_spec() {
    CampaignSpec spec;
    spec.setups = {Setup::II};
    spec.schemes = {SchemeId::Fixed, SchemeId::AddAp, SchemeId::Exhaustive};
    spec.candidate_sizes = {3};
    spec.num_users = 16;
    spec.num_trials = 4;
    spec.seed = 11;
    return spec;
}

std::string csv_of(const CampaignResult& r) {
    std::ostringstream os;
    write_trials_csv(r.records, os);
    return os.str();
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("plotting-position quantiles") {
    CHECK(plotting_quantile({3.0}, 0.5) == 3.0);
    CHECK(plotting_quantile({1.0, 2.0, 3.0}, 0.5) == 2.0);
    CHECK(plotting_quantile({1.0, 2.0, 3.0}, 0.0) == 1.0);
    CHECK(plotting_quantile({1.0, 2.0, 3.0}, 1.0) == 3.0);
    CHECK(plotting_quantile({0.0, 10.0, 20.0, 30.0}, 0.5) == doctest::Approx(15.0));  // rank 2.5
    CHECK_THROWS_AS(plotting_quantile({}, 0.5), ConfigError);
}

TEST_CASE("CDF groups") {
    TrialRecord r;
    r.converged = true;
    r.gamma_star_db = 3.0;
    auto groups = summarize_cdf({r});
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].values_db == std::vector<double>{3.0});
    CHECK(groups[0].ranks == std::vector<double>{0.5});
    CHECK(groups[0].median_db == 3.0);

    std::vector<TrialRecord> recs(3, r);
    recs[0].gamma_star_db = 3.0;
    recs[1].gamma_star_db = 1.0;
    recs[2].gamma_star_db = 2.0;
    TrialRecord failed = r;
    failed.converged = false;
    recs.push_back(failed);
    TrialRecord other = r;
    other.scheme = SchemeId::Exhaustive;
    recs.push_back(other);
    groups = summarize_cdf(recs);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].median_db == 2.0);
    CHECK(groups[0].trials == 4);
    CHECK(groups[0].failures == 1);
    CHECK(groups[0].ranks == std::vector<double>{0.25, 0.5, 0.75});
    CHECK(groups[1].scheme == SchemeId::Exhaustive);
}

TEST_CASE("table setups share one area") {
    const double ref = reference_area();
    CHECK(ref == doctest::Approx(550.0 * 5.0 * 100.0 * std::sqrt(3.0) / 2.0));
    for (Setup s : {Setup::I, Setup::II, Setup::III}) {
        const SetupLayout l = table_setup(s);
        NetworkConfig cfg;
        cfg.num_aps = l.num_aps;
        cfg.inter_ap_distance = l.inter_ap_distance;
        const double area = build_topology(cfg).area.area();
        CHECK(std::abs(area - ref) < 0.05 * ref);
    }
    CHECK(table_setup(Setup::I).num_aps == 9);
    CHECK(table_setup(Setup::I).antennas_per_ap == 16);
    CHECK(table_setup(Setup::I).candidate_size == 1);
    CHECK(table_setup(Setup::II).num_aps == 36);
    CHECK(table_setup(Setup::II).antennas_per_ap == 4);
    CHECK(table_setup(Setup::II).candidate_size == 4);
    CHECK(table_setup(Setup::III).num_aps == 72);
    CHECK(table_setup(Setup::III).antennas_per_ap == 2);
    CHECK(table_setup(Setup::III).candidate_size == 8);
    CHECK(table_setup(Setup::II).inter_ap_distance == doctest::Approx(100.0));
    CHECK_THROWS_AS(table_setup(Setup::Custom), ConfigError);
    for (Setup s : {Setup::I, Setup::II, Setup::III, Setup::Custom}) CHECK(parse_setup(to_string(s)) == s);
    CHECK_THROWS_AS(parse_setup("IV"), ConfigError);
}

TEST_CASE("spec validation") {
    CampaignSpec spec = small_spec();
    CHECK_NOTHROW(spec.validate());
    spec.num_trials = 0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec = small_spec();
    spec.candidate_sizes = {37};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec = small_spec();
    spec.candidate_sizes = {6};
    CHECK_THROWS_AS(spec.validate(), ConfigError);  // exhaustive soft cap
    spec.clustering.allow_large_exhaustive = true;
    CHECK_NOTHROW(spec.validate());
    spec = small_spec();
    spec.schemes.clear();
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("campaign output is deterministic and thread-count independent") {
    const CampaignSpec spec = small_spec();
    const auto a = run_campaign(spec);
    const auto b = run_campaign(spec);
    CampaignSpec threaded = spec;
    threaded.threads = 3;
    const auto c = run_campaign(threaded);
    CHECK(csv_of(a) == csv_of(b));
    CHECK(csv_of(a) == csv_of(c));
    CHECK(a.records.size() == 4 * 3);
    CHECK(a.solver_failures == 0);

    CampaignSpec reseeded = spec;
    reseeded.seed = 12;
    CHECK(csv_of(run_campaign(reseeded)) != csv_of(a));
}

TEST_CASE("records: ordering, pairing, dominance, solution quality") {
    const auto result = run_campaign(small_spec());
    std::map<std::size_t, std::map<SchemeId, const TrialRecord*>> by_trial;
    std::size_t last_trial = 0;
    for (const auto& r : result.records) {
        CHECK(r.trial >= last_trial);
        last_trial = r.trial;
        by_trial[r.trial][r.scheme] = &r;
        REQUIRE(r.converged);
        CHECK(r.sinr_spread < 1e-4);
        CHECK(r.max_power_error <= 1e-10);
        std::size_t users = 0;
        for (auto c : r.cluster_sizes) users += c;
        CHECK(users == 16);
        CHECK(r.cluster_sizes.size() <= 3);
    }
    std::uint64_t previous = 0;
    for (const auto& [trial, recs] : by_trial) {
        REQUIRE(recs.size() == 3);
        const auto* f = recs.at(SchemeId::Fixed);
        const auto* ad = recs.at(SchemeId::AddAp);
        const auto* ex = recs.at(SchemeId::Exhaustive);
        CHECK(f->channel_checksum == ad->channel_checksum);
        CHECK(f->channel_checksum == ex->channel_checksum);
        CHECK(f->channel_checksum != previous);
        previous = f->channel_checksum;
        CHECK(ex->gamma_star_db >= ad->gamma_star_db - 1e-6);
        CHECK(ad->gamma_star_db >= f->gamma_star_db - 1e-6);
        CHECK(f->cluster_sizes.size() == 3);  // fixed: everyone on all 3 candidates
        CHECK(f->cluster_sizes[2] == 16);
    }
}

TEST_CASE("exhaustive benefit is monotone in candidate size") {
    CampaignSpec spec = small_spec();
    spec.schemes = {SchemeId::Exhaustive};
    spec.candidate_sizes = {1, 2, 3, 4};
    spec.epsilon = 1e-12;
    const auto result = run_campaign(spec);
    std::map<std::size_t, std::vector<double>> by_trial;
    for (const auto& r : result.records) {
        REQUIRE(r.converged);
        by_trial[r.trial].push_back(std::pow(10.0, r.gamma_star_db / 10.0));
    }
    for (const auto& [trial, g] : by_trial) {
        REQUIRE(g.size() == 4);
        for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] >= g[i - 1] * (1.0 - 1e-9));
    }
}

TEST_CASE("oracle cross-check inside a campaign") {
    CampaignSpec spec;
    spec.setups = {Setup::Custom};
    spec.network.num_aps = 9;
    spec.network.antennas_per_ap = 4;
    spec.schemes = {SchemeId::Fixed, SchemeId::AddAp};
    spec.candidate_sizes = {3};
    spec.num_users = 5;
    spec.num_trials = 3;
    spec.p_max_dbm = 30.0;
    spec.oracle_check = true;
    const auto result = run_campaign(spec);
    CHECK(result.oracle_failures == 0);
    for (const auto& r : result.records) {
        CHECK(r.oracle_checked);
        CHECK(r.oracle_ok);
        CHECK(r.oracle_gamma_error < 1e-6);
        CHECK(r.oracle_power_error < 1e-6);
    }
}

TEST_CASE("CSV and JSON layout") {
    CampaignSpec spec = small_spec();
    spec.num_trials = 1;
    spec.schemes = {SchemeId::Fixed};
    const auto result = run_campaign(spec);
    std::ostringstream csv;
    write_trials_csv(result.records, csv);
    const std::string text = csv.str();
    CHECK(text.rfind("trial,setup,scheme,candidate_size,converged,gamma_star_db,", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.find("wall_time_s") == std::string::npos);
    CHECK(text.back() == '\n');

    std::ostringstream timed;
    write_trials_csv(result.records, timed, true);
    CHECK(timed.str().find("wall_time_s") != std::string::npos);

    std::ostringstream js;
    write_summary_json(spec, result, summarize_cdf(result.records), js);
    CHECK(js.str().find("\"version\"") != std::string::npos);
    CHECK(js.str().find("\"groups\"") != std::string::npos);
    CHECK_FALSE(version_string().empty());
}

}  // TEST_SUITE
