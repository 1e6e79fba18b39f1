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

#include <algorithm>
#include <random>
#include <set>

#include "cellfree/clustering.hpp"
#include "cellfree/errors.hpp"
#include "test_support.hpp"

using namespace cellfree;

namespace {

Eigen::MatrixXd column(std::initializer_list<double> values) {
    Eigen::MatrixXd g(static_cast<Eigen::Index>(values.size()), 1);
    Eigen::Index i = 0;
    for (double v : values) g(i++, 0) = v;
    return g;
}

std::set<std::size_t> as_set(const ClusterIndicator& c) { return {c.members.begin(), c.members.end()}; }

std::size_t binomial(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_SUITE("clustering") {

TEST_CASE("candidate set keeps the strongest APs, strongest first") {
    const CandidateSet c = candidate_set(column({0.1, 0.5, 0.3}), 0, 2);
    CHECK(c.aps == std::vector<std::size_t>{1, 2});
    CHECK(candidate_set(column({0.1, 0.5, 0.3}), 0, 3).aps == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("equal gains break ties by lower AP index") {
    CHECK(candidate_set(column({0.2, 0.7, 0.2, 0.2}), 0, 3).aps == std::vector<std::size_t>{1, 0, 2});
    CHECK(candidate_set(column({1.0, 1.0, 1.0}), 0, 2).aps == std::vector<std::size_t>{0, 1});
}

TEST_CASE("candidate size outside [1, R] is rejected") {
    const Eigen::MatrixXd g = column({0.1, 0.5, 0.3});
    CHECK_THROWS_AS(candidate_set(g, 0, 4), ConfigError);
    CHECK_THROWS_AS(candidate_set(g, 0, 0), ConfigError);
    CHECK_THROWS_AS(candidate_set(g, 1, 1), ConfigError);
}

TEST_CASE("candidate sets against a full sort") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        Eigen::MatrixXd g(12, 1);
        for (Eigen::Index r = 0; r < 12; ++r) g(r, 0) = u(rng);
        std::vector<std::size_t> idx(12);
        for (std::size_t i = 0; i < 12; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) {
            return g(static_cast<Eigen::Index>(a), 0) > g(static_cast<Eigen::Index>(b), 0);
        });
        const std::size_t m = 1 + static_cast<std::size_t>(rep % 12);
        CHECK(candidate_set(g, 0, m).aps == std::vector<std::size_t>(idx.begin(), idx.begin() + static_cast<long>(m)));
    }
}

TEST_CASE("scheme cardinalities") {
    for (std::size_t m = 1; m <= 5; ++m) {
        CandidateSet c{0, {}};
        for (std::size_t i = 0; i < m; ++i) c.aps.push_back(10 + i);
        CHECK(enumerate_clusters(c, SchemeId::Fixed).size() == 1);
        CHECK(enumerate_clusters(c, SchemeId::AddAp).size() == m);
        CHECK(enumerate_clusters(c, SchemeId::Exhaustive).size() == (std::size_t{1} << m) - 1);
    }
}

TEST_CASE("add-AP clusters are nested prefixes") {
    const CandidateSet c{3, {7, 2, 5, 0}};
    const auto list = enumerate_clusters(c, SchemeId::AddAp);
    REQUIRE(list.size() == 4);
    for (std::size_t k = 0; k < list.size(); ++k) {
        CHECK(list[k].user == 3);
        CHECK(list[k].members == std::vector<std::size_t>(c.aps.begin(), c.aps.begin() + static_cast<long>(k + 1)));
    }
    CHECK(enumerate_clusters(c, SchemeId::Fixed).front().members == c.aps);
}

TEST_CASE("exhaustive ordering: cardinality then lexicographic positions") {
    const CandidateSet c{0, {4, 1, 9}};
    const auto list = enumerate_clusters(c, SchemeId::Exhaustive);
    const std::vector<std::vector<std::size_t>> expected{{4}, {1}, {9}, {4, 1}, {4, 9}, {1, 9}, {4, 1, 9}};
    REQUIRE(list.size() == expected.size());
    for (std::size_t i = 0; i < list.size(); ++i) CHECK(list[i].members == expected[i]);
}

TEST_CASE("exhaustive list equals the power set") {
    for (std::size_t m = 1; m <= 8; ++m) {
        CandidateSet c{0, {}};
        for (std::size_t i = 0; i < m; ++i) c.aps.push_back(3 * i + 1);
        ClusteringOptions opts;
        opts.allow_large_exhaustive = true;
        const auto list = enumerate_clusters(c, SchemeId::Exhaustive, opts);
        std::set<std::set<std::size_t>> got;
        for (const auto& s : list) got.insert(as_set(s));
        std::set<std::set<std::size_t>> want;
        for (const auto& s : testing::all_subsets(0, c.aps)) want.insert(as_set(s));
        CHECK(got.size() == list.size());  // no duplicates
        CHECK(got == want);
        for (std::size_t k = 1; k <= m; ++k) {
            CHECK(static_cast<std::size_t>(std::count_if(list.begin(), list.end(), [&](const auto& s) {
                      return s.size() == k;
                  })) == binomial(m, k));
        }
        for (std::size_t i = 1; i < list.size(); ++i) CHECK(list[i - 1].size() <= list[i].size());
    }
}

TEST_CASE("scheme inclusion: fixed within add within exhaustive") {
    std::mt19937_64 rng(23);
    ClusteringOptions opts;
    opts.allow_large_exhaustive = true;
    for (int rep = 0; rep < 50; ++rep) {
        const auto inst = testing::random_instance(10, 1, 3, rng);
        const std::size_t m = 1 + static_cast<std::size_t>(rep % 8);
        const auto fixed = build_cluster_lists(inst.gains, m, SchemeId::Fixed, opts);
        const auto add = build_cluster_lists(inst.gains, m, SchemeId::AddAp, opts);
        const auto exh = build_cluster_lists(inst.gains, m, SchemeId::Exhaustive, opts);
        for (std::size_t n = 0; n < 3; ++n) {
            for (const auto& c : fixed[n]) CHECK(std::find(add[n].begin(), add[n].end(), c) != add[n].end());
            for (const auto& c : add[n]) CHECK(std::find(exh[n].begin(), exh[n].end(), c) != exh[n].end());
            for (const auto& c : exh[n]) {
                CHECK(c.user == n);
                CHECK_FALSE(c.members.empty());
                for (auto ap : c.members) CHECK(c.contains(ap));
            }
        }
    }
}

TEST_CASE("exhaustive soft and hard caps") {
    CandidateSet c{0, {}};
    for (std::size_t i = 0; i < 6; ++i) c.aps.push_back(i);
    CHECK_THROWS_AS(enumerate_clusters(c, SchemeId::Exhaustive), ConfigError);
    ClusteringOptions opts;
    opts.allow_large_exhaustive = true;
    CHECK(enumerate_clusters(c, SchemeId::Exhaustive, opts).size() == 63);
    CHECK_NOTHROW(enumerate_clusters(c, SchemeId::AddAp));

    CandidateSet big{0, {}};
    for (std::size_t i = 0; i < kExhaustiveHardCap + 1; ++i) big.aps.push_back(i);
    CHECK_THROWS_AS(enumerate_clusters(big, SchemeId::Exhaustive, opts), ConfigError);
}

TEST_CASE("cluster mask and names") {
    const ClusterIndicator c{0, {2, 0}};
    CHECK(c.mask(4) == std::vector<bool>{true, false, true, false});
    CHECK_FALSE(c.contains(1));
    for (auto s : {SchemeId::Fixed, SchemeId::AddAp, SchemeId::Exhaustive}) CHECK(parse_scheme(to_string(s)) == s);
    CHECK_THROWS_AS(parse_scheme("bogus"), ConfigError);
}

}  // TEST_SUITE
