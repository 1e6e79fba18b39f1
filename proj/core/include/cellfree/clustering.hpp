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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cellfree {

enum class SchemeId { Fixed, AddAp, Exhaustive };

std::string_view to_string(SchemeId scheme);

/// Accepts "fixed", "add" and "exhaustive". Throws ConfigError otherwise.
SchemeId parse_scheme(std::string_view name);

/// The |M_n| strongest APs of one user, strongest first.
struct CandidateSet {
    std::size_t user = 0;
    std::vector<std::size_t> aps;

    std::size_t size() const { return aps.size(); }
};

/// A serving cluster S_n (equivalently the block-diagonal D_n). Members are
/// kept in candidate order, so members.front() is the user's strongest AP.
struct ClusterIndicator {
    std::size_t user = 0;
    std::vector<std::size_t> members;

    bool contains(std::size_t ap) const;
    std::size_t size() const { return members.size(); }

    /// Per-AP diagonal of D_n over all R APs (true = identity block).
    std::vector<bool> mask(std::size_t num_aps) const;

    friend bool operator==(const ClusterIndicator&, const ClusterIndicator&) = default;
};

struct ClusteringOptions {
    /// Largest candidate set the exhaustive scheme accepts without `allow_large_exhaustive`.
    std::size_t exhaustive_soft_cap = 5;
    bool allow_large_exhaustive = false;
};

/// Subsets are materialized, so this bound holds even with the override.
inline constexpr std::size_t kExhaustiveHardCap = 20;

/// Top-m APs by beta_rn for user n, ties broken by ascending AP index.
CandidateSet candidate_set(const Eigen::MatrixXd& gains, std::size_t user, std::size_t size);

/// Cluster family D_n^x. Fixed: the whole candidate set. AddAp: nested
/// top-1..top-|M| prefixes. Exhaustive: every non-empty subset, ordered by
/// cardinality and then lexicographically over candidate positions.
std::vector<ClusterIndicator> enumerate_clusters(const CandidateSet& candidate, SchemeId scheme,
                                                 const ClusteringOptions& options = {});

/// enumerate_clusters for every user of a gain matrix.
std::vector<std::vector<ClusterIndicator>> build_cluster_lists(const Eigen::MatrixXd& gains,
                                                               std::size_t candidate_size, SchemeId scheme,
                                                               const ClusteringOptions& options = {});

}  // namespace cellfree
