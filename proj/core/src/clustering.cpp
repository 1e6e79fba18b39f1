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

#include "cellfree/clustering.hpp"

#include <algorithm>
#include <numeric>

#include "cellfree/errors.hpp"

namespace cellfree {

std::string_view to_string(SchemeId scheme) {
    switch (scheme) {
        case SchemeId::Fixed: return "fixed";
        case SchemeId::AddAp: return "add";
        case SchemeId::Exhaustive: return "exhaustive";
    }
    return "unknown";
}

SchemeId parse_scheme(std::string_view name) {
    if (name == "fixed") return SchemeId::Fixed;
    if (name == "add") return SchemeId::AddAp;
    if (name == "exhaustive") return SchemeId::Exhaustive;
    throw ConfigError("unknown clustering scheme '" + std::string(name) + "' (expected fixed|add|exhaustive)");
}

bool ClusterIndicator::contains(std::size_t ap) const {
    return std::find(members.begin(), members.end(), ap) != members.end();
}

std::vector<bool> ClusterIndicator::mask(std::size_t num_aps) const {
    std::vector<bool> m(num_aps, false);
    for (auto ap : members) m.at(ap) = true;
    return m;
}

CandidateSet candidate_set(const Eigen::MatrixXd& gains, std::size_t user, std::size_t size) {
    const auto num_aps = static_cast<std::size_t>(gains.rows());
    if (size < 1 || size > num_aps) {
        throw ConfigError("candidate size " + std::to_string(size) + " outside [1, " + std::to_string(num_aps) + "]");
    }
    if (user >= static_cast<std::size_t>(gains.cols())) throw ConfigError("user index out of range");

    std::vector<std::size_t> order(num_aps);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto col = static_cast<Eigen::Index>(user);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          const double ga = gains(static_cast<Eigen::Index>(a), col);
                          const double gb = gains(static_cast<Eigen::Index>(b), col);
                          return ga != gb ? ga > gb : a < b;
                      });
    order.resize(size);
    return {user, std::move(order)};
}

std::vector<ClusterIndicator> enumerate_clusters(const CandidateSet& candidate, SchemeId scheme,
                                                 const ClusteringOptions& options) {
    const std::size_t m = candidate.size();
    if (m == 0) throw ConfigError("empty candidate set");

    std::vector<ClusterIndicator> out;
    switch (scheme) {
        case SchemeId::Fixed:
            out.push_back({candidate.user, candidate.aps});
            break;

        case SchemeId::AddAp:
            out.reserve(m);
            for (std::size_t k = 1; k <= m; ++k) {
                out.push_back({candidate.user, {candidate.aps.begin(), candidate.aps.begin() + static_cast<std::ptrdiff_t>(k)}});
            }
            break;

        case SchemeId::Exhaustive: {
            if (m > kExhaustiveHardCap) throw ConfigError("exhaustive candidate set too large to enumerate");
            if (m > options.exhaustive_soft_cap && !options.allow_large_exhaustive) {
                throw ConfigError("exhaustive scheme limited to " + std::to_string(options.exhaustive_soft_cap) +
                                  " candidate APs (override to allow " + std::to_string(m) + ")");
            }
            out.reserve((std::size_t{1} << m) - 1);
            // Combinations of each cardinality in lexicographic order of candidate positions.
            for (std::size_t k = 1; k <= m; ++k) {
                std::vector<std::size_t> idx(k);
                std::iota(idx.begin(), idx.end(), std::size_t{0});
                while (true) {
                    ClusterIndicator c{candidate.user, {}};
                    c.members.reserve(k);
                    for (auto i : idx) c.members.push_back(candidate.aps[i]);
                    out.push_back(std::move(c));

                    std::size_t pos = k;
                    while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
                    if (pos == 0) break;
                    ++idx[pos - 1];
                    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
                }
            }
            break;
        }
    }
    return out;
}

std::vector<std::vector<ClusterIndicator>> build_cluster_lists(const Eigen::MatrixXd& gains,
                                                               std::size_t candidate_size, SchemeId scheme,
                                                               const ClusteringOptions& options) {
    std::vector<std::vector<ClusterIndicator>> lists;
    const auto num_users = static_cast<std::size_t>(gains.cols());
    lists.reserve(num_users);
    for (std::size_t n = 0; n < num_users; ++n) {
        lists.push_back(enumerate_clusters(candidate_set(gains, n, candidate_size), scheme, options));
    }
    return lists;
}

}  // namespace cellfree
