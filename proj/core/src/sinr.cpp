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

#include "cellfree/sinr.hpp"

#include <cmath>
#include <map>
#include <string>

#include "cellfree/errors.hpp"

namespace cellfree {

namespace {

using RowVectorXcd = Eigen::Matrix<std::complex<double>, 1, Eigen::Dynamic>;

void check_cluster(const ChannelRealization& channel, std::size_t user, const ClusterIndicator& cluster) {
    if (user >= channel.num_users()) throw ConfigError("user index out of range");
    if (cluster.members.empty()) throw ConfigError("empty cluster for user " + std::to_string(user));
    for (auto ap : cluster.members) {
        if (ap >= channel.num_aps) throw ConfigError("cluster AP index out of range");
    }
}

/// h_n^H D h_i for all i at once.
RowVectorXcd cluster_products(const ChannelRealization& channel, std::size_t user, const ClusterIndicator& cluster) {
    const auto k = static_cast<Eigen::Index>(channel.antennas_per_ap);
    const auto n = static_cast<Eigen::Index>(user);
    RowVectorXcd g = RowVectorXcd::Zero(channel.h.cols());
    for (auto ap : cluster.members) {
        const auto row = static_cast<Eigen::Index>(ap) * k;
        g.noalias() += channel.h.col(n).segment(row, k).adjoint() * channel.h.middleRows(row, k);
    }
    return g;
}

AffineInterference coeffs_from_products(const RowVectorXcd& g, std::size_t user, const ClusterIndicator& cluster,
                                        double noise_power) {
    const auto n = static_cast<Eigen::Index>(user);
    const double own = g(n).real();
    if (!(std::abs(own) >= kDegenerateGain)) {
        throw DegenerateChannelError("degenerate MRC gain for user " + std::to_string(user));
    }
    AffineInterference out;
    out.user = user;
    out.cluster = cluster;
    out.z = g.cwiseAbs2().transpose() / (own * own);
    out.z(n) = 0.0;
    out.sigma_sq = noise_power / own;
    return out;
}

}  // namespace

std::complex<double> effective_inner(const ChannelRealization& channel, std::size_t user, std::size_t other,
                                     const ClusterIndicator& cluster) {
    check_cluster(channel, user, cluster);
    if (other >= channel.num_users()) throw ConfigError("user index out of range");
    std::complex<double> acc{0.0, 0.0};
    for (auto ap : cluster.members) {
        acc += channel.block(ap, user).dot(channel.block(ap, other));
    }
    return acc;
}

AffineInterference affine_coeffs(const ChannelRealization& channel, std::size_t user, const ClusterIndicator& cluster,
                                 double noise_power) {
    check_cluster(channel, user, cluster);
    return coeffs_from_products(cluster_products(channel, user, cluster), user, cluster, noise_power);
}

double interference(const PowerVector& p, const AffineInterference& coeffs) {
    return coeffs.z.dot(p) + coeffs.sigma_sq;
}

double direct_interference(const PowerVector& p, const ChannelRealization& channel, std::size_t user,
                           const ClusterIndicator& cluster, double noise_power) {
    const double own = effective_inner(channel, user, user, cluster).real();
    double num = noise_power * own;
    for (std::size_t i = 0; i < channel.num_users(); ++i) {
        if (i == user) continue;
        num += p(static_cast<Eigen::Index>(i)) * std::norm(effective_inner(channel, user, i, cluster));
    }
    return num / (own * own);
}

BestCluster best_cluster(const PowerVector& p, std::span<const AffineInterference> coeffs) {
    if (coeffs.empty()) throw ConfigError("best_cluster needs at least one cluster");
    BestCluster best{interference(p, coeffs[0]), 0};
    for (std::size_t c = 1; c < coeffs.size(); ++c) {
        const double v = interference(p, coeffs[c]);
        if (v < best.value) best = {v, c};
    }
    return best;
}

double sinr_value(const PowerVector& p, const ChannelRealization& channel, std::size_t user,
                  const ClusterIndicator& cluster, double noise_power) {
    const double own = effective_inner(channel, user, user, cluster).real();
    if (!(std::abs(own) >= kDegenerateGain)) {
        throw DegenerateChannelError("degenerate MRC gain for user " + std::to_string(user));
    }
    double denom = noise_power * own;
    for (std::size_t i = 0; i < channel.num_users(); ++i) {
        if (i == user) continue;
        denom += p(static_cast<Eigen::Index>(i)) * std::norm(effective_inner(channel, user, i, cluster));
    }
    return p(static_cast<Eigen::Index>(user)) * own * own / denom;
}

CoefficientTable build_coefficient_table(const ChannelRealization& channel,
                                         const std::vector<std::vector<ClusterIndicator>>& cluster_lists,
                                         double noise_power) {
    if (cluster_lists.size() != channel.num_users()) {
        throw ConfigError("need one cluster list per user");
    }
    const auto k = static_cast<Eigen::Index>(channel.antennas_per_ap);
    CoefficientTable table(cluster_lists.size());
    for (std::size_t n = 0; n < cluster_lists.size(); ++n) {
        const auto& clusters = cluster_lists[n];
        if (clusters.empty()) throw ConfigError("user " + std::to_string(n) + " has no clusters");

        std::map<std::size_t, RowVectorXcd> per_ap;
        for (const auto& c : clusters) {
            check_cluster(channel, n, c);
            for (auto ap : c.members) {
                if (per_ap.contains(ap)) continue;
                const auto row = static_cast<Eigen::Index>(ap) * k;
                per_ap.emplace(ap, channel.h.col(static_cast<Eigen::Index>(n)).segment(row, k).adjoint() *
                                       channel.h.middleRows(row, k));
            }
        }

        table[n].reserve(clusters.size());
        for (const auto& c : clusters) {
            RowVectorXcd g = RowVectorXcd::Zero(channel.h.cols());
            for (auto ap : c.members) g += per_ap.at(ap);
            table[n].push_back(coeffs_from_products(g, n, c, noise_power));
        }
    }
    return table;
}

}  // namespace cellfree
