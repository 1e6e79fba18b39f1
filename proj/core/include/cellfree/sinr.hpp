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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cellfree/channel.hpp"
#include "cellfree/clustering.hpp"

namespace cellfree {

/// Uplink transmit powers in watts, one entry per user.
using PowerVector = Eigen::VectorXd;

/// Below this |h_n^H D_n h_n| the MRC gain is treated as degenerate.
inline constexpr double kDegenerateGain = 1e-30;

/// Affine form of the MRC interference function for one (user, cluster):
///   I_n(p) = z^T p + sigma_sq
/// with z_i = |h_n^H D h_i|^2 / |h_n^H D h_n|^2 (z_n = 0) and
/// sigma_sq = noise / (h_n^H D h_n).
struct AffineInterference {
    std::size_t user = 0;
    ClusterIndicator cluster;
    Eigen::VectorXd z;
    double sigma_sq = 0.0;
};

/// Per-user list of affine coefficients, one entry per enumerated cluster,
/// in enumeration order.
using CoefficientTable = std::vector<std::vector<AffineInterference>>;

/// h_n^H D_n h_i, summed over the K-antenna blocks of the cluster's APs.
std::complex<double> effective_inner(const ChannelRealization& channel, std::size_t user,
                                     std::size_t other, const ClusterIndicator& cluster);

/// Throws DegenerateChannelError when |h_n^H D_n h_n| < kDegenerateGain.
AffineInterference affine_coeffs(const ChannelRealization& channel, std::size_t user,
                                 const ClusterIndicator& cluster, double noise_power);

/// z^T p + sigma_sq.
double interference(const PowerVector& p, const AffineInterference& coeffs);

/// I_n(p, D_n) straight from the channel vectors (numerator over |h_n^H D h_n|^2).
double direct_interference(const PowerVector& p, const ChannelRealization& channel, std::size_t user,
                           const ClusterIndicator& cluster, double noise_power);

struct BestCluster {
    double value = 0.0;      ///< T_n(p)
    std::size_t index = 0;   ///< position in the coefficient list
};

/// Pointwise minimum over the user's clusters; the first minimum in list order wins.
BestCluster best_cluster(const PowerVector& p, std::span<const AffineInterference> coeffs);

/// MRC SINR of user n evaluated directly from the channel:
///   p_n |h_n^H D h_n|^2 / (sum_{i != n} p_i |h_n^H D h_i|^2 + noise * h_n^H D h_n)
double sinr_value(const PowerVector& p, const ChannelRealization& channel, std::size_t user,
                  const ClusterIndicator& cluster, double noise_power);

/// Affine coefficients for every (user, cluster) pair. Per-AP inner products
/// are computed once per user and summed per cluster.
CoefficientTable build_coefficient_table(const ChannelRealization& channel,
                                         const std::vector<std::vector<ClusterIndicator>>& cluster_lists,
                                         double noise_power);

}  // namespace cellfree
