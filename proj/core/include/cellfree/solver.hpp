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
#include <functional>
#include <optional>
#include <vector>

#include "cellfree/sinr.hpp"

namespace cellfree {

struct SolverConfig {
    double p_max = 0.1;
    double epsilon = 1e-8;
    std::size_t max_iterations = 10000;
    /// Starting powers; all users at p_max when empty.
    std::optional<PowerVector> p0;
    /// Called with (t, p(t)) after every update.
    std::function<void(std::size_t, const PowerVector&)> observer;

    void validate(std::size_t num_users) const;
};

/// Output of both the fixed-point solver and the spectral oracle.
struct MaxMinSolution {
    PowerVector p_star;
    std::vector<ClusterIndicator> clusters;  ///< one per user
    double gamma_star = 0.0;
    std::size_t iterations = 0;
    std::vector<double> residual_trace;
};

/// T(p) together with the cluster that attains each user's minimum.
struct InterferenceProfile {
    Eigen::VectorXd values;
    std::vector<std::size_t> argmin;
};

InterferenceProfile evaluate_interference(const CoefficientTable& table, const PowerVector& p);

/// One normalized step: (p_max / max_n T_n) * T.
PowerVector normalized_update(const Eigen::VectorXd& t, double p_max);

/// Joint max-min power control and cluster selection by the normalized
/// fixed-point iteration p <- (p_max / max_n T_n(p)) T(p). Stops once
/// max_n |p_n - (p_max / max T(p)) T_n(p)| / p_n < epsilon; the reported
/// clusters are the argmins at the final iterate.
///
/// Throws NonConvergenceError (carrying the residual trace) after
/// max_iterations updates.
MaxMinSolution solve_max_min(const CoefficientTable& table, const SolverConfig& config);

/// Builds the coefficient table and runs solve_max_min.
MaxMinSolution solve_max_min(const ChannelRealization& channel,
                             const std::vector<std::vector<ClusterIndicator>>& cluster_lists, double noise_power,
                             const SolverConfig& config);

/// SINR_n = p_n / I_n(p, D_n) for the given clusters, via the affine tables.
Eigen::VectorXd achieved_sinr(const CoefficientTable& table, const MaxMinSolution& solution);

}  // namespace cellfree
