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

#include "cellfree/solver.hpp"

#include <cmath>
#include <string>

#include "cellfree/errors.hpp"

namespace cellfree {

void SolverConfig::validate(std::size_t num_users) const {
    if (!(p_max > 0.0) || !std::isfinite(p_max)) throw ConfigError("p_max must be positive");
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
    if (p0) {
        if (static_cast<std::size_t>(p0->size()) != num_users) throw ConfigError("p0 has wrong length");
        if (!(p0->array() > 0.0).all()) throw ConfigError("p0 must be strictly positive");
    }
}

InterferenceProfile evaluate_interference(const CoefficientTable& table, const PowerVector& p) {
    InterferenceProfile out;
    out.values.resize(static_cast<Eigen::Index>(table.size()));
    out.argmin.resize(table.size());
    for (std::size_t n = 0; n < table.size(); ++n) {
        const BestCluster best = best_cluster(p, table[n]);
        out.values(static_cast<Eigen::Index>(n)) = best.value;
        out.argmin[n] = best.index;
    }
    return out;
}

PowerVector normalized_update(const Eigen::VectorXd& t, double p_max) {
    return (p_max / t.maxCoeff()) * t;
}

MaxMinSolution solve_max_min(const CoefficientTable& table, const SolverConfig& config) {
    const std::size_t num_users = table.size();
    if (num_users == 0) throw ConfigError("no users");
    config.validate(num_users);

    PowerVector p = config.p0 ? *config.p0 : PowerVector::Constant(static_cast<Eigen::Index>(num_users), config.p_max);
    InterferenceProfile profile = evaluate_interference(table, p);

    MaxMinSolution sol;
    for (std::size_t t = 1; t <= config.max_iterations; ++t) {
        p = normalized_update(profile.values, config.p_max);
        if (config.observer) config.observer(t, p);
        // T(p(t)) serves both the stopping test and the next update.
        profile = evaluate_interference(table, p);
        const PowerVector next = normalized_update(profile.values, config.p_max);
        const double residual = ((p - next).array().abs() / p.array()).maxCoeff();
        sol.residual_trace.push_back(residual);
        if (residual < config.epsilon) {
            sol.iterations = t;
            sol.p_star = std::move(p);
            sol.gamma_star = config.p_max / profile.values.maxCoeff();
            sol.clusters.reserve(num_users);
            for (std::size_t n = 0; n < num_users; ++n) sol.clusters.push_back(table[n][profile.argmin[n]].cluster);
            return sol;
        }
    }
    const std::string what = "fixed-point iteration did not converge in " + std::to_string(config.max_iterations) +
                             " iterations (last residual " + std::to_string(sol.residual_trace.back()) + ")";
    throw NonConvergenceError(what, std::move(sol.residual_trace));
}

MaxMinSolution solve_max_min(const ChannelRealization& channel,
                             const std::vector<std::vector<ClusterIndicator>>& cluster_lists, double noise_power,
                             const SolverConfig& config) {
    return solve_max_min(build_coefficient_table(channel, cluster_lists, noise_power), config);
}

Eigen::VectorXd achieved_sinr(const CoefficientTable& table, const MaxMinSolution& solution) {
    Eigen::VectorXd sinr(static_cast<Eigen::Index>(table.size()));
    for (std::size_t n = 0; n < table.size(); ++n) {
        const AffineInterference* match = nullptr;
        for (const auto& c : table[n]) {
            if (c.cluster == solution.clusters.at(n)) {
                match = &c;
                break;
            }
        }
        if (match == nullptr) throw ConfigError("solution cluster not present in coefficient table");
        const auto i = static_cast<Eigen::Index>(n);
        sinr(i) = solution.p_star(i) / interference(solution.p_star, *match);
    }
    return sinr;
}

}  // namespace cellfree
