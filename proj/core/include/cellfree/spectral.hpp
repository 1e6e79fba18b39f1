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

// Brute-force characterization of the max-min optimum through spectral radii.
//
// For a fixed association D (one cluster per user) the interference map is
// affine, I(p, D) = Z(D) p + sigma(D). With
//
//     Z_j(D) = Z(D) + sigma(D) e_j^T / p_max
//
// the optimum is
//
//     gamma* = 1 / min_D max_j rho(Z_j(D)),      D* = the minimizing D,
//     p*     = gamma* (I - gamma* Z(D*))^{-1} sigma(D*).
//
// Enumerating every association is exponential in the number of users, so
// this module exists to cross-check solve_max_min on small instances.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cellfree/solver.hpp"

namespace cellfree {

struct GainMatrix {
    Eigen::MatrixXd z;        ///< N x N, zero diagonal
    Eigen::VectorXd sigma;    ///< effective noise offsets, > 0
    std::vector<ClusterIndicator> association;

    std::size_t num_users() const { return static_cast<std::size_t>(z.rows()); }
};

/// Rows z_n / sigma_n taken from affine_coeffs for each user's assigned cluster.
GainMatrix build_gain_matrix(const ChannelRealization& channel, const std::vector<ClusterIndicator>& association,
                             double noise_power);

/// Same, from precomputed tables; choice[n] indexes table[n].
GainMatrix build_gain_matrix(const CoefficientTable& table, const std::vector<std::size_t>& choice);

/// Z with column j incremented by sigma / p_max.
Eigen::MatrixXd augmented_matrix(const GainMatrix& gm, std::size_t j, double p_max);

struct SpectralRadiusOptions {
    double jitter = 0.0;        ///< optional all-ones perturbation, relative to the largest entry
    double tolerance = 1e-12;   ///< relative Collatz-Wielandt bracket width
    std::size_t max_iterations = 100000;
};

/// Perron root of a non-negative square matrix by power iteration.
/// Throws ConfigError on negative entries and NumericalError if the bracket
/// does not close within max_iterations.
double spectral_radius(const Eigen::MatrixXd& a, const SpectralRadiusOptions& options = {});

struct OracleOptions {
    double p_max = 1.0;
    std::size_t budget = 1000000;   ///< max associations enumerated
    unsigned threads = 1;
    SpectralRadiusOptions spectral;
};

/// Number of associations in the Cartesian product of the per-user cluster
/// lists, saturating at SIZE_MAX.
std::size_t association_count(const CoefficientTable& table);

/// Throws OracleBudgetError when the association count exceeds the budget and
/// NumericalError when I - gamma* Z(D*) is singular.
MaxMinSolution oracle_max_min(const CoefficientTable& table, const OracleOptions& options);

MaxMinSolution oracle_max_min(const ChannelRealization& channel,
                              const std::vector<std::vector<ClusterIndicator>>& cluster_lists, double noise_power,
                              const OracleOptions& options);

}  // namespace cellfree
