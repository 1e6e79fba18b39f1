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
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace cellfree {

using Rng = std::mt19937_64;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point& a, const Point& b);

/// Scenario parameters. Distances in meters, powers in dB / dBm.
struct NetworkConfig {
    std::size_t num_aps = 36;
    std::size_t antennas_per_ap = 4;
    std::size_t num_users = 58;
    double inter_ap_distance = 100.0;
    double ap_height_offset = 10.0;
    double pathloss_intercept_db = -30.5;
    double pathloss_exponent_scale = 36.7;
    double shadow_std_db = 4.0;
    double shadow_decorrelation_distance = 9.0;
    double noise_power_dbm = -94.0;
    std::uint64_t rng_seed = 0;

    /// Throws ConfigError on R, K, N < 1, non-positive spacing or negative shadow std.
    void validate() const;

    double noise_power_watts() const;
};

struct Rectangle {
    double min_x = 0.0;
    double max_x = 0.0;
    double min_y = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double area() const { return width() * height(); }
    Point center() const { return {(min_x + max_x) / 2.0, (min_y + max_y) / 2.0}; }
};

struct Topology {
    std::vector<Point> aps;
    std::size_t rows = 0;
    std::size_t columns = 0;
    /// Bounding rectangle of the AP grid; users are dropped inside it.
    Rectangle area;
};

/// Gain matrix is R x N, linear power gains beta_rn.
struct NetworkInstance {
    std::vector<Point> ap_positions;
    std::vector<Point> user_positions;
    Eigen::MatrixXd gains;
    NetworkConfig config;

    std::size_t num_aps() const { return ap_positions.size(); }
    std::size_t num_users() const { return user_positions.size(); }
};

/// One small-scale fading draw. Column n of `h` is h_n (length R*K); rows
/// [r*K, r*K + K) belong to AP r.
struct ChannelRealization {
    std::size_t num_aps = 0;
    std::size_t antennas_per_ap = 0;
    Eigen::MatrixXcd h;

    std::size_t num_users() const { return static_cast<std::size_t>(h.cols()); }

    auto block(std::size_t ap, std::size_t user) const {
        return h.col(static_cast<Eigen::Index>(user))
            .segment(static_cast<Eigen::Index>(ap * antennas_per_ap),
                     static_cast<Eigen::Index>(antennas_per_ap));
    }

    /// FNV-1a over the raw coefficient bytes; used to prove paired runs share a draw.
    std::uint64_t checksum() const;
};

/// Hexagonal grid: rows of ceil(sqrt(R)) APs spaced `inter_ap_distance` apart,
/// rows sqrt(3)/2 * d apart with every odd row shifted by d/2, centered on the origin.
/// Throws ConfigError when R is not a multiple of ceil(sqrt(R)).
Topology build_topology(const NetworkConfig& config);

/// N independent uniform drops over the topology's bounding rectangle.
std::vector<Point> place_users(const Topology& topology, const NetworkConfig& config, Rng& rng);

/// Distance-dependent part of the gain in dB (no shadowing). `distance_3d` in meters.
double pathloss_db(double distance_3d, const NetworkConfig& config);

/// 3-D AP-user distance including the AP height offset.
double link_distance(const Point& ap, const Point& user, const NetworkConfig& config);

/// Correlated log-normal shadowing for one AP: F ~ N(0, C) with
/// C_nm = std^2 * 2^(-delta_nm / decorrelation). The factorization is computed once.
class ShadowFadingSampler {
public:
    ShadowFadingSampler(const std::vector<Point>& users, double std_db, double decorrelation_distance);

    /// One length-N vector of shadow terms in dB.
    Eigen::VectorXd sample(Rng& rng) const;

    const Eigen::MatrixXd& covariance() const { return covariance_; }

private:
    Eigen::MatrixXd covariance_;
    Eigen::MatrixXd factor_;
};

/// R x N linear large-scale gains; shadow terms are independent across APs.
Eigen::MatrixXd large_scale_fading(const Topology& topology, const std::vector<Point>& users,
                                   const NetworkConfig& config, Rng& rng);

/// Rayleigh draw: h_rkn ~ CN(0, beta_rn), identical variance over the K antennas of AP r.
ChannelRealization draw_channel(const Eigen::MatrixXd& gains, const NetworkConfig& config, Rng& rng);

/// Independent generators for one Monte Carlo trial, always consumed in the
/// same order (positions, shadowing, fading).
struct TrialStreams {
    Rng positions;
    Rng shadowing;
    Rng fading;

    static TrialStreams make(std::uint64_t seed, std::uint64_t trial);
};

/// Geometry + large-scale gains for one trial.
NetworkInstance make_network(const NetworkConfig& config, TrialStreams& streams);

}  // namespace cellfree
