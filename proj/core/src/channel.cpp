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

#include "cellfree/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "cellfree/errors.hpp"
#include "cellfree/units.hpp"

namespace cellfree {

namespace {

constexpr double kCholeskyJitter = 1e-9;

std::size_t columns_for(std::size_t num_aps) {
    std::size_t cols = 1;
    while (cols * cols < num_aps) ++cols;
    return cols;
}

std::uint32_t low32(std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); }
std::uint32_t high32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

Rng make_stream(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream) {
    std::seed_seq seq{low32(seed), high32(seed), low32(trial), high32(trial), stream};
    return Rng(seq);
}

}  // namespace

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void NetworkConfig::validate() const {
    if (num_aps < 1) throw ConfigError("num_aps must be >= 1");
    if (antennas_per_ap < 1) throw ConfigError("antennas_per_ap must be >= 1");
    if (num_users < 1) throw ConfigError("num_users must be >= 1");
    if (!(inter_ap_distance > 0.0) || !std::isfinite(inter_ap_distance))
        throw ConfigError("inter_ap_distance must be positive");
    if (!(shadow_std_db >= 0.0)) throw ConfigError("shadow_std_db must be non-negative");
    if (!(shadow_decorrelation_distance > 0.0))
        throw ConfigError("shadow_decorrelation_distance must be positive");
    if (!(ap_height_offset >= 0.0)) throw ConfigError("ap_height_offset must be non-negative");
}

double NetworkConfig::noise_power_watts() const { return dbm_to_watts(noise_power_dbm); }

std::uint64_t ChannelRealization::checksum() const {
    std::uint64_t hash = 1469598103934665603ull;
    const auto* bytes = reinterpret_cast<const unsigned char*>(h.data());
    const std::size_t count = static_cast<std::size_t>(h.size()) * sizeof(std::complex<double>);
    for (std::size_t i = 0; i < count; ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

Topology build_topology(const NetworkConfig& config) {
    if (config.num_aps < 1) throw ConfigError("num_aps must be >= 1");
    if (!(config.inter_ap_distance > 0.0)) throw ConfigError("inter_ap_distance must be positive");

    const std::size_t cols = columns_for(config.num_aps);
    if (config.num_aps % cols != 0) {
        throw ConfigError("num_aps=" + std::to_string(config.num_aps) + " does not fill rows of " +
                          std::to_string(cols) + " APs");
    }
    const std::size_t rows = config.num_aps / cols;
    const double d = config.inter_ap_distance;
    const double row_pitch = d * std::sqrt(3.0) / 2.0;

    Topology topo;
    topo.rows = rows;
    topo.columns = cols;
    topo.aps.reserve(config.num_aps);
    for (std::size_t i = 0; i < rows; ++i) {
        const double shift = (i % 2 == 1) ? d / 2.0 : 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            topo.aps.push_back({static_cast<double>(j) * d + shift, static_cast<double>(i) * row_pitch});
        }
    }

    Rectangle box{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& p : topo.aps) {
        box.min_x = std::min(box.min_x, p.x);
        box.max_x = std::max(box.max_x, p.x);
        box.min_y = std::min(box.min_y, p.y);
        box.max_y = std::max(box.max_y, p.y);
    }
    const Point c = box.center();
    for (auto& p : topo.aps) {
        p.x -= c.x;
        p.y -= c.y;
    }
    topo.area = {box.min_x - c.x, box.max_x - c.x, box.min_y - c.y, box.max_y - c.y};
    return topo;
}

std::vector<Point> place_users(const Topology& topology, const NetworkConfig& config, Rng& rng) {
    std::uniform_real_distribution<double> ux(topology.area.min_x, topology.area.max_x);
    std::uniform_real_distribution<double> uy(topology.area.min_y, topology.area.max_y);
    std::vector<Point> users;
    users.reserve(config.num_users);
    for (std::size_t n = 0; n < config.num_users; ++n) {
        const double x = topology.area.width() > 0.0 ? ux(rng) : topology.area.min_x;
        const double y = topology.area.height() > 0.0 ? uy(rng) : topology.area.min_y;
        users.push_back({x, y});
    }
    return users;
}

double pathloss_db(double distance_3d, const NetworkConfig& config) {
    return config.pathloss_intercept_db - config.pathloss_exponent_scale * std::log10(distance_3d);
}

double link_distance(const Point& ap, const Point& user, const NetworkConfig& config) {
    const double planar = distance(ap, user);
    return std::sqrt(planar * planar + config.ap_height_offset * config.ap_height_offset);
}

ShadowFadingSampler::ShadowFadingSampler(const std::vector<Point>& users, double std_db,
                                         double decorrelation_distance) {
    const auto n = static_cast<Eigen::Index>(users.size());
    covariance_.resize(n, n);
    const double var = std_db * std_db;
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            const double delta = distance(users[static_cast<std::size_t>(a)], users[static_cast<std::size_t>(b)]);
            covariance_(a, b) = var * std::exp2(-delta / decorrelation_distance);
        }
    }
    if (n == 0 || var == 0.0) {
        factor_ = Eigen::MatrixXd::Zero(n, n);
        return;
    }

    Eigen::LLT<Eigen::MatrixXd> llt(covariance_);
    if (llt.info() != Eigen::Success) {
        Eigen::MatrixXd jittered = covariance_;
        jittered.diagonal().array() += kCholeskyJitter;
        llt.compute(jittered);
        if (llt.info() != Eigen::Success) {
            throw NumericalError("shadow-fading covariance is not positive definite after jitter");
        }
    }
    factor_ = llt.matrixL();
}

Eigen::VectorXd ShadowFadingSampler::sample(Rng& rng) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd white(factor_.rows());
    for (Eigen::Index i = 0; i < white.size(); ++i) white(i) = normal(rng);
    return factor_ * white;
}

Eigen::MatrixXd large_scale_fading(const Topology& topology, const std::vector<Point>& users,
                                   const NetworkConfig& config, Rng& rng) {
    const auto num_aps = static_cast<Eigen::Index>(topology.aps.size());
    const auto num_users = static_cast<Eigen::Index>(users.size());
    const ShadowFadingSampler shadow(users, config.shadow_std_db, config.shadow_decorrelation_distance);

    Eigen::MatrixXd gains(num_aps, num_users);
    for (Eigen::Index r = 0; r < num_aps; ++r) {
        const Eigen::VectorXd f = shadow.sample(rng);
        for (Eigen::Index n = 0; n < num_users; ++n) {
            const double d = link_distance(topology.aps[static_cast<std::size_t>(r)],
                                           users[static_cast<std::size_t>(n)], config);
            gains(r, n) = db_to_linear(pathloss_db(d, config) + f(n));
        }
    }
    return gains;
}

ChannelRealization draw_channel(const Eigen::MatrixXd& gains, const NetworkConfig& config, Rng& rng) {
    const auto num_aps = static_cast<std::size_t>(gains.rows());
    const auto num_users = static_cast<std::size_t>(gains.cols());
    const std::size_t k_ant = config.antennas_per_ap;

    ChannelRealization ch;
    ch.num_aps = num_aps;
    ch.antennas_per_ap = k_ant;
    ch.h.resize(static_cast<Eigen::Index>(num_aps * k_ant), static_cast<Eigen::Index>(num_users));

    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t n = 0; n < num_users; ++n) {
        for (std::size_t r = 0; r < num_aps; ++r) {
            const double scale = std::sqrt(gains(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(n)) / 2.0);
            for (std::size_t k = 0; k < k_ant; ++k) {
                const double re = normal(rng);
                const double im = normal(rng);
                ch.h(static_cast<Eigen::Index>(r * k_ant + k), static_cast<Eigen::Index>(n)) = {scale * re, scale * im};
            }
        }
    }
    return ch;
}

TrialStreams TrialStreams::make(std::uint64_t seed, std::uint64_t trial) {
    return {make_stream(seed, trial, 1), make_stream(seed, trial, 2), make_stream(seed, trial, 3)};
}

NetworkInstance make_network(const NetworkConfig& config, TrialStreams& streams) {
    config.validate();
    const Topology topo = build_topology(config);
    NetworkInstance net;
    net.config = config;
    net.ap_positions = topo.aps;
    net.user_positions = place_users(topo, config, streams.positions);
    net.gains = large_scale_fading(topo, net.user_positions, config, streams.shadowing);
    return net;
}

}  // namespace cellfree
