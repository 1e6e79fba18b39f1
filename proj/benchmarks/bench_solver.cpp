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


#include <benchmark/benchmark.h>

#include <random>

#include "cellfree/experiment.hpp"
#include "cellfree/solver.hpp"
#include "cellfree/spectral.hpp"
#include "cellfree/units.hpp"

namespace {

using namespace cellfree;

struct Instance {
    CoefficientTable table;
    double p_max = 0.0;
};

Instance make_instance(std::size_t aps, std::size_t antennas, std::size_t users, std::size_t cs, SchemeId scheme,
                       double pmax_dbm, std::uint64_t seed) {
    NetworkConfig cfg;
    cfg.num_aps = aps;
    cfg.antennas_per_ap = antennas;
    cfg.num_users = users;
    TrialStreams streams = TrialStreams::make(seed, 0);
    const NetworkInstance net = make_network(cfg, streams);
    const ChannelRealization ch = draw_channel(net.gains, cfg, streams.fading);
    ClusteringOptions opts;
    opts.allow_large_exhaustive = true;
    return {build_coefficient_table(ch, build_cluster_lists(net.gains, cs, scheme, opts), cfg.noise_power_watts()),
            dbm_to_watts(pmax_dbm)};
}

void BM_CoefficientTable(benchmark::State& state) {
    NetworkConfig cfg;
    TrialStreams streams = TrialStreams::make(1, 0);
    const NetworkInstance net = make_network(cfg, streams);
    const ChannelRealization ch = draw_channel(net.gains, cfg, streams.fading);
    const auto lists = build_cluster_lists(net.gains, static_cast<std::size_t>(state.range(0)), SchemeId::Exhaustive);
    for (auto _ : state) benchmark::DoNotOptimize(build_coefficient_table(ch, lists, cfg.noise_power_watts()));
}
BENCHMARK(BM_CoefficientTable)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);

void BM_SolveSetupII(benchmark::State& state) {
    const auto inst = make_instance(36, 4, 58, 3, static_cast<SchemeId>(state.range(0)), 20.0, 3);
    SolverConfig cfg;
    cfg.p_max = inst.p_max;
    cfg.max_iterations = 1000000;
    std::size_t iterations = 0;
    for (auto _ : state) {
        const auto sol = solve_max_min(inst.table, cfg);
        iterations = sol.iterations;
        benchmark::DoNotOptimize(sol.gamma_star);
    }
    state.counters["iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_SolveSetupII)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_OracleSmall(benchmark::State& state) {
    const auto inst = make_instance(9, 4, 6, 3, static_cast<SchemeId>(state.range(0)), 30.0, 5);
    OracleOptions o;
    o.p_max = inst.p_max;
    for (auto _ : state) benchmark::DoNotOptimize(oracle_max_min(inst.table, o).gamma_star);
}
BENCHMARK(BM_OracleSmall)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SpectralRadius(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = i == j ? 0.0 : u(rng);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(a));
}
BENCHMARK(BM_SpectralRadius)->Arg(6)->Arg(16)->Arg(58)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
