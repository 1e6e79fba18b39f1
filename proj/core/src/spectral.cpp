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

#include "cellfree/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "cellfree/errors.hpp"

namespace cellfree {

namespace {

struct Candidate {
    double value = std::numeric_limits<double>::infinity();
    std::size_t index = std::numeric_limits<std::size_t>::max();
};

bool better(const Candidate& a, const Candidate& b) {
    return a.value < b.value || (a.value == b.value && a.index < b.index);
}

// Mixed-radix decode; the last user's cluster changes fastest.
void decode(std::size_t index, const std::vector<std::size_t>& radix, std::vector<std::size_t>& digits) {
    for (std::size_t n = radix.size(); n-- > 0;) {
        digits[n] = index % radix[n];
        index /= radix[n];
    }
}

void advance(const std::vector<std::size_t>& radix, std::vector<std::size_t>& digits) {
    for (std::size_t n = radix.size(); n-- > 0;) {
        if (++digits[n] < radix[n]) return;
        digits[n] = 0;
    }
}

// max_j rho(Z_j). Stops early once the running max reaches `cutoff`: such an
// association can no longer beat the incumbent (ties go to the lower index).
double worst_augmented_radius(const GainMatrix& gm, double p_max, const SpectralRadiusOptions& opts,
                              Eigen::MatrixXd& scratch, double cutoff) {
    double worst = 0.0;
    const auto n = static_cast<Eigen::Index>(gm.num_users());
    for (Eigen::Index j = 0; j < n; ++j) {
        scratch = gm.z;
        scratch.col(j) += gm.sigma / p_max;
        worst = std::max(worst, spectral_radius(scratch, opts));
        if (worst >= cutoff) break;
    }
    return worst;
}

Candidate scan_range(const CoefficientTable& table, const std::vector<std::size_t>& radix, std::size_t begin,
                     std::size_t end, const OracleOptions& options) {
    Candidate best;
    if (begin >= end) return best;
    std::vector<std::size_t> digits(radix.size());
    decode(begin, radix, digits);
    Eigen::MatrixXd scratch;
    for (std::size_t idx = begin; idx < end; ++idx) {
        const GainMatrix gm = build_gain_matrix(table, digits);
        const Candidate c{worst_augmented_radius(gm, options.p_max, options.spectral, scratch, best.value), idx};
        if (better(c, best)) best = c;
        advance(radix, digits);
    }
    return best;
}

// Strongly connected components of the graph with an edge i -> j wherever a(i, j) > 0 (Tarjan).
std::vector<std::vector<Eigen::Index>> strong_components(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    std::vector<std::vector<Eigen::Index>> out;
    std::vector<Eigen::Index> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<Eigen::Index> stack;
    Eigen::Index counter = 0;

    std::function<void(Eigen::Index)> visit = [&](Eigen::Index v) {
        const auto uv = static_cast<std::size_t>(v);
        index[uv] = low[uv] = counter++;
        stack.push_back(v);
        on_stack[uv] = true;
        for (Eigen::Index w = 0; w < n; ++w) {
            if (!(a(v, w) > 0.0)) continue;
            const auto uw = static_cast<std::size_t>(w);
            if (index[uw] < 0) {
                visit(w);
                low[uv] = std::min(low[uv], low[uw]);
            } else if (on_stack[uw]) {
                low[uv] = std::min(low[uv], index[uw]);
            }
        }
        if (low[uv] == index[uv]) {
            std::vector<Eigen::Index> comp;
            Eigen::Index w = -1;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[static_cast<std::size_t>(w)] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
    };
    for (Eigen::Index v = 0; v < n; ++v)
        if (index[static_cast<std::size_t>(v)] < 0) visit(v);
    return out;
}

// Power iteration on an irreducible non-negative matrix of order >= 2. The
// diagonal shift (half the mean row sum) makes it primitive: it keeps the
// Perron vector, adds exactly `shift` to the Perron root and damps the
// eigenvalues on the spectral circle of periodic matrices.
double perron_root(const Eigen::MatrixXd& a, const SpectralRadiusOptions& options) {
    const Eigen::Index n = a.rows();
    const double jitter = options.jitter * a.maxCoeff();
    const double shift = 0.5 * a.sum() / static_cast<double>(n);
    Eigen::MatrixXd b = a.array() + jitter;
    b.diagonal().array() += shift;

    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd y(n);
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        y.noalias() = b * x;
        const Eigen::ArrayXd ratio = y.array() / x.array();
        const double lo = ratio.minCoeff();
        const double hi = ratio.maxCoeff();
        const double rho = 0.5 * (lo + hi) - shift;
        if (hi - lo <= options.tolerance * std::max(rho, std::numeric_limits<double>::min())) {
            return std::max(rho, 0.0);
        }
        x = y / y.maxCoeff();
    }
    throw NumericalError("spectral_radius: power iteration did not converge in " +
                         std::to_string(options.max_iterations) + " iterations");
}

}  // namespace

GainMatrix build_gain_matrix(const CoefficientTable& table, const std::vector<std::size_t>& choice) {
    const auto n = static_cast<Eigen::Index>(table.size());
    if (choice.size() != table.size()) throw ConfigError("association must assign one cluster per user");
    GainMatrix gm;
    gm.z.resize(n, n);
    gm.sigma.resize(n);
    gm.association.reserve(table.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& coeffs = table[static_cast<std::size_t>(i)].at(choice[static_cast<std::size_t>(i)]);
        gm.z.row(i) = coeffs.z.transpose();
        gm.sigma(i) = coeffs.sigma_sq;
        gm.association.push_back(coeffs.cluster);
    }
    return gm;
}

GainMatrix build_gain_matrix(const ChannelRealization& channel, const std::vector<ClusterIndicator>& association,
                             double noise_power) {
    if (association.size() != channel.num_users()) throw ConfigError("association must assign one cluster per user");
    CoefficientTable table(association.size());
    for (std::size_t n = 0; n < association.size(); ++n) {
        table[n].push_back(affine_coeffs(channel, n, association[n], noise_power));
    }
    return build_gain_matrix(table, std::vector<std::size_t>(association.size(), 0));
}

Eigen::MatrixXd augmented_matrix(const GainMatrix& gm, std::size_t j, double p_max) {
    if (j >= gm.num_users()) throw ConfigError("augmented column index out of range");
    Eigen::MatrixXd zj = gm.z;
    zj.col(static_cast<Eigen::Index>(j)) += gm.sigma / p_max;
    return zj;
}

double spectral_radius(const Eigen::MatrixXd& a, const SpectralRadiusOptions& options) {
    if (a.rows() != a.cols()) throw ConfigError("spectral_radius needs a square matrix");
    const Eigen::Index n = a.rows();
    if (n == 0) return 0.0;
    if ((a.array() < 0.0).any()) throw ConfigError("spectral_radius needs a non-negative matrix");
    if (a.maxCoeff() == 0.0) return 0.0;
    if (n == 1) return a(0, 0);

    // The spectrum of a reducible matrix is the union of the spectra of its
    // irreducible diagonal blocks.
    const auto components = strong_components(a);
    if (components.size() == 1) return perron_root(a, options);
    double rho = 0.0;
    for (const auto& comp : components) {
        const auto m = static_cast<Eigen::Index>(comp.size());
        Eigen::MatrixXd block(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) block(i, j) = a(comp[static_cast<std::size_t>(i)], comp[static_cast<std::size_t>(j)]);
        rho = std::max(rho, m == 1 ? block(0, 0) : perron_root(block, options));
    }
    return rho;
}

std::size_t association_count(const CoefficientTable& table) {
    std::size_t count = 1;
    for (const auto& list : table) {
        if (list.empty()) return 0;
        if (count > std::numeric_limits<std::size_t>::max() / list.size()) return std::numeric_limits<std::size_t>::max();
        count *= list.size();
    }
    return count;
}

MaxMinSolution oracle_max_min(const CoefficientTable& table, const OracleOptions& options) {
    if (table.empty()) throw ConfigError("no users");
    if (!(options.p_max > 0.0)) throw ConfigError("p_max must be positive");
    const std::size_t total = association_count(table);
    if (total == 0) throw ConfigError("every user needs at least one cluster");
    if (total > options.budget) {
        throw OracleBudgetError("oracle needs " + std::to_string(total) + " associations, budget is " +
                                std::to_string(options.budget));
    }

    std::vector<std::size_t> radix;
    radix.reserve(table.size());
    for (const auto& list : table) radix.push_back(list.size());

    const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(1, total));
    Candidate best;
    if (workers == 1) {
        best = scan_range(table, radix, 0, total, options);
    } else {
        std::vector<Candidate> partial(workers);
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w) {
                const std::size_t begin = total * w / workers;
                const std::size_t end = total * (w + 1) / workers;
                pool.emplace_back([&, w, begin, end] { partial[w] = scan_range(table, radix, begin, end, options); });
            }
        }
        for (const auto& c : partial) {
            if (better(c, best)) best = c;
        }
    }

    std::vector<std::size_t> digits(radix.size());
    decode(best.index, radix, digits);
    const GainMatrix gm = build_gain_matrix(table, digits);
    const double gamma = 1.0 / best.value;

    const auto n = static_cast<Eigen::Index>(gm.num_users());
    const Eigen::MatrixXd scaled = gamma * gm.z;
    if (spectral_radius(scaled, options.spectral) >= 1.0) {
        throw NumericalError("gamma* Z(D*) is not subinvertible (spectral radius >= 1)");
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd::Identity(n, n) - scaled);
    if (!(lu.rcond() > 1e-14)) throw NumericalError("I - gamma* Z(D*) is numerically singular");
    const PowerVector p = gamma * lu.solve(gm.sigma);
    if (!p.allFinite() || !(p.array() > 0.0).all()) {
        throw NumericalError("oracle power vector is not strictly positive");
    }

    MaxMinSolution sol;
    sol.p_star = p;
    sol.gamma_star = gamma;
    sol.clusters = gm.association;
    return sol;
}

MaxMinSolution oracle_max_min(const ChannelRealization& channel,
                              const std::vector<std::vector<ClusterIndicator>>& cluster_lists, double noise_power,
                              const OracleOptions& options) {
    return oracle_max_min(build_coefficient_table(channel, cluster_lists, noise_power), options);
}

}  // namespace cellfree
