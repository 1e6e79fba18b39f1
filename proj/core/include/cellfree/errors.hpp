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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cellfree {

/// Invalid scenario, scheme or solver parameters.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base class for floating-point / convergence failures.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// h_n^H D_n h_n vanished for some (user, cluster) pair.
class DegenerateChannelError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The fixed-point iteration hit its iteration cap.
class NonConvergenceError : public NumericalError {
public:
    NonConvergenceError(const std::string& what, std::vector<double> residuals)
        : NumericalError(what), residuals_(std::move(residuals)) {}

    const std::vector<double>& residuals() const noexcept { return residuals_; }

private:
    std::vector<double> residuals_;
};

/// The brute-force oracle refuses instances whose association count exceeds its budget.
class OracleBudgetError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace cellfree
