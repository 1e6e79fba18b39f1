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

// Scenario files are plain `key = value` lines; `#` starts a comment. Keys are
// the NetworkConfig field names; omitted keys keep their defaults:
//
//   num_aps = 36
//   antennas_per_ap = 4
//   num_users = 58
//   inter_ap_distance = 100
//   noise_power_dbm = -94
//   rng_seed = 42

#include <filesystem>
#include <istream>
#include <string>

#include "cellfree/channel.hpp"

namespace cellfree {

/// Throws ConfigError on unknown keys, malformed lines or invalid values.
NetworkConfig parse_scenario(std::istream& in, NetworkConfig base = {});

NetworkConfig load_scenario(const std::filesystem::path& path, NetworkConfig base = {});

/// Inverse of parse_scenario; every field is written.
std::string format_scenario(const NetworkConfig& config);

}  // namespace cellfree
