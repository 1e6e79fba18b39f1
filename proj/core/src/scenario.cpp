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

#include "cellfree/scenario.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cellfree/errors.hpp"

namespace cellfree {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw ConfigError("bad value for '" + key + "': '" + text + "'");
    return value;
}

}  // namespace

NetworkConfig parse_scenario(std::istream& in, NetworkConfig cfg) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "num_aps") cfg.num_aps = parse_number<std::size_t>(key, value);
        else if (key == "antennas_per_ap") cfg.antennas_per_ap = parse_number<std::size_t>(key, value);
        else if (key == "num_users") cfg.num_users = parse_number<std::size_t>(key, value);
        else if (key == "inter_ap_distance") cfg.inter_ap_distance = parse_number<double>(key, value);
        else if (key == "ap_height_offset") cfg.ap_height_offset = parse_number<double>(key, value);
        else if (key == "pathloss_intercept_db") cfg.pathloss_intercept_db = parse_number<double>(key, value);
        else if (key == "pathloss_exponent_scale") cfg.pathloss_exponent_scale = parse_number<double>(key, value);
        else if (key == "shadow_std_db") cfg.shadow_std_db = parse_number<double>(key, value);
        else if (key == "shadow_decorrelation_distance") cfg.shadow_decorrelation_distance = parse_number<double>(key, value);
        else if (key == "noise_power_dbm") cfg.noise_power_dbm = parse_number<double>(key, value);
        else if (key == "rng_seed") cfg.rng_seed = parse_number<std::uint64_t>(key, value);
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

NetworkConfig load_scenario(const std::filesystem::path& path, NetworkConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    return parse_scenario(in, std::move(base));
}

std::string format_scenario(const NetworkConfig& c) {
    std::ostringstream os;
    os.precision(17);
    os << "num_aps = " << c.num_aps << '\n'
       << "antennas_per_ap = " << c.antennas_per_ap << '\n'
       << "num_users = " << c.num_users << '\n'
       << "inter_ap_distance = " << c.inter_ap_distance << '\n'
       << "ap_height_offset = " << c.ap_height_offset << '\n'
       << "pathloss_intercept_db = " << c.pathloss_intercept_db << '\n'
       << "pathloss_exponent_scale = " << c.pathloss_exponent_scale << '\n'
       << "shadow_std_db = " << c.shadow_std_db << '\n'
       << "shadow_decorrelation_distance = " << c.shadow_decorrelation_distance << '\n'
       << "noise_power_dbm = " << c.noise_power_dbm << '\n'
       << "rng_seed = " << c.rng_seed << '\n';
    return os.str();
}

}  // namespace cellfree
