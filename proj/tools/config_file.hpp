// SPDX-License-Identifier: Apache-2.0
//
// relaysim — spectral-efficiency engine for multipair two-way massive-MIMO relaying
// Copyright (C) 2026 relaysim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "experiment.hpp"

namespace relaysim::runner {

/// key = value sections in the usual bracketed-section text format.
/// Parse errors carry the line number.
struct ConfigFile {
    std::map<std::string, std::map<std::string, std::string>> sections;

    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback = "") const;
};

/// Applies the file's sections onto an ExperimentConfig. Field errors report
/// "section.key" identification.
void apply_config_file(const ConfigFile& file, ExperimentConfig& config);

/// "a,b,c" or "start:step:stop" into a numeric grid.
std::vector<double> parse_grid(const std::string& text);

}  // namespace relaysim::runner
