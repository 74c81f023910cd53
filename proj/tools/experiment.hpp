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

#include <ostream>
#include <string>
#include <vector>

#include <relaysim/allocation.hpp>
#include <relaysim/types.hpp>

namespace relaysim::runner {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> metadata;  ///< emitted as leading '#' comment lines
    int solver_failures = 0;
};

struct SweepAxis {
    std::string variable;       ///< p_u | p_r | p_p | P | M | N (powers in dB)
    std::vector<double> grid;   ///< strictly increasing
};

/// Declarative description of one run. Powers are in dB at this layer and
/// converted at the library boundary. tau_p = 0 means "use 2N".
struct ExperimentConfig {
    std::string kind;  ///< stats | mc | exact-af | approx | scaling | classify | allocate
    SystemConfig system{.m = 128, .n = 5, .tau_c = 196, .tau_p = 0, .seed = 0};
    std::vector<double> beta_ar{1.0};  ///< broadcast to N entries when a single value
    std::vector<double> beta_rb{1.0};
    double p_u_db = 0.0, p_r_db = 0.0, p_p_db = 0.0;
    bool couple_pp_to_pu = false;      ///< p_p = p_u
    bool couple_pr_to_2n_pu = false;   ///< p_r = 2N p_u
    ScalingSpec scaling;               ///< e_* entered in dB via *_db below
    double e_u_db = 10.0, e_r_db = 10.0, e_p_db = 10.0;
    double budget_db = 10.0;
    std::string protocol = "both";       ///< af | df | both
    std::string allocate_mode = "gp";    ///< gp | symmetric
    AllocationOptions alloc;
    std::string mc_mode = "direct";      ///< direct | pilot
    long trials = 10000;
    SweepAxis sweep;
    std::vector<std::string> outputs;    ///< empty = defaults for the kind
    std::string out_path;                ///< empty = stdout
    std::vector<std::string> metadata;
};

/// Every violated invariant of the config (empty = valid).
std::vector<std::string> validate_experiment(const ExperimentConfig& config);

/// Executes the sweep, one row per grid point. Validation problems throw
/// std::invalid_argument; solver failures are recorded as nan cells and
/// counted in Table::solver_failures without aborting the sweep.
Table run_experiment(const ExperimentConfig& config);

/// UTF-8 CSV: optional '#' metadata lines, one header row, 12 significant
/// digits per value, "nan" for missing cells, rows in sweep order.
void emit_csv(const Table& table, std::ostream& os);
void emit_csv(const Table& table, const std::string& path);

const std::vector<std::string>& preset_names();

/// Runs a figure-reproduction preset, writing one CSV per curve family into
/// out_dir. trials = 0 keeps the preset default. Returns the emitted paths.
std::vector<std::string> run_preset(const std::string& name, const std::string& out_dir,
                                    std::uint64_t seed, long trials);

}  // namespace relaysim::runner
