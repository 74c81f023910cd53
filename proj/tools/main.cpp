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

#include <CLI11.hpp>
#include <iostream>

#include <relaysim/gp.hpp>

#include "config_file.hpp"
#include "experiment.hpp"

namespace {

using relaysim::runner::ExperimentConfig;

struct CliState {
    ExperimentConfig config;
    std::string config_path;
    std::string grid_text;
    std::string outputs_text;
    std::string beta_ar_text, beta_rb_text;
    bool pp_follows_pu = false;
    bool pr_follows_2n_pu = false;
    std::string preset_name;
    std::string preset_dir = "results";
};

std::vector<double> parse_beta(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

void add_common_options(CLI::App* cmd, CliState& st) {
    cmd->add_option("--config", st.config_path, "config file (key = value sections)");
    cmd->add_option("-M,--antennas", st.config.system.m, "relay antennas");
    cmd->add_option("-N,--pairs", st.config.system.n, "user pairs");
    cmd->add_option("--tau-c", st.config.system.tau_c, "coherence interval (symbols)");
    cmd->add_option("--tau-p", st.config.system.tau_p, "pilot symbols (0 = 2N)");
    cmd->add_option("--seed", st.config.system.seed, "random seed");
    cmd->add_option("--trials", st.config.trials, "Monte Carlo trials");
    cmd->add_option("--beta-ar", st.beta_ar_text, "A-side fading, linear (single value or comma list)");
    cmd->add_option("--beta-rb", st.beta_rb_text, "B-side fading, linear");
    cmd->add_option("--p-u", st.config.p_u_db, "per-user power (dB)");
    cmd->add_option("--p-r", st.config.p_r_db, "relay power (dB)");
    cmd->add_option("--p-p", st.config.p_p_db, "pilot power (dB)");
    cmd->add_flag("--pp-follows-pu", st.pp_follows_pu, "couple p_p = p_u");
    cmd->add_flag("--pr-follows-2n-pu", st.pr_follows_2n_pu, "couple p_r = 2N p_u");
    cmd->add_option("--protocol", st.config.protocol, "af | df | both");
    cmd->add_option("--sweep", st.config.sweep.variable, "sweep variable: p_u p_r p_p P M N");
    cmd->add_option("--grid", st.grid_text, "sweep grid: comma list or start:step:stop");
    cmd->add_option("--outputs", st.outputs_text, "comma list of output columns");
    cmd->add_option("-o,--out", st.config.out_path, "CSV output path (default stdout)");
}

void add_scaling_options(CLI::App* cmd, CliState& st) {
    cmd->add_option_function<std::string>(
           "--scenario",
           [&st](const std::string& v) {
               if (v == "A") st.config.scaling.scenario = relaysim::Scenario::A;
               else if (v == "B") st.config.scaling.scenario = relaysim::Scenario::B;
               else if (v == "C") st.config.scaling.scenario = relaysim::Scenario::C;
               else throw CLI::ValidationError("--scenario", "expected A, B or C");
           },
           "power-scaling scenario: A | B | C");
    cmd->add_option("--alpha", st.config.scaling.alpha, "user-power exponent");
    cmd->add_option("--beta", st.config.scaling.beta, "relay-power exponent");
    cmd->add_option("--gamma", st.config.scaling.gamma, "pilot-power exponent");
    cmd->add_option("--E-u", st.config.e_u_db, "user-power scaling constant (dB)");
    cmd->add_option("--E-r", st.config.e_r_db, "relay-power scaling constant (dB)");
    cmd->add_option("--E-p", st.config.e_p_db, "pilot-power scaling constant (dB)");
}

int run(CliState& st, const std::string& kind) {
    // file first, then flags override it
    ExperimentConfig merged;
    if (!st.config_path.empty()) {
        relaysim::runner::apply_config_file(relaysim::runner::ConfigFile::load(st.config_path),
                                            merged);
    }
    // overlay every field the command line touched (flags were parsed into
    // st.config on top of defaults; copy the ones that differ from defaults)
    const ExperimentConfig defaults;
    auto pick = [](auto cli_value, auto default_value, auto file_value) {
        return cli_value != default_value ? cli_value : file_value;
    };
    merged.kind = kind;
    merged.system.m = pick(st.config.system.m, defaults.system.m, merged.system.m);
    merged.system.n = pick(st.config.system.n, defaults.system.n, merged.system.n);
    merged.system.tau_c = pick(st.config.system.tau_c, defaults.system.tau_c, merged.system.tau_c);
    merged.system.tau_p = pick(st.config.system.tau_p, defaults.system.tau_p, merged.system.tau_p);
    merged.system.seed = pick(st.config.system.seed, defaults.system.seed, merged.system.seed);
    merged.trials = pick(st.config.trials, defaults.trials, merged.trials);
    merged.p_u_db = pick(st.config.p_u_db, defaults.p_u_db, merged.p_u_db);
    merged.p_r_db = pick(st.config.p_r_db, defaults.p_r_db, merged.p_r_db);
    merged.p_p_db = pick(st.config.p_p_db, defaults.p_p_db, merged.p_p_db);
    merged.protocol = pick(st.config.protocol, defaults.protocol, merged.protocol);
    merged.allocate_mode = pick(st.config.allocate_mode, defaults.allocate_mode, merged.allocate_mode);
    merged.mc_mode = pick(st.config.mc_mode, defaults.mc_mode, merged.mc_mode);
    merged.budget_db = pick(st.config.budget_db, defaults.budget_db, merged.budget_db);
    merged.e_u_db = pick(st.config.e_u_db, defaults.e_u_db, merged.e_u_db);
    merged.e_r_db = pick(st.config.e_r_db, defaults.e_r_db, merged.e_r_db);
    merged.e_p_db = pick(st.config.e_p_db, defaults.e_p_db, merged.e_p_db);
    merged.scaling.scenario =
        st.config.scaling.scenario != defaults.scaling.scenario ? st.config.scaling.scenario
                                                                : merged.scaling.scenario;
    merged.scaling.alpha = pick(st.config.scaling.alpha, defaults.scaling.alpha, merged.scaling.alpha);
    merged.scaling.beta = pick(st.config.scaling.beta, defaults.scaling.beta, merged.scaling.beta);
    merged.scaling.gamma = pick(st.config.scaling.gamma, defaults.scaling.gamma, merged.scaling.gamma);
    merged.alloc.theta = pick(st.config.alloc.theta, defaults.alloc.theta, merged.alloc.theta);
    merged.alloc.eps = pick(st.config.alloc.eps, defaults.alloc.eps, merged.alloc.eps);
    if (st.pp_follows_pu) merged.couple_pp_to_pu = true;
    if (st.pr_follows_2n_pu) merged.couple_pr_to_2n_pu = true;
    if (!st.beta_ar_text.empty()) merged.beta_ar = parse_beta(st.beta_ar_text);
    if (!st.beta_rb_text.empty()) merged.beta_rb = parse_beta(st.beta_rb_text);
    if (!st.grid_text.empty()) merged.sweep.grid = relaysim::runner::parse_grid(st.grid_text);
    if (!st.config.sweep.variable.empty()) merged.sweep.variable = st.config.sweep.variable;
    if (!st.outputs_text.empty()) {
        merged.outputs.clear();
        std::string item;
        std::istringstream is(st.outputs_text);
        while (std::getline(is, item, ','))
            if (!item.empty()) merged.outputs.push_back(item);
    }
    if (!st.config.out_path.empty()) merged.out_path = st.config.out_path;

    const relaysim::runner::Table table = relaysim::runner::run_experiment(merged);
    if (merged.out_path.empty()) {
        relaysim::runner::emit_csv(table, std::cout);
    } else {
        relaysim::runner::emit_csv(table, merged.out_path);
        std::cerr << "wrote " << merged.out_path << " (" << table.rows.size() << " rows)\n";
    }
    if (table.solver_failures > 0) {
        std::cerr << table.solver_failures << " solver failure(s) recorded as nan cells\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relaysim — spectral-efficiency experiments for multipair two-way relaying"};
    app.require_subcommand(1);

    CliState st;
    struct Sub {
        const char* name;
        const char* help;
        bool scaling;
    };
    const Sub subs[] = {
        {"stats", "MMSE estimation statistics per user", false},
        {"mc", "Monte Carlo spectral efficiency", false},
        {"exact-af", "exact AF closed-form spectral efficiency", false},
        {"approx", "large-array approximations (AF and DF)", false},
        {"scaling", "scaled-power rates over an M sweep", true},
        {"classify", "asymptotic regime classification", true},
        {"allocate", "sum-SE power allocation", false},
    };
    std::map<std::string, CLI::App*> cmds;
    for (const Sub& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        add_common_options(cmd, st);
        if (s.scaling) add_scaling_options(cmd, st);
        if (std::string(s.name) == "allocate") {
            cmd->add_option("--P", st.config.budget_db, "total power budget (dB)");
            cmd->add_option("--mode", st.config.allocate_mode, "gp | symmetric");
            cmd->add_option("--theta", st.config.alloc.theta, "trust-region parameter");
            cmd->add_option("--eps", st.config.alloc.eps, "stopping threshold");
        }
        if (std::string(s.name) == "mc")
            cmd->add_option("--mc-mode", st.config.mc_mode, "direct | pilot");
        cmds[s.name] = cmd;
    }

    CLI::App* reproduce = app.add_subcommand("reproduce", "run a figure-reproduction preset");
    reproduce->add_option("preset", st.preset_name, "preset name")->required();
    reproduce->add_option("-o,--out", st.preset_dir, "output directory (default results/)");
    reproduce->add_option("--seed", st.config.system.seed, "random seed");
    reproduce->add_option("--trials", st.config.trials, "Monte Carlo trials override");

    CLI11_PARSE(app, argc, argv);

    try {
        if (reproduce->parsed()) {
            const ExperimentConfig defaults;
            const long trials = st.config.trials != defaults.trials ? st.config.trials : 0;
            const auto files = relaysim::runner::run_preset(st.preset_name, st.preset_dir,
                                                            st.config.system.seed, trials);
            for (const std::string& f : files) std::cerr << "wrote " << f << '\n';
            return 0;
        }
        for (const auto& [name, cmd] : cmds)
            if (cmd->parsed()) return run(st, name);
    } catch (const relaysim::GpError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
