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

#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <relaysim/af_analysis.hpp>
#include <relaysim/df_analysis.hpp>
#include <relaysim/gp.hpp>
#include <relaysim/model.hpp>
#include <relaysim/montecarlo.hpp>
#include <relaysim/scaling.hpp>

namespace relaysim::runner {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Everything needed to evaluate one grid point, with lazy shared results so
// e.g. mc_af and mc_af_ci run the simulation once.
struct RowCtx {
    const ExperimentConfig* config = nullptr;
    SystemConfig cfg;
    FadingProfile fading;
    PowerProfile powers;
    ScalingSpec scaling;
    double m_eval = 0.0;
    double budget = 0.0;

    std::optional<EstimationStats> stats_;
    std::optional<AfSimResult> mc_af_;
    std::optional<DfSimResult> mc_df_;
    std::optional<ImprovementReport> improvement_;
    std::optional<SymmetricAllocation> sym_af_, sym_df_;
    std::optional<RhoEstimate> rho_mc_;

    const EstimationStats& stats() {
        if (!stats_) stats_ = estimation_stats(cfg, fading, powers.p_p);
        return *stats_;
    }
    McOptions mc_options() const {
        McOptions o;
        o.trials = config->trials;
        o.mode = config->mc_mode == "pilot" ? SamplingMode::Pilot : SamplingMode::Direct;
        return o;
    }
    const AfSimResult& mc_af() {
        if (!mc_af_) mc_af_ = simulate_af_sum_se(cfg, fading, powers, mc_options());
        return *mc_af_;
    }
    const DfSimResult& mc_df() {
        if (!mc_df_) mc_df_ = simulate_df_sum_se(cfg, fading, powers, mc_options());
        return *mc_df_;
    }
    const RhoEstimate& rho_mc() {
        if (!rho_mc_) rho_mc_ = rho_af_empirical(cfg, fading, powers, mc_options());
        return *rho_mc_;
    }
    const ImprovementReport& improvement() {
        if (!improvement_)
            improvement_ = improvement_report(cfg, stats(), fading, budget, config->alloc);
        return *improvement_;
    }
    const SymmetricAllocation& symmetric(Protocol p) {
        auto& slot = p == Protocol::AF ? sym_af_ : sym_df_;
        if (!slot) slot = allocate_symmetric(p, cfg, stats(), fading, budget);
        return *slot;
    }
};

double regime_code(const RegimeClass& rc) {
    switch (rc.kind) {
        case RegimeKind::ZeroLimit: return 0.0;
        case RegimeKind::FiniteLimit: return 1.0;
        case RegimeKind::Unbounded: return 2.0;
    }
    return kNan;
}

using Evaluator = std::function<double(RowCtx&)>;

const std::map<std::string, Evaluator>& evaluators() {
    static const std::map<std::string, Evaluator> table = {
        {"mc_af", [](RowCtx& c) { return c.mc_af().sum_se.mean; }},
        {"mc_af_ci", [](RowCtx& c) { return c.mc_af().sum_se.half_width_95; }},
        {"mc_df", [](RowCtx& c) { return c.mc_df().sum_se.mean; }},
        {"mc_df_ci", [](RowCtx& c) { return c.mc_df().sum_se.half_width_95; }},
        {"exact_af",
         [](RowCtx& c) { return af_exact_rate(c.cfg, c.stats(), c.fading, c.powers).sum; }},
        {"approx_af",
         [](RowCtx& c) { return af_approx_rate(c.cfg, c.stats(), c.fading, c.powers).sum; }},
        {"approx_df",
         [](RowCtx& c) { return df_approx_rates(c.cfg, c.stats(), c.fading, c.powers).sum; }},
        {"rho2_analytic",
         [](RowCtx& c) { return af_rho_squared(c.cfg, c.stats(), c.fading, c.powers); }},
        {"rho2_mc", [](RowCtx& c) { return c.rho_mc().rho2; }},
        {"rho2_mc_ci", [](RowCtx& c) { return 0.5 * (c.rho_mc().hi - c.rho_mc().lo); }},
        {"scaled_af",
         [](RowCtx& c) { return scaled_rate(Protocol::AF, c.scaling, c.cfg, c.fading, c.m_eval); }},
        {"scaled_df",
         [](RowCtx& c) { return scaled_rate(Protocol::DF, c.scaling, c.cfg, c.fading, c.m_eval); }},
        {"asym_af",
         [](RowCtx& c) { return asymptotic_form_rate(Protocol::AF, c.scaling, c.cfg, c.fading, c.m_eval); }},
        {"asym_df",
         [](RowCtx& c) { return asymptotic_form_rate(Protocol::DF, c.scaling, c.cfg, c.fading, c.m_eval); }},
        {"regime_af",
         [](RowCtx& c) {
             return regime_code(asymptotic_limit(Protocol::AF, c.scaling, c.cfg, c.fading));
         }},
        {"limit_af",
         [](RowCtx& c) {
             const RegimeClass rc = asymptotic_limit(Protocol::AF, c.scaling, c.cfg, c.fading);
             return rc.limit_value ? *rc.limit_value : kNan;
         }},
        {"regime_df",
         [](RowCtx& c) {
             return regime_code(asymptotic_limit(Protocol::DF, c.scaling, c.cfg, c.fading));
         }},
        {"limit_df",
         [](RowCtx& c) {
             const RegimeClass rc = asymptotic_limit(Protocol::DF, c.scaling, c.cfg, c.fading);
             return rc.limit_value ? *rc.limit_value : kNan;
         }},
        {"af_uniform", [](RowCtx& c) { return c.improvement().af.uniform_se; }},
        {"af_opt", [](RowCtx& c) { return c.improvement().af.optimized_se; }},
        {"af_uplift_pct", [](RowCtx& c) { return c.improvement().af.uplift_percent; }},
        {"df_uniform", [](RowCtx& c) { return c.improvement().df.uniform_se; }},
        {"df_opt", [](RowCtx& c) { return c.improvement().df.optimized_se; }},
        {"df_uplift_pct", [](RowCtx& c) { return c.improvement().df.uplift_percent; }},
        {"af_pu_opt", [](RowCtx& c) { return c.symmetric(Protocol::AF).p_u; }},
        {"af_pr_opt", [](RowCtx& c) { return c.symmetric(Protocol::AF).p_r; }},
        {"af_se_opt", [](RowCtx& c) { return c.symmetric(Protocol::AF).sum_se; }},
        {"df_pu_opt", [](RowCtx& c) { return c.symmetric(Protocol::DF).p_u; }},
        {"df_pr_opt", [](RowCtx& c) { return c.symmetric(Protocol::DF).p_r; }},
        {"df_se_opt", [](RowCtx& c) { return c.symmetric(Protocol::DF).sum_se; }},
    };
    return table;
}

bool stats_output(const std::string& name) { return name.rfind("sigma2", 0) == 0; }

double eval_stats_output(RowCtx& c, const std::string& name) {
    // sigma2_ar_u3, sigma2tilde_rb_u0, ...
    const auto upos = name.rfind("_u");
    if (upos == std::string::npos) throw std::invalid_argument("unknown output column: " + name);
    const int i = std::stoi(name.substr(upos + 2));
    const std::string base = name.substr(0, upos);
    const EstimationStats& st = c.stats();
    if (i < 0 || i >= c.cfg.n) throw std::invalid_argument("user index out of range in " + name);
    if (base == "sigma2_ar") return st.sigma2_ar[i];
    if (base == "sigma2tilde_ar") return st.sigma2tilde_ar[i];
    if (base == "sigma2_rb") return st.sigma2_rb[i];
    if (base == "sigma2tilde_rb") return st.sigma2tilde_rb[i];
    throw std::invalid_argument("unknown output column: " + name);
}

std::vector<std::string> default_outputs(const ExperimentConfig& c) {
    const bool af = c.protocol != "df";
    const bool df = c.protocol != "af";
    std::vector<std::string> out;
    auto add = [&out](std::initializer_list<const char*> names) {
        for (const char* n : names) out.emplace_back(n);
    };
    if (c.kind == "stats") {
        for (int i = 0; i < c.system.n; ++i) {
            out.push_back("sigma2_ar_u" + std::to_string(i));
            out.push_back("sigma2tilde_ar_u" + std::to_string(i));
            out.push_back("sigma2_rb_u" + std::to_string(i));
            out.push_back("sigma2tilde_rb_u" + std::to_string(i));
        }
    } else if (c.kind == "mc") {
        if (af) add({"mc_af"});
        if (df) add({"mc_df"});
    } else if (c.kind == "exact-af") {
        add({"exact_af"});
    } else if (c.kind == "approx") {
        if (af) add({"approx_af"});
        if (df) add({"approx_df"});
    } else if (c.kind == "scaling") {
        if (af) add({"scaled_af", "asym_af"});
        if (df) add({"scaled_df", "asym_df"});
    } else if (c.kind == "classify") {
        if (af) add({"regime_af", "limit_af"});
        if (df) add({"regime_df", "limit_df"});
    } else if (c.kind == "allocate") {
        if (c.allocate_mode == "symmetric") {
            if (af) add({"af_pu_opt", "af_pr_opt", "af_se_opt"});
            if (df) add({"df_pu_opt", "df_pr_opt", "df_se_opt"});
        } else {
            if (af) add({"af_uniform", "af_opt", "af_uplift_pct"});
            if (df) add({"df_uniform", "df_opt", "df_uplift_pct"});
        }
    }
    return out;
}

// expand requested outputs: every MC value column is followed by its CI column
std::vector<std::string> expand_outputs(const std::vector<std::string>& req) {
    std::vector<std::string> out;
    for (const std::string& name : req) {
        out.push_back(name);
        if (name == "mc_af" || name == "mc_df" || name == "rho2_mc") out.push_back(name + "_ci");
    }
    return out;
}

bool known_output(const std::string& name) {
    return stats_output(name) || evaluators().count(name) > 0;
}

const std::vector<std::string> kSweepVars = {"p_u", "p_r", "p_p", "P", "M", "N"};

bool is_integral_axis(const std::string& v) { return v == "M" || v == "N"; }

int effective_tau_p(const SystemConfig& sys, int n) { return sys.tau_p > 0 ? sys.tau_p : 2 * n; }

}  // namespace

std::vector<std::string> validate_experiment(const ExperimentConfig& config) {
    std::vector<std::string> out;
    const std::vector<std::string> kinds = {"stats",   "mc",       "exact-af", "approx",
                                            "scaling", "classify", "allocate"};
    if (std::find(kinds.begin(), kinds.end(), config.kind) == kinds.end())
        out.push_back("unknown kind: " + config.kind);
    if (config.sweep.variable.empty())
        out.push_back("sweep.variable is required");
    else if (std::find(kSweepVars.begin(), kSweepVars.end(), config.sweep.variable) ==
             kSweepVars.end())
        out.push_back("unknown sweep variable: " + config.sweep.variable);
    if (config.sweep.grid.empty()) out.push_back("sweep.grid is empty");
    for (std::size_t i = 1; i < config.sweep.grid.size(); ++i)
        if (config.sweep.grid[i] <= config.sweep.grid[i - 1]) {
            out.push_back("sweep.grid must be strictly increasing");
            break;
        }
    if (is_integral_axis(config.sweep.variable))
        for (double g : config.sweep.grid)
            if (g < 1.0 || g != std::floor(g)) {
                out.push_back("sweep.grid for " + config.sweep.variable +
                              " must contain positive integers");
                break;
            }
    if (config.trials < 1) out.push_back("trials must be >= 1");
    if (config.protocol != "af" && config.protocol != "df" && config.protocol != "both")
        out.push_back("protocol must be af, df or both");
    if (config.mc_mode != "direct" && config.mc_mode != "pilot")
        out.push_back("mc_mode must be direct or pilot");
    if (config.allocate_mode != "gp" && config.allocate_mode != "symmetric")
        out.push_back("allocate mode must be gp or symmetric");
    if (config.system.n < 1) out.push_back("N must be >= 1");
    if (config.system.m < 1) out.push_back("M must be >= 1");
    const bool sweeping_n = config.sweep.variable == "N";
    const int n = config.system.n;
    auto check_beta = [&](const std::vector<double>& v, const char* name) {
        if (v.empty()) out.push_back(std::string(name) + " must not be empty");
        if (v.size() != 1 && static_cast<int>(v.size()) != n)
            out.push_back(std::string(name) + " must have 1 or N entries");
        if (v.size() != 1 && sweeping_n)
            out.push_back(std::string(name) + " must be a single value when sweeping N");
        for (double b : v)
            if (!(b > 0.0) || !std::isfinite(b)) {
                out.push_back(std::string("nonpositive fading in ") + name);
                break;
            }
    };
    check_beta(config.beta_ar, "beta_ar");
    check_beta(config.beta_rb, "beta_rb");
    for (const std::string& o : config.outputs)
        if (!known_output(o)) out.push_back("unknown output column: " + o);
    if (config.kind == "scaling" || config.kind == "classify") {
        try {
            ScalingSpec s = config.scaling;
            s.e_u = db_to_linear(config.e_u_db);
            s.e_r = db_to_linear(config.e_r_db);
            s.e_p = db_to_linear(config.e_p_db);
            validate_scaling_spec(s);
        } catch (const std::exception& e) {
            out.push_back(e.what());
        }
    }
    return out;
}

Table run_experiment(const ExperimentConfig& config) {
    {
        const std::vector<std::string> problems = validate_experiment(config);
        if (!problems.empty()) {
            std::ostringstream os;
            os << "invalid experiment configuration:";
            for (const std::string& p : problems) os << "\n  - " << p;
            throw std::invalid_argument(os.str());
        }
    }

    Table table;
    table.metadata = config.metadata;
    table.columns.push_back(config.sweep.variable);
    const std::vector<std::string> outs =
        expand_outputs(config.outputs.empty() ? default_outputs(config) : config.outputs);
    for (const std::string& o : outs) table.columns.push_back(o);

    for (double point : config.sweep.grid) {
        RowCtx ctx;
        ctx.config = &config;
        ctx.cfg = config.system;
        double p_u_db = config.p_u_db, p_r_db = config.p_r_db, p_p_db = config.p_p_db;
        double budget_db = config.budget_db;
        ctx.m_eval = double(config.system.m);
        const std::string& axis = config.sweep.variable;
        if (axis == "M") {
            ctx.cfg.m = static_cast<int>(point);
            ctx.m_eval = point;
        } else if (axis == "N") {
            ctx.cfg.n = static_cast<int>(point);
        } else if (axis == "p_u") {
            p_u_db = point;
        } else if (axis == "p_r") {
            p_r_db = point;
        } else if (axis == "p_p") {
            p_p_db = point;
        } else if (axis == "P") {
            budget_db = point;
        }
        ctx.cfg.tau_p = effective_tau_p(config.system, ctx.cfg.n);
        if (config.couple_pp_to_pu) p_p_db = p_u_db;

        const int n = ctx.cfg.n;
        auto expand_beta = [n](const std::vector<double>& v) {
            Eigen::VectorXd out(n);
            for (int i = 0; i < n; ++i) out[i] = v.size() == 1 ? v[0] : v[i];
            return out;
        };
        ctx.fading = {expand_beta(config.beta_ar), expand_beta(config.beta_rb)};

        const double p_u = db_to_linear(p_u_db);
        double p_r = db_to_linear(p_r_db);
        if (config.couple_pr_to_2n_pu) p_r = 2.0 * n * p_u;
        ctx.powers = PowerProfile::uniform(n, p_u, p_r, db_to_linear(p_p_db));
        ctx.budget = db_to_linear(budget_db);
        ctx.scaling = config.scaling;
        ctx.scaling.e_u = db_to_linear(config.e_u_db);
        ctx.scaling.e_r = db_to_linear(config.e_r_db);
        ctx.scaling.e_p = db_to_linear(config.e_p_db);

        std::vector<double> row;
        row.push_back(point);
        for (const std::string& name : outs) {
            double v = kNan;
            try {
                v = stats_output(name) ? eval_stats_output(ctx, name) : evaluators().at(name)(ctx);
            } catch (const GpError&) {
                ++table.solver_failures;  // leave the cell as nan, keep sweeping
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void emit_csv(const Table& table, std::ostream& os) {
    for (const std::string& m : table.metadata) os << "# " << m << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ',';
        os << table.columns[c];
    }
    os << '\n';
    char buf[64];
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            if (std::isnan(row[c])) {
                os << "nan";
            } else {
                std::snprintf(buf, sizeof buf, "%.12g", row[c]);
                os << buf;
            }
        }
        os << '\n';
    }
}

void emit_csv(const Table& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    emit_csv(table, f);
    if (!f.good()) throw std::runtime_error("write failure: " + path);
}

}  // namespace relaysim::runner
