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

#include "relaysim/allocation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "relaysim/af_analysis.hpp"
#include "relaysim/df_analysis.hpp"
#include "relaysim/gp.hpp"

namespace relaysim {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string pa(int i) { return "pa" + std::to_string(i); }
std::string pb(int i) { return "pb" + std::to_string(i); }
std::string ga(int i) { return "ga" + std::to_string(i); }
std::string gb(int i) { return "gb" + std::to_string(i); }
std::string gg(int i) { return "g" + std::to_string(i); }

double se(double sinr) { return 0.5 * std::log2(1.0 + sinr); }

Monomial mono(double coeff, std::initializer_list<std::pair<std::string, double>> exps) {
    Monomial m;
    m.coeff = coeff;
    for (const auto& [name, e] : exps) m.exponents[name] += e;
    for (auto it = m.exponents.begin(); it != m.exponents.end();)
        it = it->second == 0.0 ? m.exponents.erase(it) : std::next(it);
    return m;
}

Posynomial budget_constraint(int n, double total_power) {
    Posynomial c;
    for (int i = 0; i < n; ++i) {
        c += mono(1.0 / total_power, {{pa(i), 1.0}});
        c += mono(1.0 / total_power, {{pb(i), 1.0}});
    }
    c += mono(1.0 / total_power, {{"pr", 1.0}});
    return c;
}

// enforce the exact budget after the solve (the GP keeps it within 10*tol)
void project_budget(AllocationResult& r, double total_power) {
    const double used = r.p_a.sum() + r.p_b.sum() + r.p_r;
    if (used > total_power) {
        const double s = total_power / used;
        r.p_a *= s;
        r.p_b *= s;
        r.p_r *= s;
    }
}

struct AfSinrTables {
    const AfGpCoeffs& k;
    int n;
    VectorXd sinr_a(const VectorXd& p_a, const VectorXd& p_b, double p_r) const {
        VectorXd out(n);
        for (int i = 0; i < n; ++i) {
            const double den = k.a.row(i).dot(p_a) + k.b.row(i).dot(p_b) +
                               (k.c.row(i).dot(p_a) + k.d.row(i).dot(p_b)) / p_r + k.e[i];
            out[i] = p_b[i] / den;
        }
        return out;
    }
    VectorXd sinr_b(const VectorXd& p_a, const VectorXd& p_b, double p_r) const {
        VectorXd out(n);
        for (int i = 0; i < n; ++i) {
            const double den = k.a_m.row(i).dot(p_a) + k.b_m.row(i).dot(p_b) +
                               (k.c_m.row(i).dot(p_a) + k.d_m.row(i).dot(p_b)) / p_r + k.e_m[i];
            out[i] = p_a[i] / den;
        }
        return out;
    }
};

// DF coefficient tables from the large-array approximation (noise variance 1)
struct DfCoeffs {
    VectorXd a, b;      // first-phase desired-signal gains
    MatrixXd c, d;      // first-phase interference tables
    VectorXd e, f;      // relay -> A broadcast link: sinr = p_r / (e p_r + f)
    VectorXd e_m, f_m;  // relay -> B broadcast link
};

DfCoeffs build_df_coeffs(const SystemConfig& cfg, const EstimationStats& st,
                         const FadingProfile& fading) {
    const int n = cfg.n;
    const double m = double(cfg.m);
    DfCoeffs k;
    k.a.resize(n);
    k.b.resize(n);
    k.c.resize(n, n);
    k.d.resize(n, n);
    k.e.resize(n);
    k.f.resize(n);
    k.e_m.resize(n);
    k.f_m.resize(n);
    const double total = st.sigma2_ar.sum() + st.sigma2_rb.sum();
    for (int i = 0; i < n; ++i) {
        const double s2a = st.sigma2_ar[i], s2b = st.sigma2_rb[i];
        const double s_sum = s2a + s2b;
        k.a[i] = (m * s2a * s2a + s2a * s2b) / s_sum;
        k.b[i] = (m * s2b * s2b + s2a * s2b) / s_sum;
        for (int j = 0; j < n; ++j) {
            k.c(i, j) = j == i ? st.sigma2tilde_ar[i] : fading.beta_ar[j];
            k.d(i, j) = j == i ? st.sigma2tilde_rb[i] : fading.beta_rb[j];
        }
        k.e[i] = fading.beta_ar[i] * total / (m * s2a * s2a);
        k.f[i] = total / (m * s2a * s2a);
        k.e_m[i] = fading.beta_rb[i] * total / (m * s2b * s2b);
        k.f_m[i] = total / (m * s2b * s2b);
    }
    return k;
}

struct DfSinrs {
    VectorXd first_sum, first_a, first_b, bcast_a, bcast_b;
};

DfSinrs df_sinrs(const DfCoeffs& k, const VectorXd& p_a, const VectorXd& p_b, double p_r) {
    const int n = static_cast<int>(k.a.size());
    DfSinrs s;
    s.first_sum.resize(n);
    s.first_a.resize(n);
    s.first_b.resize(n);
    s.bcast_a.resize(n);
    s.bcast_b.resize(n);
    for (int i = 0; i < n; ++i) {
        const double den = k.c.row(i).dot(p_a) + k.d.row(i).dot(p_b) + 1.0;
        s.first_a[i] = k.a[i] * p_a[i] / den;
        s.first_b[i] = k.b[i] * p_b[i] / den;
        s.first_sum[i] = (k.a[i] * p_a[i] + k.b[i] * p_b[i]) / den;
        s.bcast_a[i] = p_r / (k.e[i] * p_r + k.f[i]);
        s.bcast_b[i] = p_r / (k.e_m[i] * p_r + k.f_m[i]);
    }
    return s;
}

bool all_equal_fading(const FadingProfile& fading) {
    const double b0 = fading.beta_ar[0];
    for (int i = 0; i < fading.beta_ar.size(); ++i)
        if (std::abs(fading.beta_ar[i] - b0) > 1e-12 * b0 ||
            std::abs(fading.beta_rb[i] - b0) > 1e-12 * b0)
            return false;
    return true;
}

}  // namespace

AfGpCoeffs build_af_gp_coeffs(const SystemConfig& cfg, const EstimationStats& st,
                              const FadingProfile& fading) {
    const int n = cfg.n;
    const double m = double(cfg.m);
    AfGpCoeffs k;
    k.a.resize(n, n);
    k.b.resize(n, n);
    k.c.resize(n, n);
    k.d.resize(n, n);
    k.e.resize(n);
    k.a_m.resize(n, n);
    k.b_m.resize(n, n);
    k.c_m.resize(n, n);
    k.d_m.resize(n, n);
    k.e_m.resize(n);
    for (int i = 0; i < n; ++i) {
        const double s2a_i = st.sigma2_ar[i], s2b_i = st.sigma2_rb[i];
        const double q = s2a_i * s2a_i * s2b_i * s2b_i;
        for (int j = 0; j < n; ++j) {
            const double s2a_j = st.sigma2_ar[j], s2b_j = st.sigma2_rb[j];
            if (j == i) {
                k.a(i, j) = 4.0 * fading.beta_ar[i] / s2b_i / m;
                k.b(i, j) = (fading.beta_rb[i] / s2b_i + fading.beta_ar[i] / s2a_i) / m;
                k.b_m(i, j) = 4.0 * fading.beta_rb[i] / s2a_i / m;
                k.a_m(i, j) = (fading.beta_ar[i] / s2a_i + fading.beta_rb[i] / s2b_i) / m;
            } else {
                k.a(i, j) =
                    (fading.beta_ar[j] / s2b_i + s2a_j * s2a_j * s2b_j * fading.beta_ar[i] / q) / m;
                k.b(i, j) =
                    (fading.beta_rb[j] / s2b_i + s2a_j * s2b_j * s2b_j * fading.beta_ar[i] / q) / m;
                k.b_m(i, j) =
                    (fading.beta_rb[j] / s2a_i + s2b_j * s2b_j * s2a_j * fading.beta_rb[i] / q) / m;
                k.a_m(i, j) =
                    (fading.beta_ar[j] / s2a_i + s2b_j * s2a_j * s2a_j * fading.beta_rb[i] / q) / m;
            }
            k.c(i, j) = s2a_j * s2a_j * s2b_j / (m * q);
            k.d(i, j) = s2a_j * s2b_j * s2b_j / (m * q);
            // the relay-power term comes from the shared normalization, so the
            // mirrored tables coincide with the direct ones
            k.c_m(i, j) = k.c(i, j);
            k.d_m(i, j) = k.d(i, j);
        }
        k.e[i] = 1.0 / (m * s2b_i);
        k.e_m[i] = 1.0 / (m * s2a_i);
    }
    return k;
}

AllocationResult allocate_af(const SystemConfig& cfg, const EstimationStats& stats,
                             const FadingProfile& fading, double total_power,
                             const AllocationOptions& opt) {
    if (!(total_power > 0.0)) throw std::invalid_argument("total power must be positive");
    const int n = cfg.n;
    const AfGpCoeffs coeffs = build_af_gp_coeffs(cfg, stats, fading);
    const AfSinrTables tables{coeffs, n};
    const double floor = 1e-9 * total_power;
    const double overhead = cfg.overhead();

    AllocationResult res;
    res.p_a = VectorXd::Constant(n, total_power / (4.0 * n));
    res.p_b = res.p_a;
    res.p_r = total_power / 2.0;

    VectorXd gamma_a = tables.sinr_a(res.p_a, res.p_b, res.p_r);
    VectorXd gamma_b = tables.sinr_b(res.p_a, res.p_b, res.p_r);
    auto surrogate_se = [&](const VectorXd& ga_, const VectorXd& gb_) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += se(ga_[i]) + se(gb_[i]);
        return overhead * s;
    };
    res.objective_trace.push_back(surrogate_se(gamma_a, gamma_b));

    for (int it = 0; it < opt.max_iterations; ++it) {
        GpProblem prob;
        Monomial objective;
        objective.coeff = 1.0;
        for (int i = 0; i < n; ++i) {
            objective.exponents[ga(i)] = -gamma_a[i] / (1.0 + gamma_a[i]);
            objective.exponents[gb(i)] = -gamma_b[i] / (1.0 + gamma_b[i]);
        }
        prob.objective = Posynomial(objective);

        for (int i = 0; i < n; ++i) {
            Posynomial sa;  // gamma_a[i] <= table SINR
            for (int j = 0; j < n; ++j) {
                sa += mono(coeffs.a(i, j), {{ga(i), 1.0}, {pb(i), -1.0}, {pa(j), 1.0}});
                sa += mono(coeffs.b(i, j), {{ga(i), 1.0}, {pb(i), -1.0}, {pb(j), 1.0}});
                sa += mono(coeffs.c(i, j), {{ga(i), 1.0}, {pb(i), -1.0}, {"pr", -1.0}, {pa(j), 1.0}});
                sa += mono(coeffs.d(i, j), {{ga(i), 1.0}, {pb(i), -1.0}, {"pr", -1.0}, {pb(j), 1.0}});
            }
            sa += mono(coeffs.e[i], {{ga(i), 1.0}, {pb(i), -1.0}});
            prob.constraints.push_back(std::move(sa));

            Posynomial sb;
            for (int j = 0; j < n; ++j) {
                sb += mono(coeffs.a_m(i, j), {{gb(i), 1.0}, {pa(i), -1.0}, {pa(j), 1.0}});
                sb += mono(coeffs.b_m(i, j), {{gb(i), 1.0}, {pa(i), -1.0}, {pb(j), 1.0}});
                sb += mono(coeffs.c_m(i, j), {{gb(i), 1.0}, {pa(i), -1.0}, {"pr", -1.0}, {pa(j), 1.0}});
                sb += mono(coeffs.d_m(i, j), {{gb(i), 1.0}, {pa(i), -1.0}, {"pr", -1.0}, {pb(j), 1.0}});
            }
            sb += mono(coeffs.e_m[i], {{gb(i), 1.0}, {pa(i), -1.0}});
            prob.constraints.push_back(std::move(sb));
        }
        prob.constraints.push_back(budget_constraint(n, total_power));

        for (int i = 0; i < n; ++i) {
            prob.bounds[pa(i)] = {floor, total_power};
            prob.bounds[pb(i)] = {floor, total_power};
            prob.bounds[ga(i)] = {gamma_a[i] / opt.theta, gamma_a[i] * opt.theta};
            prob.bounds[gb(i)] = {gamma_b[i] / opt.theta, gamma_b[i] * opt.theta};
        }
        prob.bounds["pr"] = {floor, total_power};

        // nudged anchor: strictly interior start for the barrier
        const double delta = 1e-4;
        GpPoint start;
        for (int i = 0; i < n; ++i) {
            start[pa(i)] = std::max(res.p_a[i] * (1.0 - delta), floor * (1.0 + delta));
            start[pb(i)] = std::max(res.p_b[i] * (1.0 - delta), floor * (1.0 + delta));
            start[ga(i)] = gamma_a[i] * (1.0 - 2.0 * delta);
            start[gb(i)] = gamma_b[i] * (1.0 - 2.0 * delta);
        }
        start["pr"] = std::max(res.p_r * (1.0 - delta), floor * (1.0 + delta));

        const GpResult sol = gp_solve(prob, opt.gp_tol, &start);
        for (int i = 0; i < n; ++i) {
            res.p_a[i] = sol.x.at(pa(i));
            res.p_b[i] = sol.x.at(pb(i));
        }
        res.p_r = sol.x.at("pr");
        double diff = 0.0;
        VectorXd new_a(n), new_b(n);
        for (int i = 0; i < n; ++i) {
            new_a[i] = sol.x.at(ga(i));
            new_b[i] = sol.x.at(gb(i));
            diff = std::max({diff, std::abs(new_a[i] - gamma_a[i]), std::abs(new_b[i] - gamma_b[i])});
        }
        gamma_a = new_a;
        gamma_b = new_b;
        res.objective_trace.push_back(surrogate_se(gamma_a, gamma_b));
        res.iterations = it + 1;
        if (diff < opt.eps) {
            res.converged = true;
            break;
        }
    }

    project_budget(res, total_power);
    PowerProfile final_powers{res.p_a, res.p_b, res.p_r, 0.0};
    res.sum_se = af_approx_rate(cfg, stats, fading, final_powers).sum;
    return res;
}

AllocationResult allocate_df(const SystemConfig& cfg, const EstimationStats& stats,
                             const FadingProfile& fading, double total_power,
                             const AllocationOptions& opt) {
    if (!(total_power > 0.0)) throw std::invalid_argument("total power must be positive");
    const int n = cfg.n;
    const DfCoeffs k = build_df_coeffs(cfg, stats, fading);
    const double floor = 1e-9 * total_power;
    const double overhead = cfg.overhead();

    AllocationResult res;
    res.p_a = VectorXd::Constant(n, total_power / (4.0 * n));
    res.p_b = res.p_a;
    res.p_r = total_power / 2.0;

    auto direction_caps = [&](const DfSinrs& s, int i) -> std::pair<double, double> {
        if (opt.df_printed_link_pairing)
            return {std::min(s.first_a[i], s.bcast_a[i]), std::min(s.first_b[i], s.bcast_b[i])};
        return {std::min(s.first_a[i], s.bcast_b[i]), std::min(s.first_b[i], s.bcast_a[i])};
    };

    DfSinrs s0 = df_sinrs(k, res.p_a, res.p_b, res.p_r);
    VectorXd gamma(n), gamma_a(n), gamma_b(n);
    for (int i = 0; i < n; ++i) {
        const auto [ca, cb] = direction_caps(s0, i);
        gamma_a[i] = ca;
        gamma_b[i] = cb;
        gamma[i] = std::min(s0.first_sum[i], ca + cb + ca * cb);
    }
    auto surrogate_se = [&](const VectorXd& g) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += se(g[i]);
        return overhead * s;
    };
    res.objective_trace.push_back(surrogate_se(gamma));

    for (int it = 0; it < opt.max_iterations; ++it) {
        GpProblem prob;
        Monomial objective;
        objective.coeff = 1.0;
        for (int i = 0; i < n; ++i) objective.exponents[gg(i)] = -gamma[i] / (1.0 + gamma[i]);
        prob.objective = Posynomial(objective);

        for (int i = 0; i < n; ++i) {
            // (1) composite SINR against the AM-GM-condensed first phase
            const double wa = k.a[i] * res.p_a[i];
            const double wb = k.b[i] * res.p_b[i];
            const double nu_a = wa / (wa + wb);
            const double nu_b = wb / (wa + wb);
            const double w = std::pow(k.a[i] / nu_a, nu_a) * std::pow(k.b[i] / nu_b, nu_b);
            Posynomial c1;
            for (int j = 0; j < n; ++j) {
                const int jp = opt.df_literal_constraint_powers ? i : j;
                c1 += mono(k.c(i, j) / w,
                           {{gg(i), 1.0}, {pa(i), -nu_a}, {pb(i), -nu_b}, {pa(jp), 1.0}});
                c1 += mono(k.d(i, j) / w,
                           {{gg(i), 1.0}, {pa(i), -nu_a}, {pb(i), -nu_b}, {pb(jp), 1.0}});
            }
            c1 += mono(1.0 / w, {{gg(i), 1.0}, {pa(i), -nu_a}, {pb(i), -nu_b}});
            prob.constraints.push_back(std::move(c1));

            // (2) composite SINR against the condensed direction product
            const double prod = gamma_a[i] + gamma_b[i] + gamma_a[i] * gamma_b[i];
            const double lam_a = gamma_a[i] * (1.0 + gamma_b[i]) / prod;
            const double lam_b = gamma_b[i] * (1.0 + gamma_a[i]) / prod;
            const double eta =
                prod * std::pow(gamma_a[i], -lam_a) * std::pow(gamma_b[i], -lam_b);
            prob.constraints.push_back(Posynomial(
                mono(1.0 / eta, {{gg(i), 1.0}, {ga(i), -lam_a}, {gb(i), -lam_b}})));

            // (3,5) direction variables against the first-phase link SINRs
            Posynomial c3, c5;
            for (int j = 0; j < n; ++j) {
                const int jp = opt.df_literal_constraint_powers ? i : j;
                c3 += mono(k.c(i, j) / k.a[i], {{ga(i), 1.0}, {pa(i), -1.0}, {pa(jp), 1.0}});
                c3 += mono(k.d(i, j) / k.a[i], {{ga(i), 1.0}, {pa(i), -1.0}, {pb(jp), 1.0}});
                c5 += mono(k.c(i, j) / k.b[i], {{gb(i), 1.0}, {pb(i), -1.0}, {pa(jp), 1.0}});
                c5 += mono(k.d(i, j) / k.b[i], {{gb(i), 1.0}, {pb(i), -1.0}, {pb(jp), 1.0}});
            }
            c3 += mono(1.0 / k.a[i], {{ga(i), 1.0}, {pa(i), -1.0}});
            c5 += mono(1.0 / k.b[i], {{gb(i), 1.0}, {pb(i), -1.0}});
            prob.constraints.push_back(std::move(c3));
            prob.constraints.push_back(std::move(c5));

            // (4,6) direction variables against the broadcast link SINRs
            const double e_a = opt.df_printed_link_pairing ? k.e[i] : k.e_m[i];
            const double f_a = opt.df_printed_link_pairing ? k.f[i] : k.f_m[i];
            const double e_b = opt.df_printed_link_pairing ? k.e_m[i] : k.e[i];
            const double f_b = opt.df_printed_link_pairing ? k.f_m[i] : k.f[i];
            Posynomial c4;
            c4 += mono(e_a, {{ga(i), 1.0}});
            c4 += mono(f_a, {{ga(i), 1.0}, {"pr", -1.0}});
            prob.constraints.push_back(std::move(c4));
            Posynomial c6;
            c6 += mono(e_b, {{gb(i), 1.0}});
            c6 += mono(f_b, {{gb(i), 1.0}, {"pr", -1.0}});
            prob.constraints.push_back(std::move(c6));
        }
        prob.constraints.push_back(budget_constraint(n, total_power));

        for (int i = 0; i < n; ++i) {
            prob.bounds[pa(i)] = {std::max(floor, res.p_a[i] / opt.theta),
                                  std::min(total_power, res.p_a[i] * opt.theta)};
            prob.bounds[pb(i)] = {std::max(floor, res.p_b[i] / opt.theta),
                                  std::min(total_power, res.p_b[i] * opt.theta)};
            prob.bounds[gg(i)] = {gamma[i] / opt.theta, gamma[i] * opt.theta};
            prob.bounds[ga(i)] = {gamma_a[i] / opt.theta, gamma_a[i] * opt.theta};
            prob.bounds[gb(i)] = {gamma_b[i] / opt.theta, gamma_b[i] * opt.theta};
        }
        prob.bounds["pr"] = {floor, total_power};

        const double delta = 1e-4;
        GpPoint start;
        for (int i = 0; i < n; ++i) {
            start[pa(i)] = res.p_a[i] * (1.0 - delta);
            start[pb(i)] = res.p_b[i] * (1.0 - delta);
            start[ga(i)] = gamma_a[i] * (1.0 - 2.0 * delta);
            start[gb(i)] = gamma_b[i] * (1.0 - 2.0 * delta);
            start[gg(i)] = gamma[i] * (1.0 - 5.0 * delta);
        }
        start["pr"] = res.p_r * (1.0 - delta);

        const GpResult sol = gp_solve(prob, opt.gp_tol, &start);
        double diff = 0.0;
        for (int i = 0; i < n; ++i) {
            const double na = sol.x.at(pa(i)), nb = sol.x.at(pb(i));
            diff = std::max({diff, std::abs(na - res.p_a[i]), std::abs(nb - res.p_b[i])});
            res.p_a[i] = na;
            res.p_b[i] = nb;
            const double vg = sol.x.at(gg(i)), va = sol.x.at(ga(i)), vb = sol.x.at(gb(i));
            diff = std::max({diff, std::abs(vg - gamma[i]), std::abs(va - gamma_a[i]),
                             std::abs(vb - gamma_b[i])});
            gamma[i] = vg;
            gamma_a[i] = va;
            gamma_b[i] = vb;
        }
        res.p_r = sol.x.at("pr");
        res.objective_trace.push_back(surrogate_se(gamma));
        res.iterations = it + 1;
        if (diff < opt.eps) {
            res.converged = true;
            break;
        }
    }

    project_budget(res, total_power);
    PowerProfile final_powers{res.p_a, res.p_b, res.p_r, 0.0};
    res.sum_se = df_approx_rates(cfg, stats, fading, final_powers).sum;
    return res;
}

SymmetricAllocation allocate_symmetric(Protocol protocol, const SystemConfig& cfg,
                                       const EstimationStats& stats, const FadingProfile& fading,
                                       double total_power) {
    const int n = cfg.n;
    auto sum_se = [&](double p_u) {
        const double p_r = total_power - 2.0 * n * p_u;
        const PowerProfile p = PowerProfile::uniform(n, p_u, p_r, 0.0);
        return protocol == Protocol::AF ? af_approx_rate(cfg, stats, fading, p).sum
                                        : df_approx_rates(cfg, stats, fading, p).sum;
    };

    if (protocol == Protocol::AF && all_equal_fading(fading)) {
        SymmetricAllocation out;
        out.p_u = total_power / (4.0 * n);
        out.p_r = total_power / 2.0;
        out.sum_se = sum_se(out.p_u);
        return out;
    }

    // golden-section search on the concave 1-D objective
    const double gr = 0.6180339887498949;
    double lo = 1e-9 * total_power / (2.0 * n);
    double hi = (1.0 - 1e-9) * total_power / (2.0 * n);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = sum_se(x1), f2 = sum_se(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = sum_se(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = sum_se(x1);
        }
    }
    SymmetricAllocation out;
    out.p_u = 0.5 * (lo + hi);
    out.p_r = total_power - 2.0 * n * out.p_u;
    out.sum_se = sum_se(out.p_u);
    return out;
}

ImprovementReport improvement_report(const SystemConfig& cfg, const EstimationStats& stats,
                                     const FadingProfile& fading, double total_power,
                                     const AllocationOptions& opt) {
    const int n = cfg.n;
    const PowerProfile uniform =
        PowerProfile::uniform(n, total_power / (4.0 * n), total_power / 2.0, 0.0);
    ImprovementReport rep;
    rep.af.uniform_se = af_approx_rate(cfg, stats, fading, uniform).sum;
    rep.df.uniform_se = df_approx_rates(cfg, stats, fading, uniform).sum;
    rep.af.optimized_se = allocate_af(cfg, stats, fading, total_power, opt).sum_se;
    rep.df.optimized_se = allocate_df(cfg, stats, fading, total_power, opt).sum_se;
    rep.af.uplift_percent = 100.0 * (rep.af.optimized_se - rep.af.uniform_se) / rep.af.uniform_se;
    rep.df.uplift_percent = 100.0 * (rep.df.optimized_se - rep.df.uniform_se) / rep.df.uniform_se;
    return rep;
}

}  // namespace relaysim
