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

#include "relaysim/df_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "relaysim/af_analysis.hpp"

namespace relaysim {

namespace {

double se(double sinr) { return 0.5 * std::log2(1.0 + sinr); }

// First-phase denominator common to r1/r_ar/r_br of pair i, without the
// (sigma2_ar + sigma2_rb) factor that is folded into the numerators here.
double first_phase_den(const SystemConfig& cfg, const EstimationStats& st,
                       const FadingProfile& fading, const PowerProfile& p, int i) {
    double den = p.p_a[i] * st.sigma2tilde_ar[i] + p.p_b[i] * st.sigma2tilde_rb[i] + 1.0;
    for (int j = 0; j < cfg.n; ++j) {
        if (j == i) continue;
        den += p.p_a[j] * fading.beta_ar[j] + p.p_b[j] * fading.beta_rb[j];
    }
    return den;
}

}  // namespace

double df_rho_squared(const SystemConfig& cfg, const EstimationStats& stats, double p_r) {
    const double total = stats.sigma2_ar.sum() + stats.sigma2_rb.sum();
    const double den = static_cast<double>(cfg.m) * total;
    return den > 0.0 ? p_r / den : 0.0;
}

double df_second_phase_sinr(const SystemConfig& cfg, const EstimationStats& stats,
                            const FadingProfile& fading, const PowerProfile& powers, int pair,
                            Side side) {
    if (powers.p_r <= 0.0) return 0.0;
    const double m = static_cast<double>(cfg.m);
    const double s2 = side == Side::A ? stats.sigma2_ar[pair] : stats.sigma2_rb[pair];
    const double beta = side == Side::A ? fading.beta_ar[pair] : fading.beta_rb[pair];
    const double total = stats.sigma2_ar.sum() + stats.sigma2_rb.sum();
    if (total <= 0.0) return 0.0;
    return powers.p_r * m * s2 * s2 / ((powers.p_r * beta + 1.0) * total);
}

DfRateTable df_approx_rates(const SystemConfig& cfg, const EstimationStats& stats,
                            const FadingProfile& fading, const PowerProfile& powers) {
    const double m = static_cast<double>(cfg.m);
    DfRateTable out;
    out.pairs.resize(cfg.n);
    for (int i = 0; i < cfg.n; ++i) {
        DfPairRates& r = out.pairs[i];
        const double s2a = stats.sigma2_ar[i], s2b = stats.sigma2_rb[i];
        const double s_sum = s2a + s2b;
        if (s_sum > 0.0) {
            const double den = s_sum * first_phase_den(cfg, stats, fading, powers, i);
            const double num_a = powers.p_a[i] * (m * s2a * s2a + s2a * s2b);
            const double num_b = powers.p_b[i] * (m * s2b * s2b + s2a * s2b);
            r.r1 = se((num_a + num_b) / den);
            r.r_ar = se(num_a / den);
            r.r_br = se(num_b / den);
        }
        r.r_ra = se(df_second_phase_sinr(cfg, stats, fading, powers, i, Side::A));
        r.r_rb = se(df_second_phase_sinr(cfg, stats, fading, powers, i, Side::B));
        r.ab_delivery_limited = r.r_rb <= r.r_ar;
        r.ba_delivery_limited = r.r_ra <= r.r_br;
        r.r2 = std::min(r.r_ar, r.r_rb) + std::min(r.r_br, r.r_ra);
        r.first_phase_limited = r.r1 <= r.r2;
        r.rate = std::min(r.r1, r.r2);
        out.sum += r.rate;
    }
    out.sum *= cfg.overhead();
    return out;
}

std::vector<LowSnrComparison> low_snr_comparison(const SystemConfig& cfg,
                                                 const EstimationStats& stats,
                                                 const FadingProfile& fading,
                                                 const PowerProfile& powers) {
    const double m = static_cast<double>(cfg.m);
    const Eigen::VectorXd af_a = af_approx_sinr(cfg, stats, fading, powers, Side::A);
    const Eigen::VectorXd af_b = af_approx_sinr(cfg, stats, fading, powers, Side::B);
    const DfRateTable df = df_approx_rates(cfg, stats, fading, powers);

    std::vector<LowSnrComparison> out(cfg.n);
    for (int i = 0; i < cfg.n; ++i) {
        LowSnrComparison& c = out[i];
        c.af_sum = se(af_a[i]) + se(af_b[i]);
        c.df_sum = df.pairs[i].rate;
        const double s2a = stats.sigma2_ar[i], s2b = stats.sigma2_rb[i];
        c.af_limit = se(powers.p_b[i] * m * s2b) + se(powers.p_a[i] * m * s2a);
        const double s_sum = s2a + s2b;
        if (s_sum > 0.0) {
            c.df_limit = se((powers.p_a[i] * s2a * (m * s2a + s2b) +
                             powers.p_b[i] * s2b * (s2a + m * s2b)) /
                            s_sum);
        }
        c.af_exceeds = c.af_sum > c.df_sum;
    }
    return out;
}

}  // namespace relaysim
