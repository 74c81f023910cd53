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

#include "relaysim/af_analysis.hpp"

#include <cmath>
#include <limits>

namespace relaysim {

namespace {

// Inputs resolved for one destination side. "self" is the hop between the
// destination user and the relay (AR for side A), "peer" the partner's hop.
// Side B is obtained by swapping hop roles and the two user powers; the
// mirrored rate expressions then read identically to the side-A ones.
struct SideCtx {
    double m;
    int n;
    double p_r;
    Eigen::VectorXd p_self, p_peer;
    Eigen::VectorXd beta_self, beta_peer;
    Eigen::VectorXd s2_self, st2_self, s2_peer, st2_peer;
    Eigen::VectorXd ss;  // s2_self[i] * s2_peer[i] (side independent)
};

SideCtx make_ctx(const SystemConfig& cfg, const EstimationStats& stats, const FadingProfile& fading,
                 const PowerProfile& powers, Side side) {
    SideCtx c;
    c.m = static_cast<double>(cfg.m);
    c.n = cfg.n;
    c.p_r = powers.p_r;
    if (side == Side::A) {
        c.p_self = powers.p_a;
        c.p_peer = powers.p_b;
        c.beta_self = fading.beta_ar;
        c.beta_peer = fading.beta_rb;
        c.s2_self = stats.sigma2_ar;
        c.st2_self = stats.sigma2tilde_ar;
        c.s2_peer = stats.sigma2_rb;
        c.st2_peer = stats.sigma2tilde_rb;
    } else {
        c.p_self = powers.p_b;
        c.p_peer = powers.p_a;
        c.beta_self = fading.beta_rb;
        c.beta_peer = fading.beta_ar;
        c.s2_self = stats.sigma2_rb;
        c.st2_self = stats.sigma2tilde_rb;
        c.s2_peer = stats.sigma2_ar;
        c.st2_peer = stats.sigma2tilde_ar;
    }
    c.ss = c.s2_self.cwiseProduct(c.s2_peer);
    return c;
}

double desired_mean(const SideCtx& c, int i) {
    // E{g_self^T F g_peer} = M (M + 1) sigma2_self sigma2_peer
    return c.m * (c.m + 1.0) * c.ss[i];
}

// exclusion sums evaluated term by term so they stay exactly nonnegative
double sum_excluding(const Eigen::VectorXd& v, int skip1, int skip2 = -1) {
    double s = 0.0;
    for (int k = 0; k < v.size(); ++k)
        if (k != skip1 && k != skip2) s += v[k];
    return s;
}

std::vector<double> b_lines(const SideCtx& c, int i) {
    const double m = c.m;
    const double p = c.p_peer[i];
    const double sum_ni = sum_excluding(c.ss, i);
    const double s2s = c.s2_self[i], s2p = c.s2_peer[i];
    const double st2s = c.st2_self[i], st2p = c.st2_peer[i];
    const double ssi = c.ss[i];
    return {
        p * 2.0 * m * (m + 1.0) * c.beta_self[i] * c.beta_peer[i] * sum_ni,
        p * m * (m + 1.0) * ssi * (c.beta_self[i] * s2p + c.beta_peer[i] * s2s),
        p * m * m * ssi * st2s * st2p,
        p * 2.0 * m * (m + 1.0) * (m + 1.0) * ssi * ssi,
        p * 2.0 * m * (m + 1.0) * s2s * st2s * s2p * s2p,
        p * 2.0 * m * (m + 1.0) * s2s * s2s * s2p * st2p,
        p * 2.0 * m * ssi * st2s * st2p,
        p * m * m * (m + 1.0) * s2s * st2s * s2p * s2p,
        p * m * m * (m + 1.0) * s2s * s2s * s2p * st2p,
        p * m * m * ssi * st2s * st2p,
    };
}

std::vector<double> c_lines(const SideCtx& c, int i) {
    const double m = c.m;
    const double p = c.p_self[i];
    const double sum_ni = sum_excluding(c.ss, i);
    const double s2s = c.s2_self[i], st2s = c.st2_self[i];
    return {
        p * 4.0 * m * (m + 1.0) * c.beta_self[i] * c.beta_self[i] * sum_ni,
        p * 4.0 * c.ss[i] * m * (m + 1.0) *
            ((m + 2.0) * s2s * s2s + (m + 3.0) * s2s * st2s + st2s * st2s),
    };
}

std::vector<double> d_lines(const SideCtx& c, int i) {
    const double m = c.m;
    double l1 = 0.0, l2 = 0.0, l3 = 0.0;
    for (int j = 0; j < c.n; ++j) {
        if (j == i) continue;
        // interference powers indexed by the destination pair i, following the
        // exact expression as stated (the large-array form indexes them by j)
        const double pw = c.p_self[i] * c.beta_self[j] + c.p_peer[i] * c.beta_peer[j];
        const double sum_nij = sum_excluding(c.ss, i, j);
        l1 += 2.0 * m * (m + 1.0) * c.beta_self[i] * pw * sum_nij;
        l2 += m * c.ss[i] * pw *
              ((m + 1.0) * (m + 3.0) * c.s2_self[i] + 2.0 * (m + 1.0) * c.st2_self[i]);
        l3 += m * c.beta_self[i] * c.ss[j] *
              ((m + 1.0) * (m + 3.0) * (c.p_self[i] * c.s2_self[j] + c.p_peer[i] * c.s2_peer[j]) +
               2.0 * (m + 1.0) * (c.p_self[i] * c.st2_self[j] + c.p_peer[i] * c.st2_peer[j]));
    }
    return {l1, l2, l3};
}

std::vector<double> e_lines(const SideCtx& c, int i, double rho2) {
    const double m = c.m;
    const double sum_ni = sum_excluding(c.ss, i);
    return {
        2.0 * m * (m + 1.0) * c.beta_self[i] * sum_ni,
        m * c.ss[i] * ((m + 1.0) * (m + 3.0) * c.s2_self[i] + 2.0 * (m + 1.0) * c.st2_self[i]),
        rho2 > 0.0 ? 1.0 / rho2 : std::numeric_limits<double>::infinity(),
    };
}

double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

Eigen::VectorXd sinr_from_terms(const AfExactTerms& t) {
    Eigen::VectorXd out(t.a.size());
    for (int i = 0; i < t.a.size(); ++i) {
        const double den = t.b[i] + t.c[i] + t.d[i] + t.e[i];
        out[i] = t.a[i] > 0.0 ? t.a[i] / den : 0.0;
    }
    return out;
}

double se_from_sinr(double sinr) { return 0.5 * std::log2(1.0 + sinr); }

}  // namespace

double af_rho_squared(const SystemConfig& cfg, const EstimationStats& stats,
                      const FadingProfile& fading, const PowerProfile& powers) {
    if (powers.p_r <= 0.0) return 0.0;
    const double m = static_cast<double>(cfg.m);
    const Eigen::VectorXd ss = stats.sigma2_ar.cwiseProduct(stats.sigma2_rb);
    const double total_ss = ss.sum();
    double den = 2.0 * m * (m + 1.0) * total_ss;  // noise forwarding, E{||F||_F^2}
    for (int i = 0; i < cfg.n; ++i) {
        const double a_i =
            m * ss[i] *
            ((m + 1.0) * (m + 3.0) *
                 (stats.sigma2_ar[i] * powers.p_a[i] + stats.sigma2_rb[i] * powers.p_b[i]) +
             2.0 * (m + 1.0) * (stats.sigma2tilde_ar[i] * powers.p_a[i] +
                                stats.sigma2tilde_rb[i] * powers.p_b[i]));
        double sum_ni = 0.0;
        for (int k = 0; k < cfg.n; ++k)
            if (k != i) sum_ni += ss[k];
        const double b_i = 2.0 * m * (m + 1.0) *
                           (fading.beta_ar[i] * powers.p_a[i] + fading.beta_rb[i] * powers.p_b[i]) *
                           sum_ni;
        den += a_i + b_i;
    }
    return den > 0.0 ? powers.p_r / den : 0.0;
}

namespace detail {

AfTermLines af_term_lines(const SystemConfig& cfg, const EstimationStats& stats,
                          const FadingProfile& fading, const PowerProfile& powers, Side side,
                          int user) {
    const SideCtx c = make_ctx(cfg, stats, fading, powers, side);
    const double rho2 = af_rho_squared(cfg, stats, fading, powers);
    return {b_lines(c, user), c_lines(c, user), d_lines(c, user), e_lines(c, user, rho2)};
}

}  // namespace detail

AfExactTerms af_exact_terms(const SystemConfig& cfg, const EstimationStats& stats,
                            const FadingProfile& fading, const PowerProfile& powers, Side side) {
    const SideCtx c = make_ctx(cfg, stats, fading, powers, side);
    const double rho2 = af_rho_squared(cfg, stats, fading, powers);
    AfExactTerms t;
    t.a.resize(c.n);
    t.b.resize(c.n);
    t.c.resize(c.n);
    t.d.resize(c.n);
    t.e.resize(c.n);
    for (int i = 0; i < c.n; ++i) {
        const double mean = desired_mean(c, i);
        t.a[i] = c.p_peer[i] * mean * mean;
        t.b[i] = sum(b_lines(c, i));
        t.c[i] = sum(c_lines(c, i));
        t.d[i] = sum(d_lines(c, i));
        t.e[i] = sum(e_lines(c, i, rho2));
    }
    return t;
}

Eigen::VectorXd af_exact_sinr(const SystemConfig& cfg, const EstimationStats& stats,
                              const FadingProfile& fading, const PowerProfile& powers, Side side) {
    return sinr_from_terms(af_exact_terms(cfg, stats, fading, powers, side));
}

RateTable af_exact_rate(const SystemConfig& cfg, const EstimationStats& stats,
                        const FadingProfile& fading, const PowerProfile& powers) {
    RateTable r;
    r.user_a = af_exact_sinr(cfg, stats, fading, powers, Side::A).unaryExpr(&se_from_sinr);
    r.user_b = af_exact_sinr(cfg, stats, fading, powers, Side::B).unaryExpr(&se_from_sinr);
    r.sum = cfg.overhead() * (r.user_a.sum() + r.user_b.sum());
    return r;
}

AfApproxTerms af_approx_terms(const SystemConfig& cfg, const EstimationStats& stats,
                              const FadingProfile& fading, const PowerProfile& powers, Side side) {
    const SideCtx c = make_ctx(cfg, stats, fading, powers, side);
    AfApproxTerms t;
    t.btilde.resize(c.n);
    t.ctilde.resize(c.n);
    t.dtilde.resize(c.n);
    t.etilde.resize(c.n);
    // the compound-noise sum is side independent (it comes from 1/rho_af^2)
    double noise_sum = 0.0;
    for (int n = 0; n < c.n; ++n)
        noise_sum += c.ss[n] * (powers.p_a[n] * stats.sigma2_ar[n] + powers.p_b[n] * stats.sigma2_rb[n]);
    for (int i = 0; i < c.n; ++i) {
        const double s2s = c.s2_self[i], s2p = c.s2_peer[i];
        const double q = s2s * s2s * s2p * s2p;
        t.btilde[i] = c.p_peer[i] * (c.beta_peer[i] / s2p + c.beta_self[i] / s2s);
        t.ctilde[i] = 4.0 * c.p_self[i] * c.beta_self[i] / s2p;
        double d = 0.0;
        for (int j = 0; j < c.n; ++j) {
            if (j == i) continue;
            d += c.p_self[j] * (c.beta_self[j] / s2p +
                                c.s2_self[j] * c.s2_self[j] * c.s2_peer[j] * c.beta_self[i] / q);
            d += c.p_peer[j] * (c.beta_peer[j] / s2p +
                                c.s2_self[j] * c.s2_peer[j] * c.s2_peer[j] * c.beta_self[i] / q);
        }
        t.dtilde[i] = d;
        t.etilde[i] = 1.0 / s2p + noise_sum / (c.p_r * q);
    }
    return t;
}

Eigen::VectorXd af_approx_sinr(const SystemConfig& cfg, const EstimationStats& stats,
                               const FadingProfile& fading, const PowerProfile& powers, Side side) {
    const SideCtx c = make_ctx(cfg, stats, fading, powers, side);
    Eigen::VectorXd out(c.n);
    if ((c.s2_self.array() <= 0.0).any() || (c.s2_peer.array() <= 0.0).any()) {
        out.setZero();  // no usable estimates, the MR beams carry no signal
        return out;
    }
    const AfApproxTerms t = af_approx_terms(cfg, stats, fading, powers, side);
    for (int i = 0; i < c.n; ++i) {
        const double den = t.btilde[i] + t.ctilde[i] + t.dtilde[i] + t.etilde[i];
        const double num = c.p_peer[i] * c.m;
        out[i] = num > 0.0 ? num / den : 0.0;
    }
    return out;
}

RateTable af_approx_rate(const SystemConfig& cfg, const EstimationStats& stats,
                         const FadingProfile& fading, const PowerProfile& powers) {
    RateTable r;
    r.user_a = af_approx_sinr(cfg, stats, fading, powers, Side::A).unaryExpr(&se_from_sinr);
    r.user_b = af_approx_sinr(cfg, stats, fading, powers, Side::B).unaryExpr(&se_from_sinr);
    r.sum = cfg.overhead() * (r.user_a.sum() + r.user_b.sum());
    return r;
}

}  // namespace relaysim
