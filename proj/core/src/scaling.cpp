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

#include "relaysim/scaling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "relaysim/af_analysis.hpp"
#include "relaysim/df_analysis.hpp"
#include "relaysim/model.hpp"

namespace relaysim {

namespace {

constexpr double kBoundarySnap = 1e-12;  // exponents this close to a boundary are on it
constexpr double kInf = std::numeric_limits<double>::infinity();

double se(double sinr) { return 0.5 * std::log2(1.0 + sinr); }

// side-resolved view of the fading profile only (used by the beta-domain forms)
struct BetaCtx {
    Eigen::VectorXd self, peer;
};
BetaCtx beta_ctx(const FadingProfile& fading, Side side) {
    if (side == Side::A) return {fading.beta_ar, fading.beta_rb};
    return {fading.beta_rb, fading.beta_ar};
}

double pow2(double x) { return x * x; }
double pow4(double x) { return x * x * x * x; }

// Scenario A hat-terms (beta domain), per destination user. p_u and p_r are
// the fixed data powers of the scenario.
double scenario_a_af_denominator(const FadingProfile& fading, Side side, int i, double p_u,
                                 double p_r) {
    const BetaCtx b = beta_ctx(fading, side);
    const int n = static_cast<int>(b.self.size());
    const double hat_b = 1.0 / b.peer[i] + 1.0 / b.self[i];
    const double hat_c = 4.0 * b.self[i] / pow2(b.peer[i]);
    double hat_d = 0.0;
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        hat_d += (b.self[j] + b.peer[j]) / pow2(b.peer[i]) +
                 (pow4(b.self[j]) * pow2(b.peer[j]) + pow2(b.self[j]) * pow4(b.peer[j])) /
                     (pow2(b.self[i]) * b.self[i] * pow4(b.peer[i]));
    }
    double noise = 0.0;
    for (int k = 0; k < n; ++k)
        noise += pow2(fading.beta_ar[k]) * pow2(fading.beta_rb[k]) *
                 (pow2(fading.beta_ar[k]) + pow2(fading.beta_rb[k]));
    const double hat_e =
        1.0 / (p_u * pow2(b.peer[i])) + noise / (p_r * pow4(b.self[i]) * pow4(b.peer[i]));
    return hat_b + hat_c + hat_d + hat_e;
}

// Scenario B/C AF compound-noise coefficients: SINR = 1 / (T1 M^x1 + T2 M^x2).
struct TwoTerm {
    double t1, x1;  // relay-noise part, driven by the user-power exponent
    double t2, x2;  // user-noise part, driven by the relay-power exponent
};

TwoTerm af_two_term(const ScalingSpec& spec, const SystemConfig& cfg, const FadingProfile& fading,
                    Side side, int i) {
    TwoTerm tt{};
    if (spec.scenario == Scenario::B) {
        const EstimationStats st = estimation_stats(cfg, fading, spec.e_p);
        const Eigen::VectorXd& s2_self = side == Side::A ? st.sigma2_ar : st.sigma2_rb;
        const Eigen::VectorXd& s2_peer = side == Side::A ? st.sigma2_rb : st.sigma2_ar;
        double noise = 0.0;
        for (int k = 0; k < cfg.n; ++k)
            noise += st.sigma2_ar[k] * st.sigma2_rb[k] * (st.sigma2_ar[k] + st.sigma2_rb[k]);
        tt.t1 = 1.0 / (spec.e_u * s2_peer[i]);
        tt.x1 = spec.alpha - 1.0;
        tt.t2 = noise / (spec.e_r * pow2(s2_self[i]) * pow2(s2_peer[i]));
        tt.x2 = spec.beta - 1.0;
    } else {  // Scenario C
        const BetaCtx b = beta_ctx(fading, side);
        const double tau_ep = cfg.tau_p * spec.e_p;
        double noise = 0.0;
        for (int k = 0; k < cfg.n; ++k)
            noise += pow2(fading.beta_ar[k]) * pow2(fading.beta_rb[k]) *
                     (pow2(fading.beta_ar[k]) + pow2(fading.beta_rb[k]));
        tt.t1 = 1.0 / (tau_ep * spec.e_u * pow2(b.peer[i]));
        tt.x1 = spec.alpha + spec.gamma - 1.0;
        tt.t2 = noise / (tau_ep * spec.e_r * pow4(b.self[i]) * pow4(b.peer[i]));
        tt.x2 = spec.beta + spec.gamma - 1.0;
    }
    return tt;
}

// DF asymptotic pieces as (coefficient, exponent): piece SINR = S * M^(-x).
struct DfPieces {
    double s1, s_ar, s_br, s_ra, s_rb;  // coefficients
    double x_user, x_relay;             // exponents of the user-driven / relay-driven pieces
};

DfPieces df_pieces(const ScalingSpec& spec, const SystemConfig& cfg, const FadingProfile& fading,
                   int i) {
    DfPieces p{};
    if (spec.scenario == Scenario::A) {
        const double ba = fading.beta_ar[i], bb = fading.beta_rb[i];
        const double tau_ep = cfg.tau_p * spec.e_p;
        double den1 = 1.0;
        for (int j = 0; j < cfg.n; ++j) den1 += spec.e_u * (fading.beta_ar[j] + fading.beta_rb[j]);
        den1 *= pow2(ba) + pow2(bb);
        double den2 = 0.0;
        for (int j = 0; j < cfg.n; ++j) den2 += pow2(fading.beta_ar[j]) + pow2(fading.beta_rb[j]);
        p.s1 = spec.e_u * tau_ep * (pow4(ba) + pow4(bb)) / den1;
        p.s_ar = spec.e_u * tau_ep * pow4(ba) / den1;
        p.s_br = spec.e_u * tau_ep * pow4(bb) / den1;
        p.s_ra = spec.e_r * tau_ep * pow4(ba) / ((spec.e_r * ba + 1.0) * den2);
        p.s_rb = spec.e_r * tau_ep * pow4(bb) / ((spec.e_r * bb + 1.0) * den2);
        p.x_user = p.x_relay = spec.gamma - 1.0;
    } else if (spec.scenario == Scenario::B) {
        const EstimationStats st = estimation_stats(cfg, fading, spec.e_p);
        const double s2a = st.sigma2_ar[i], s2b = st.sigma2_rb[i];
        const double den1 = s2a + s2b;
        const double den2 = st.sigma2_ar.sum() + st.sigma2_rb.sum();
        p.s1 = spec.e_u * (pow2(s2a) + pow2(s2b)) / den1;
        p.s_ar = spec.e_u * pow2(s2a) / den1;
        p.s_br = spec.e_u * pow2(s2b) / den1;
        p.s_ra = spec.e_r * pow2(s2a) / den2;
        p.s_rb = spec.e_r * pow2(s2b) / den2;
        p.x_user = spec.alpha - 1.0;
        p.x_relay = spec.beta - 1.0;
    } else {
        const double ba = fading.beta_ar[i], bb = fading.beta_rb[i];
        const double tau_ep = cfg.tau_p * spec.e_p;
        const double den1 = pow2(ba) + pow2(bb);
        double den2 = 0.0;
        for (int j = 0; j < cfg.n; ++j) den2 += pow2(fading.beta_ar[j]) + pow2(fading.beta_rb[j]);
        p.s1 = tau_ep * spec.e_u * (pow4(ba) + pow4(bb)) / den1;
        p.s_ar = tau_ep * spec.e_u * pow4(ba) / den1;
        p.s_br = tau_ep * spec.e_u * pow4(bb) / den1;
        p.s_ra = tau_ep * spec.e_r * pow4(ba) / den2;
        p.s_rb = tau_ep * spec.e_r * pow4(bb) / den2;
        p.x_user = spec.alpha + spec.gamma - 1.0;
        p.x_relay = spec.beta + spec.gamma - 1.0;
    }
    return p;
}

double df_combine(double r1, double r_ar, double r_br, double r_ra, double r_rb) {
    return std::min(r1, std::min(r_ar, r_rb) + std::min(r_br, r_ra));
}

// limit of a rate piece se(S * M^(-x)) as M -> infinity
double piece_limit(double coeff, double x) {
    if (x > kBoundarySnap) return 0.0;
    if (x < -kBoundarySnap) return kInf;
    return se(coeff);
}

}  // namespace

void validate_scaling_spec(const ScalingSpec& spec) {
    auto reject = [](const char* msg) { throw std::invalid_argument(msg); };
    if (spec.alpha < 0 || spec.beta < 0 || spec.gamma < 0) reject("scaling exponents must be >= 0");
    if (spec.e_u <= 0 || spec.e_r <= 0 || spec.e_p <= 0) reject("scaling constants must be > 0");
    switch (spec.scenario) {
        case Scenario::A:
            if (spec.alpha != 0.0 || spec.beta != 0.0)
                reject("Scenario A fixes alpha = beta = 0");
            if (spec.gamma <= 0.0) reject("Scenario A requires gamma > 0");
            break;
        case Scenario::B:
            if (spec.gamma != 0.0) reject("Scenario B fixes gamma = 0");
            break;
        case Scenario::C:
            if (spec.gamma <= 0.0) reject("Scenario C requires gamma > 0");
            break;
    }
}

PowerProfile scaled_powers(const ScalingSpec& spec, int n, double m_eval) {
    const double p_u = spec.e_u / std::pow(m_eval, spec.alpha);
    const double p_r = spec.e_r / std::pow(m_eval, spec.beta);
    const double p_p = spec.e_p / std::pow(m_eval, spec.gamma);
    return PowerProfile::uniform(n, p_u, p_r, p_p);
}

double scaled_rate(Protocol protocol, const ScalingSpec& spec, const SystemConfig& cfg,
                   const FadingProfile& fading, double m_eval) {
    validate_scaling_spec(spec);
    SystemConfig c = cfg;
    c.m = static_cast<int>(std::llround(m_eval));
    const PowerProfile powers = scaled_powers(spec, cfg.n, m_eval);
    const EstimationStats stats = estimation_stats(c, fading, powers.p_p);
    if (protocol == Protocol::AF) return af_approx_rate(c, stats, fading, powers).sum;
    return df_approx_rates(c, stats, fading, powers).sum;
}

double asymptotic_form_rate(Protocol protocol, const ScalingSpec& spec, const SystemConfig& cfg,
                    const FadingProfile& fading, double m_eval) {
    validate_scaling_spec(spec);
    double total = 0.0;
    if (protocol == Protocol::AF) {
        for (Side side : {Side::A, Side::B}) {
            for (int i = 0; i < cfg.n; ++i) {
                double sinr;
                if (spec.scenario == Scenario::A) {
                    const double num =
                        cfg.tau_p * spec.e_p * std::pow(m_eval, 1.0 - spec.gamma);
                    sinr = num / scenario_a_af_denominator(fading, side, i, spec.e_u, spec.e_r);
                } else {
                    const TwoTerm tt = af_two_term(spec, cfg, fading, side, i);
                    sinr = 1.0 / (tt.t1 * std::pow(m_eval, tt.x1) + tt.t2 * std::pow(m_eval, tt.x2));
                }
                total += se(sinr);
            }
        }
    } else {
        for (int i = 0; i < cfg.n; ++i) {
            const DfPieces p = df_pieces(spec, cfg, fading, i);
            const double fu = std::pow(m_eval, -p.x_user);
            const double fr = std::pow(m_eval, -p.x_relay);
            total += df_combine(se(p.s1 * fu), se(p.s_ar * fu), se(p.s_br * fu), se(p.s_ra * fr),
                                se(p.s_rb * fr));
        }
    }
    return cfg.overhead() * total;
}

NoiseParts scenario_b_noise_parts(const ScalingSpec& spec, const SystemConfig& cfg,
                                  const FadingProfile& fading, int user, Side side, double m_eval) {
    if (spec.scenario != Scenario::B)
        throw std::invalid_argument("noise-part decomposition applies to Scenario B only");
    const TwoTerm tt = af_two_term(spec, cfg, fading, side, user);
    return {tt.t1 * std::pow(m_eval, tt.x1), tt.t2 * std::pow(m_eval, tt.x2)};
}

RegimeClass asymptotic_limit(Protocol protocol, const ScalingSpec& spec, const SystemConfig& cfg,
                             const FadingProfile& fading) {
    validate_scaling_spec(spec);
    double total = 0.0;
    bool unbounded = false;
    if (protocol == Protocol::AF) {
        for (Side side : {Side::A, Side::B}) {
            for (int i = 0; i < cfg.n; ++i) {
                double t1, x1, t2, x2;
                if (spec.scenario == Scenario::A) {
                    t1 = scenario_a_af_denominator(fading, side, i, spec.e_u, spec.e_r) /
                         (cfg.tau_p * spec.e_p);
                    x1 = spec.gamma - 1.0;
                    t2 = 0.0;
                    x2 = x1;
                } else {
                    const TwoTerm tt = af_two_term(spec, cfg, fading, side, i);
                    t1 = tt.t1;
                    x1 = tt.x1;
                    t2 = tt.t2;
                    x2 = tt.x2;
                }
                // denominator term T M^x: positive exponent blows up (zero SINR),
                // negative vanishes; the limit keeps the boundary terms only
                if (x1 > kBoundarySnap || x2 > kBoundarySnap) continue;  // rate -> 0
                double den = 0.0;
                if (std::abs(x1) <= kBoundarySnap) den += t1;
                if (std::abs(x2) <= kBoundarySnap && t2 > 0.0) den += t2;
                if (den <= 0.0) {
                    unbounded = true;
                    break;
                }
                total += se(1.0 / den);
            }
            if (unbounded) break;
        }
    } else {
        for (int i = 0; i < cfg.n && !unbounded; ++i) {
            const DfPieces p = df_pieces(spec, cfg, fading, i);
            const double lim = df_combine(piece_limit(p.s1, p.x_user), piece_limit(p.s_ar, p.x_user),
                                          piece_limit(p.s_br, p.x_user), piece_limit(p.s_ra, p.x_relay),
                                          piece_limit(p.s_rb, p.x_relay));
            if (std::isinf(lim)) {
                unbounded = true;
                break;
            }
            total += lim;
        }
    }
    if (unbounded) return {RegimeKind::Unbounded, std::nullopt};
    total *= cfg.overhead();
    if (total <= 0.0) return {RegimeKind::ZeroLimit, std::nullopt};
    return {RegimeKind::FiniteLimit, total};
}

namespace {
TradeoffReport validate_tradeoff_specs(const std::vector<ScalingSpec>& specs) {
    if (specs.empty()) throw std::invalid_argument("tradeoff_equivalence needs at least one spec");
    const double su = specs.front().alpha + specs.front().gamma;
    const double sr = specs.front().beta + specs.front().gamma;
    for (const ScalingSpec& s : specs) {
        if (std::abs(s.alpha + s.gamma - su) > kBoundarySnap ||
            std::abs(s.beta + s.gamma - sr) > kBoundarySnap)
            throw std::invalid_argument(
                "tradeoff_equivalence requires equal exponent sums alpha+gamma and beta+gamma");
    }
    return {};
}
}  // namespace

TradeoffReport tradeoff_equivalence(Protocol protocol, const std::vector<ScalingSpec>& specs,
                                    const SystemConfig& cfg, const FadingProfile& fading,
                                    const std::vector<double>& m_grid) {
    TradeoffReport rep = validate_tradeoff_specs(specs);
    for (const ScalingSpec& s : specs) rep.limits.push_back(asymptotic_limit(protocol, s, cfg, fading));
    rep.limits_equal = true;
    for (const RegimeClass& rc : rep.limits) {
        if (rc.kind != rep.limits.front().kind) rep.limits_equal = false;
        if (rc.kind == RegimeKind::FiniteLimit && rep.limits.front().limit_value &&
            std::abs(*rc.limit_value - *rep.limits.front().limit_value) >
                1e-9 * std::max(1.0, std::abs(*rep.limits.front().limit_value)))
            rep.limits_equal = false;
    }
    rep.m_grid = m_grid;
    rep.rates.resize(specs.size());
    rep.gaps.assign(m_grid.size(), 0.0);
    for (std::size_t s = 0; s < specs.size(); ++s) {
        rep.rates[s].reserve(m_grid.size());
        for (double m : m_grid) rep.rates[s].push_back(scaled_rate(protocol, specs[s], cfg, fading, m));
    }
    for (std::size_t g = 0; g < m_grid.size(); ++g) {
        double lo = kInf, hi = -kInf;
        for (std::size_t s = 0; s < specs.size(); ++s) {
            lo = std::min(lo, rep.rates[s][g]);
            hi = std::max(hi, rep.rates[s][g]);
        }
        rep.gaps[g] = hi - lo;
    }
    return rep;
}

}  // namespace relaysim
