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

#include <complex>
#include <vector>

#include "relaysim/rng.hpp"
#include "relaysim/types.hpp"

namespace relaysim {

/// One channel realization: true channels, MMSE estimates and estimation
/// errors, with g = ghat + e column-wise exactly.
struct ChannelDraw {
    Eigen::MatrixXcd g_ar, g_rb;
    Eigen::MatrixXcd ghat_ar, ghat_rb;
    Eigen::MatrixXcd e_ar, e_rb;
};

/// Direct mode samples estimates and errors from their marginal laws; pilot
/// mode runs the actual training phase (orthogonal pilots, MMSE filter) and
/// derives the estimates from the received pilot block.
enum class SamplingMode { Direct, Pilot };

struct McEstimate {
    double mean = 0.0;
    double half_width_95 = 0.0;  ///< 1.96 * sample_std / sqrt(trials)
    long trials = 0;
};

struct McOptions {
    long trials = 10000;
    SamplingMode mode = SamplingMode::Direct;
    /// AF only: estimate the desired-signal mean empirically instead of using
    /// its analytic value. Reference mode for oracle runs; higher variance.
    bool empirical_desired_power = false;
    int threads = 0;       ///< 0 = hardware concurrency
    long chunk_size = 64;  ///< trials per reduction chunk (fixed boundaries keep results thread-count independent)
};

/// Per-user AF spectral-efficiency estimate. The interval comes from the CLT
/// interval of the SINR denominator (the numerator is deterministic), mapped
/// through the monotone SINR -> SE transform.
struct SinrEstimate {
    double sinr = 0.0;
    double sinr_lo = 0.0;
    double sinr_hi = 0.0;
    McEstimate se;
};

struct AfSimResult {
    std::vector<SinrEstimate> user_a, user_b;
    McEstimate sum_se;  ///< half-width combined across users in quadrature
    /// sample mean of the self-channel beamformed gain g_self^T F g_self per
    /// A-side user; should vanish (no statistical self-interference
    /// cancellation is possible)
    std::vector<std::complex<double>> self_gain_mean_a;
};

struct DfPairEstimate {
    McEstimate r1;           ///< first-phase pair rate
    McEstimate r_ar, r_br;   ///< first-phase per-link rates
    double r_ra = 0.0;       ///< second phase, exact closed form
    double r_rb = 0.0;
    double r2 = 0.0;
    double rate = 0.0;       ///< min(r1, r2)
};

struct DfSimResult {
    std::vector<DfPairEstimate> pairs;
    McEstimate sum_se;
};

struct RhoEstimate {
    double rho2 = 0.0;
    double lo = 0.0, hi = 0.0;  ///< 95% interval
    long trials = 0;
};

struct Lemma1Report {
    double xx_dev = 0.0;   ///< |mean (1/M) x^H x - sigma_x2|
    double xy_dev = 0.0;   ///< |mean (1/M) x^H y|
    double xy2_dev = 0.0;  ///< |mean (1/M^2)|x^H y|^2 - sigma_x2 sigma_y2 / M|
    double scale = 0.0;    ///< 1/sqrt(M * trials), the expected statistical scale
};

/// Draws one channel realization. Pilot mode requires tau_p >= 2N.
ChannelDraw sample_channels(const SystemConfig& cfg, const FadingProfile& fading,
                            const EstimationStats& stats, TrialRng& rng,
                            SamplingMode mode = SamplingMode::Direct);

/// Empirical AF spectral efficiency: builds F = B* A^H per draw, accumulates
/// the five SINR components and maps through the half-log with the frame
/// overhead. Throws on non-finite intermediates.
AfSimResult simulate_af_sum_se(const SystemConfig& cfg, const FadingProfile& fading,
                               const PowerProfile& powers, const McOptions& opt = {});

/// Empirical DF spectral efficiency. The inner expectation over estimation
/// errors is evaluated in closed form conditioned on the estimates (see
/// df_conditional_denominator); second-phase rates are exact.
DfSimResult simulate_df_sum_se(const SystemConfig& cfg, const FadingProfile& fading,
                               const PowerProfile& powers, const McOptions& opt = {});

/// First-phase noise-plus-interference power of one pair, conditioned on the
/// channel estimates of `draw` (errors integrated out analytically). The
/// nested-sampling oracle in the test suite validates this form.
double df_conditional_denominator(const SystemConfig& cfg, const EstimationStats& stats,
                                  const PowerProfile& powers, const ChannelDraw& draw, int pair);

/// Estimates E{||F y_r||^2} across draws (signals and noise integrated out
/// conditionally per draw) and returns p_r over it, with a CLT interval.
RhoEstimate rho_af_empirical(const SystemConfig& cfg, const FadingProfile& fading,
                             const PowerProfile& powers, const McOptions& opt = {});

/// Empirical check of the large-array inner-product limits for independent
/// x ~ CN(0, sigma_x2 I_M), y ~ CN(0, sigma_y2 I_M).
Lemma1Report lemma1_diagnostics(int m, double sigma_x2, double sigma_y2, long trials,
                                std::uint64_t seed);

}  // namespace relaysim
