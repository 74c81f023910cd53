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

#include <vector>

#include "relaysim/types.hpp"

namespace relaysim {

/// Exact per-user SINR decomposition for the AF protocol with MR processing:
/// SINR_i = a_i / (b_i + c_i + d_i + e_i). a = desired signal power,
/// b = estimation-error variance, c = residual self-interference,
/// d = inter-user interference, e = compound noise (including 1/rho_af^2).
struct AfExactTerms {
    Eigen::VectorXd a, b, c, d, e;
};

/// Large-array limit of the same decomposition; the SINR numerator reduces to
/// p_peer * M, so only the four denominator terms remain.
struct AfApproxTerms {
    Eigen::VectorXd btilde, ctilde, dtilde, etilde;
};

/// Analytic squared normalization gain of the AF relay, from the long-term
/// power constraint E{||F y_r||^2} = p_r. Returns 0 when p_r = 0.
double af_rho_squared(const SystemConfig& cfg, const EstimationStats& stats,
                      const FadingProfile& fading, const PowerProfile& powers);

/// Exact finite-M terms for the given destination side. Side B swaps the
/// roles of the two hops and the two user powers.
AfExactTerms af_exact_terms(const SystemConfig& cfg, const EstimationStats& stats,
                            const FadingProfile& fading, const PowerProfile& powers, Side side);

Eigen::VectorXd af_exact_sinr(const SystemConfig& cfg, const EstimationStats& stats,
                              const FadingProfile& fading, const PowerProfile& powers, Side side);

/// Exact per-user spectral efficiencies and the overhead-scaled sum.
RateTable af_exact_rate(const SystemConfig& cfg, const EstimationStats& stats,
                        const FadingProfile& fading, const PowerProfile& powers);

AfApproxTerms af_approx_terms(const SystemConfig& cfg, const EstimationStats& stats,
                              const FadingProfile& fading, const PowerProfile& powers, Side side);

Eigen::VectorXd af_approx_sinr(const SystemConfig& cfg, const EstimationStats& stats,
                               const FadingProfile& fading, const PowerProfile& powers, Side side);

/// Large-array approximation of the per-user spectral efficiencies.
RateTable af_approx_rate(const SystemConfig& cfg, const EstimationStats& stats,
                         const FadingProfile& fading, const PowerProfile& powers);

namespace detail {

/// The exact b/c/d/e terms split into their additive lines, exposed so each
/// line can be oracle-tested in isolation. Sums reproduce af_exact_terms.
struct AfTermLines {
    std::vector<double> b;  ///< 10 lines
    std::vector<double> c;  ///< 2 lines
    std::vector<double> d;  ///< 3 lines (each already summed over j != i)
    std::vector<double> e;  ///< 3 lines (last one is 1/rho_af^2)
};

AfTermLines af_term_lines(const SystemConfig& cfg, const EstimationStats& stats,
                          const FadingProfile& fading, const PowerProfile& powers, Side side,
                          int user);

}  // namespace detail

}  // namespace relaysim
