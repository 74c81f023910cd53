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

/// Rates (bit/s/Hz) of one user pair under the DF protocol.
/// r2 = min(r_ar, r_rb) + min(r_br, r_ra) and rate = min(r1, r2):
/// a pair's data is capped by the multiple-access phase (r1) and each
/// direction by its weaker hop.
struct DfPairRates {
    double r1 = 0.0;        ///< first-phase (multiple access) pair rate
    double r_ar = 0.0;      ///< first phase, T_A,i -> relay
    double r_br = 0.0;      ///< first phase, T_B,i -> relay
    double r_ra = 0.0;      ///< second phase, relay -> T_A,i (exact)
    double r_rb = 0.0;      ///< second phase, relay -> T_B,i (exact)
    double r2 = 0.0;
    double rate = 0.0;
    bool first_phase_limited = false;    ///< rate == r1 branch active
    bool ab_delivery_limited = false;    ///< min(r_ar, r_rb) == r_rb
    bool ba_delivery_limited = false;    ///< min(r_br, r_ra) == r_ra
};

struct DfRateTable {
    std::vector<DfPairRates> pairs;
    double sum = 0.0;  ///< overhead-scaled sum over pairs
};

/// Squared DF normalization gain: p_r / (M sum_n(sigma2_ar + sigma2_rb)).
double df_rho_squared(const SystemConfig& cfg, const EstimationStats& stats, double p_r);

/// Exact SINR of the second-phase relay -> T_X,i broadcast link.
double df_second_phase_sinr(const SystemConfig& cfg, const EstimationStats& stats,
                            const FadingProfile& fading, const PowerProfile& powers, int pair,
                            Side side);

/// Large-array approximation of the per-pair DF rates (the second-phase
/// entries are exact at any M).
DfRateTable df_approx_rates(const SystemConfig& cfg, const EstimationStats& stats,
                            const FadingProfile& fading, const PowerProfile& powers);

/// Protocol comparison in the small p_a, p_b regime: full approximations plus
/// the limiting expressions both protocols approach as the user powers vanish.
struct LowSnrComparison {
    double af_sum = 0.0;    ///< pair sum of the AF approximations
    double df_sum = 0.0;    ///< DF pair approximation
    double af_limit = 0.0;  ///< vanishing-power limit of af_sum
    double df_limit = 0.0;  ///< vanishing-power limit of df_sum
    bool af_exceeds = false;
};

std::vector<LowSnrComparison> low_snr_comparison(const SystemConfig& cfg,
                                                 const EstimationStats& stats,
                                                 const FadingProfile& fading,
                                                 const PowerProfile& powers);

}  // namespace relaysim
