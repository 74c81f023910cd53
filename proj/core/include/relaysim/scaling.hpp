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

#include <optional>
#include <vector>

#include "relaysim/types.hpp"

namespace relaysim {

enum class RegimeKind { ZeroLimit, FiniteLimit, Unbounded };

struct RegimeClass {
    RegimeKind kind = RegimeKind::FiniteLimit;
    std::optional<double> limit_value;  ///< sum SE limit, present iff FiniteLimit
};

/// Throws std::invalid_argument when the exponents violate the scenario
/// (A: alpha = beta = 0, gamma > 0; B: gamma = 0; C: gamma > 0).
void validate_scaling_spec(const ScalingSpec& spec);

/// Powers at M = m_eval: p_u = e_u / M^alpha, p_r = e_r / M^beta,
/// p_p = e_p / M^gamma, all users equal.
PowerProfile scaled_powers(const ScalingSpec& spec, int n, double m_eval);

/// Sum SE of the large-array approximation evaluated at the scaled powers.
double scaled_rate(Protocol protocol, const ScalingSpec& spec, const SystemConfig& cfg,
                   const FadingProfile& fading, double m_eval);

/// Sum SE of the scenario-specific asymptotic forms (the expressions whose
/// gap to the true rate vanishes as M grows), evaluated at finite M.
double asymptotic_form_rate(Protocol protocol, const ScalingSpec& spec, const SystemConfig& cfg,
                    const FadingProfile& fading, double m_eval);

/// The two additive parts of the Scenario-B AF compound-noise denominator for
/// one destination user: relay-noise part (scales with M^(alpha-1)) and
/// user-noise part (scales with M^(beta-1)).
struct NoiseParts {
    double relay_part = 0.0;
    double user_part = 0.0;
};
NoiseParts scenario_b_noise_parts(const ScalingSpec& spec, const SystemConfig& cfg,
                                  const FadingProfile& fading, int user, Side side, double m_eval);

/// Classifies the M -> infinity behaviour of the scaled sum SE and, for a
/// finite limit, evaluates its closed form.
RegimeClass asymptotic_limit(Protocol protocol, const ScalingSpec& spec, const SystemConfig& cfg,
                             const FadingProfile& fading);

/// Finite-M comparison of specs sharing the same overall power-reduction
/// rates (alpha + gamma, beta + gamma). Throws when the sums differ.
struct TradeoffReport {
    std::vector<RegimeClass> limits;
    bool limits_equal = false;
    std::vector<double> m_grid;
    std::vector<std::vector<double>> rates;  ///< rates[spec][grid point]
    std::vector<double> gaps;                ///< max - min across specs, per grid point
};

TradeoffReport tradeoff_equivalence(Protocol protocol, const std::vector<ScalingSpec>& specs,
                                    const SystemConfig& cfg, const FadingProfile& fading,
                                    const std::vector<double>& m_grid);

}  // namespace relaysim
