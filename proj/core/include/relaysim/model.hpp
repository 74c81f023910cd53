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

#include <string>
#include <vector>

#include "relaysim/types.hpp"

namespace relaysim {

/// MMSE estimation statistics for both hops:
///   sigma2      = tau_p * p_p * beta^2 / (1 + tau_p * p_p * beta)
///   sigma2tilde = beta / (1 + tau_p * p_p * beta)
/// The pair is computed so that sigma2 + sigma2tilde == beta exactly.
/// p_p = 0 is legal (no training: sigma2 = 0, sigma2tilde = beta).
EstimationStats estimation_stats(const SystemConfig& cfg, const FadingProfile& fading, double p_p);

double db_to_linear(double x_db);
double linear_to_db(double x);

/// Returns every violated invariant (empty means the configuration is valid).
std::vector<std::string> validate_config(const SystemConfig& cfg, const FadingProfile& fading,
                                         const PowerProfile& powers);

}  // namespace relaysim
