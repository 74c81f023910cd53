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

#include <cstdint>
#include <Eigen/Dense>

namespace relaysim {

/// System geometry and frame structure. All powers live elsewhere; the noise
/// variance is fixed to 1 throughout, so powers are dimensionless SNRs.
struct SystemConfig {
    int m = 1;             ///< relay antennas
    int n = 1;             ///< user pairs
    int tau_c = 196;       ///< coherence interval (symbols)
    int tau_p = 2;         ///< pilot symbols (>= 2n for orthogonal pilots)
    std::uint64_t seed = 0;

    double overhead() const { return double(tau_c - tau_p) / double(tau_c); }
};

/// Large-scale fading, linear scale. beta_ar[i] is the T_A,i <-> relay hop,
/// beta_rb[i] the relay <-> T_B,i hop.
struct FadingProfile {
    Eigen::VectorXd beta_ar;
    Eigen::VectorXd beta_rb;

    static FadingProfile uniform(int n, double beta = 1.0) {
        return {Eigen::VectorXd::Constant(n, beta), Eigen::VectorXd::Constant(n, beta)};
    }
};

/// Transmit powers, linear scale (normalized SNRs).
struct PowerProfile {
    Eigen::VectorXd p_a;   ///< per-user power of the T_A side
    Eigen::VectorXd p_b;   ///< per-user power of the T_B side
    double p_r = 1.0;      ///< relay power
    double p_p = 1.0;      ///< per-pilot-symbol power

    static PowerProfile uniform(int n, double p_u, double p_r, double p_p) {
        return {Eigen::VectorXd::Constant(n, p_u), Eigen::VectorXd::Constant(n, p_u), p_r, p_p};
    }
};

/// Second-order statistics of the MMSE channel estimates: sigma2 is the
/// per-element variance of the estimate, sigma2tilde of the estimation error.
/// sigma2 + sigma2tilde == beta holds exactly by construction.
struct EstimationStats {
    Eigen::VectorXd sigma2_ar;
    Eigen::VectorXd sigma2tilde_ar;
    Eigen::VectorXd sigma2_rb;
    Eigen::VectorXd sigma2tilde_rb;
};

enum class Scenario { A, B, C };

/// Power-scaling specification: p_u = e_u / M^alpha, p_r = e_r / M^beta,
/// p_p = e_p / M^gamma. Scenario A fixes alpha = beta = 0 (gamma > 0);
/// Scenario B fixes gamma = 0; Scenario C allows all three with gamma > 0.
struct ScalingSpec {
    Scenario scenario = Scenario::A;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double e_u = 1.0;
    double e_r = 1.0;
    double e_p = 1.0;
};

enum class Protocol { AF, DF };

/// Which end of a pair is the destination whose rate is being evaluated.
enum class Side { A, B };

/// Per-user spectral efficiencies (bit/s/Hz) plus the overhead-scaled sum.
struct RateTable {
    Eigen::VectorXd user_a;
    Eigen::VectorXd user_b;
    double sum = 0.0;
};

}  // namespace relaysim
