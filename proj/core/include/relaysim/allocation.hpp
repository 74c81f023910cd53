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

/// Coefficient tables of the AF sum-SE program. The A-side SINR reads
///   sinr_a(i) = p_b[i] / (sum_j(a(i,j) p_a[j] + b(i,j) p_b[j])
///               + (sum_j(c(i,j) p_a[j] + d(i,j) p_b[j])) / p_r + e[i])
/// and the mirrored tables (suffix _m) give the B-side SINR with the roles of
/// p_a and p_b swapped. Assembled from the large-array terms with the 1/M
/// factors folded in.
struct AfGpCoeffs {
    Eigen::MatrixXd a, b, c, d;
    Eigen::VectorXd e;
    Eigen::MatrixXd a_m, b_m, c_m, d_m;
    Eigen::VectorXd e_m;
};

AfGpCoeffs build_af_gp_coeffs(const SystemConfig& cfg, const EstimationStats& stats,
                              const FadingProfile& fading);

struct AllocationOptions {
    double theta = 1.1;   ///< trust-region half-width (multiplicative)
    double eps = 1e-3;    ///< stopping threshold on iterate movement
    int max_iterations = 100;
    double gp_tol = 1e-8;
    /// DF first-phase interference sums: keep the pair's own powers inside the
    /// j-sums (the literal program statement) instead of the j-indexed powers
    /// that match the rate approximation. Off by default.
    bool df_literal_constraint_powers = false;
    /// DF second-phase coupling: pair each direction variable with the
    /// broadcast link back to its own transmitter (the literal program
    /// statement) instead of the link that actually delivers the direction's
    /// data. Off by default; the default matches the min-structure rate.
    bool df_printed_link_pairing = false;
};

struct AllocationResult {
    Eigen::VectorXd p_a, p_b;
    double p_r = 0.0;
    double sum_se = 0.0;
    int iterations = 0;
    std::vector<double> objective_trace;  ///< surrogate sum SE per iteration, starting at the baseline
    bool converged = false;
};

/// Successive-GP maximization of the AF sum SE under sum(p_a + p_b) + p_r <= P.
AllocationResult allocate_af(const SystemConfig& cfg, const EstimationStats& stats,
                             const FadingProfile& fading, double total_power,
                             const AllocationOptions& opt = {});

/// Successive-GP maximization of the DF sum SE (AM-GM condensation of the
/// first phase, monomial condensation of the direction product).
AllocationResult allocate_df(const SystemConfig& cfg, const EstimationStats& stats,
                             const FadingProfile& fading, double total_power,
                             const AllocationOptions& opt = {});

struct SymmetricAllocation {
    double p_u = 0.0;
    double p_r = 0.0;
    double sum_se = 0.0;
};

/// Common user power p_a = p_b = p_u with p_r = P - 2N p_u: concave 1-D
/// problem, solved by golden-section search. With equal fading the AF optimum
/// is returned in closed form (p_u = P/4N, p_r = P/2).
SymmetricAllocation allocate_symmetric(Protocol protocol, const SystemConfig& cfg,
                                       const EstimationStats& stats, const FadingProfile& fading,
                                       double total_power);

struct ImprovementEntry {
    double uniform_se = 0.0;
    double optimized_se = 0.0;
    double uplift_percent = 0.0;
};

struct ImprovementReport {
    ImprovementEntry af, df;
};

/// Uniform baseline (p_a = p_b = P/4N, p_r = P/2) versus the successive-GP
/// optimum, for both protocols.
ImprovementReport improvement_report(const SystemConfig& cfg, const EstimationStats& stats,
                                     const FadingProfile& fading, double total_power,
                                     const AllocationOptions& opt = {});

}  // namespace relaysim
