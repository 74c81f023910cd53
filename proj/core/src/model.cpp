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

#include "relaysim/model.hpp"

#include <cmath>
#include <sstream>

namespace relaysim {

namespace {

// Splits beta into (sigma2, sigma2tilde) with an exact floating-point sum.
// The smaller part comes from its own closed form (no cancellation); the
// larger part is the remainder, and re-deriving the smaller part from that
// remainder makes the final subtraction exact (the remainder lies in
// [beta/2, beta], where beta minus it is representable).
void split_variances(double beta, double t, double& sigma2, double& sigma2tilde) {
    if (t <= 1.0) {
        sigma2 = beta * t / (1.0 + t);
        sigma2tilde = beta - sigma2;
        sigma2 = beta - sigma2tilde;
    } else {
        sigma2tilde = beta / (1.0 + t);
        sigma2 = beta - sigma2tilde;
        sigma2tilde = beta - sigma2;
    }
}

}  // namespace

EstimationStats estimation_stats(const SystemConfig& cfg, const FadingProfile& fading, double p_p) {
    const int n = static_cast<int>(fading.beta_ar.size());
    EstimationStats st;
    st.sigma2_ar.resize(n);
    st.sigma2tilde_ar.resize(n);
    st.sigma2_rb.resize(n);
    st.sigma2tilde_rb.resize(n);
    const double tp = static_cast<double>(cfg.tau_p) * p_p;
    for (int i = 0; i < n; ++i) {
        split_variances(fading.beta_ar[i], tp * fading.beta_ar[i], st.sigma2_ar[i], st.sigma2tilde_ar[i]);
        split_variances(fading.beta_rb[i], tp * fading.beta_rb[i], st.sigma2_rb[i], st.sigma2tilde_rb[i]);
    }
    return st;
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) { return 10.0 * std::log10(x); }

std::vector<std::string> validate_config(const SystemConfig& cfg, const FadingProfile& fading,
                                         const PowerProfile& powers) {
    std::vector<std::string> out;
    auto fail = [&out](const std::string& msg) { out.push_back(msg); };

    if (cfg.m < 1) fail("M < 1");
    if (cfg.n < 1) fail("N < 1");
    if (cfg.tau_p < 2 * cfg.n) fail("tau_p < 2N");
    if (cfg.tau_p >= cfg.tau_c) fail("tau_p >= tau_c");

    auto check_fading = [&](const Eigen::VectorXd& v, const char* name) {
        if (v.size() != cfg.n) {
            std::ostringstream os;
            os << name << " has " << v.size() << " entries, expected N = " << cfg.n;
            fail(os.str());
            return;
        }
        for (int i = 0; i < v.size(); ++i) {
            if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
                std::ostringstream os;
                os << "nonpositive fading: " << name << "[" << i << "] = " << v[i];
                fail(os.str());
            }
        }
    };
    check_fading(fading.beta_ar, "beta_ar");
    check_fading(fading.beta_rb, "beta_rb");

    auto check_power_vec = [&](const Eigen::VectorXd& v, const char* name) {
        if (v.size() != cfg.n) {
            std::ostringstream os;
            os << name << " has " << v.size() << " entries, expected N = " << cfg.n;
            fail(os.str());
            return;
        }
        for (int i = 0; i < v.size(); ++i) {
            if (v[i] < 0.0 || !std::isfinite(v[i])) {
                std::ostringstream os;
                os << "negative power: " << name << "[" << i << "] = " << v[i];
                fail(os.str());
            }
        }
    };
    check_power_vec(powers.p_a, "p_a");
    check_power_vec(powers.p_b, "p_b");
    if (powers.p_r < 0.0 || !std::isfinite(powers.p_r)) fail("negative power: p_r");
    if (powers.p_p < 0.0 || !std::isfinite(powers.p_p)) fail("negative power: p_p");

    return out;
}

}  // namespace relaysim
