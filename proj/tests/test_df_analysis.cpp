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

#include <catch2/catch_amalgamated.hpp>

#include <relaysim/df_analysis.hpp>
#include <relaysim/model.hpp>
#include <relaysim/montecarlo.hpp>
#include <relaysim/rng.hpp>

using namespace relaysim;
using Catch::Approx;

namespace {

struct Setup {
    SystemConfig cfg;
    FadingProfile fading;
    PowerProfile powers;
    EstimationStats stats;
};

Setup make(int m, int n, double p_u, double p_r, double p_p,
           const FadingProfile* fading = nullptr) {
    Setup s;
    s.cfg = {.m = m, .n = n, .tau_c = 196, .tau_p = 2 * n, .seed = 0};
    s.fading = fading ? *fading : FadingProfile::uniform(n, 1.0);
    s.powers = PowerProfile::uniform(n, p_u, p_r, p_p);
    s.stats = estimation_stats(s.cfg, s.fading, p_p);
    return s;
}

}  // namespace

TEST_CASE("symmetric configuration mirrors the per-link rates", "[df-analysis]") {
    const Setup s = make(64, 3, 1.0, 5.0, 1.0);
    const DfRateTable t = df_approx_rates(s.cfg, s.stats, s.fading, s.powers);
    for (const DfPairRates& p : t.pairs) {
        CHECK(p.r_ar == Approx(p.r_br).epsilon(1e-13));
        CHECK(p.r_ra == Approx(p.r_rb).epsilon(1e-13));
        CHECK(p.rate == std::min(p.r1, p.r2));
        CHECK(p.r2 == Approx(std::min(p.r_ar, p.r_rb) + std::min(p.r_br, p.r_ra)).epsilon(1e-13));
    }
}

TEST_CASE("second-phase SINR: zero relay power, growth in M, Monte Carlo variances",
          "[df-analysis]") {
    Setup s = make(32, 2, 1.0, 4.0, 1.0);
    PowerProfile off = s.powers;
    off.p_r = 0.0;
    CHECK(df_second_phase_sinr(s.cfg, s.stats, s.fading, off, 0, Side::A) == 0.0);

    double prev = 0.0;
    for (int m : {8, 16, 32, 64, 128}) {
        const Setup g = make(m, 2, 1.0, 4.0, 1.0);
        const double v = df_second_phase_sinr(g.cfg, g.stats, g.fading, g.powers, 0, Side::A);
        CHECK(v > prev);
        prev = v;
    }

    // oracle: sample the variance and interference pieces of the broadcast
    // link and assemble the SINR empirically
    const double rho2 = df_rho_squared(s.cfg, s.stats, s.powers.p_r);
    const long trials = 40000;
    double num_mean = 0.0;
    double var_acc = 0.0, self_acc = 0.0, inter_acc = 0.0;
    for (long t = 0; t < trials; ++t) {
        TrialRng rng(21, t);
        const ChannelDraw d = sample_channels(s.cfg, s.fading, s.stats, rng);
        const std::complex<double> g_self = (d.g_ar.col(0).transpose() * d.ghat_ar.col(0).conjugate())(0, 0);
        const std::complex<double> g_cross = (d.g_ar.col(0).transpose() * d.ghat_rb.col(0).conjugate())(0, 0);
        num_mean += g_self.real();
        var_acc += std::norm(g_self);
        self_acc += std::norm(g_cross);
        double inter = 0.0;
        for (int j = 1; j < s.cfg.n; ++j) {
            inter += std::norm((d.g_ar.col(0).transpose() * d.ghat_rb.col(j).conjugate())(0, 0));
            inter += std::norm((d.g_ar.col(0).transpose() * d.ghat_ar.col(j).conjugate())(0, 0));
        }
        inter_acc += inter;
    }
    num_mean /= trials;
    const double var_self = var_acc / trials - num_mean * num_mean;
    const double sinr_mc =
        num_mean * num_mean / (var_self + self_acc / trials + inter_acc / trials + 1.0 / rho2);
    const double sinr = df_second_phase_sinr(s.cfg, s.stats, s.fading, s.powers, 0, Side::A);
    CHECK(sinr_mc == Approx(sinr).epsilon(0.02));
}

TEST_CASE("min structure and monotonicity grids", "[df-analysis]") {
    TrialRng rng(9, 0);
    for (int k = 0; k < 40; ++k) {
        FadingProfile f;
        const int n = 2;
        f.beta_ar.resize(n);
        f.beta_rb.resize(n);
        for (int i = 0; i < n; ++i) {
            f.beta_ar[i] = std::exp(2.0 * (rng.uniform() - 0.5));
            f.beta_rb[i] = std::exp(2.0 * (rng.uniform() - 0.5));
        }
        Setup s = make(8 + int(rng.uniform() * 100), n, std::exp(rng.uniform()),
                       std::exp(2.0 * rng.uniform()), std::exp(rng.uniform()), &f);
        const DfRateTable t = df_approx_rates(s.cfg, s.stats, s.fading, s.powers);
        for (const DfPairRates& p : t.pairs) {
            CHECK(p.rate <= p.r1 + 1e-15);
            CHECK(p.rate <= p.r2 + 1e-15);
        }
    }

    // nondecreasing in p_a[0], p_b[0], p_r and M
    auto rate0 = [](const Setup& s) {
        return df_approx_rates(s.cfg, s.stats, s.fading, s.powers).pairs[0].rate;
    };
    double prev = -1.0;
    for (double p : {0.1, 0.5, 1.0, 5.0, 20.0}) {
        Setup s = make(64, 2, 1.0, 5.0, 1.0);
        s.powers.p_a[0] = p;
        const double r = rate0(s);
        CHECK(r >= prev - 1e-13);
        prev = r;
    }
    prev = -1.0;
    for (double p : {0.1, 0.5, 1.0, 5.0, 20.0}) {
        Setup s = make(64, 2, 1.0, 5.0, 1.0);
        s.powers.p_b[0] = p;
        const double r = rate0(s);
        CHECK(r >= prev - 1e-13);
        prev = r;
    }
    prev = -1.0;
    for (double p : {0.1, 0.5, 1.0, 5.0, 20.0}) {
        const Setup s = make(64, 2, 1.0, p, 1.0);
        const double r = rate0(s);
        CHECK(r >= prev - 1e-13);
        prev = r;
    }
    prev = -1.0;
    for (int m : {8, 16, 32, 64}) {
        const Setup s = make(m, 2, 1.0, 5.0, 1.0);
        const double r = rate0(s);
        CHECK(r >= prev - 1e-13);
        prev = r;
    }
}

TEST_CASE("joint power growth saturates at an interference-limited value", "[df-analysis]") {
    const Setup lo = make(64, 3, 1e3, 1e3, 1.0);
    const Setup hi = make(64, 3, 1e6, 1e6, 1.0);
    const double r_lo = df_approx_rates(lo.cfg, lo.stats, lo.fading, lo.powers).sum;
    const double r_hi = df_approx_rates(hi.cfg, hi.stats, hi.fading, hi.powers).sum;
    CHECK(std::abs(r_hi - r_lo) / r_lo < 0.05);
}

TEST_CASE("relay power bottleneck moves between phases", "[df-analysis]") {
    // p_r -> 0: second phase collapses
    const Setup s0 = make(64, 2, 1.0, 1e-9, 1.0);
    CHECK(df_approx_rates(s0.cfg, s0.stats, s0.fading, s0.powers).sum < 1e-6);

    // p_r -> infinity: the pair rate is capped by the first phase
    const Setup s1 = make(64, 2, 1.0, 1e9, 1.0);
    const DfRateTable t = df_approx_rates(s1.cfg, s1.stats, s1.fading, s1.powers);
    for (const DfPairRates& p : t.pairs) {
        CHECK(p.first_phase_limited);
        CHECK(p.rate == Approx(p.r1).epsilon(1e-12));
    }
}

TEST_CASE("low-SNR comparison favors AF", "[df-analysis]") {
    // moderate fading spread and decent relay power keep the O(p) noise
    // corrections small, so p = 1e-3 already sits in the asymptotic regime
    TrialRng rng(13, 0);
    for (int k = 0; k < 20; ++k) {
        FadingProfile f;
        const int n = 2;
        f.beta_ar.resize(n);
        f.beta_rb.resize(n);
        for (int i = 0; i < n; ++i) {
            f.beta_ar[i] = std::pow(2.0, 2.0 * rng.uniform() - 1.0);
            f.beta_rb[i] = std::pow(2.0, 2.0 * rng.uniform() - 1.0);
        }
        const Setup s = make(128, n, 1e-3, 10.0, 1.0, &f);
        for (const LowSnrComparison& c : low_snr_comparison(s.cfg, s.stats, s.fading, s.powers)) {
            CHECK(c.af_exceeds);
            CHECK(c.af_sum > c.df_sum);
            // both protocols sit near their limiting forms (the residual
            // correction terms are O(p) relative but carry the fading spread)
            CHECK(c.af_sum == Approx(c.af_limit).epsilon(0.10));
            CHECK(c.df_sum == Approx(c.df_limit).epsilon(0.10));
        }
    }
}

TEST_CASE("equal estimate variances: DF limit sits below the AF product bound", "[df-analysis]") {
    const Setup s = make(64, 1, 1e-3, 1.0, 1.0);
    const auto cmp = low_snr_comparison(s.cfg, s.stats, s.fading, s.powers)[0];
    const double m = 64.0;
    const double sigma2 = s.stats.sigma2_ar[0];
    const double expected =
        0.5 * std::log2(1.0 + (s.powers.p_a[0] + s.powers.p_b[0]) * (m + 1.0) * sigma2 / 2.0);
    CHECK(cmp.df_limit == Approx(expected).epsilon(1e-12));
    CHECK(cmp.df_limit < cmp.af_limit);
}

TEST_CASE("zero user power gives zero rates and a false flag", "[df-analysis]") {
    Setup s = make(32, 2, 0.0, 1.0, 1.0);
    const auto cmp = low_snr_comparison(s.cfg, s.stats, s.fading, s.powers);
    for (const LowSnrComparison& c : cmp) {
        CHECK(c.af_sum == 0.0);
        CHECK(c.df_sum == 0.0);
        CHECK_FALSE(c.af_exceeds);
    }
}
