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

#include <relaysim/af_analysis.hpp>
#include <relaysim/model.hpp>
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

Setup symmetric(int m, int n, double p_u = 1.0, double p_p = 1.0, double p_r = -1.0) {
    Setup s;
    s.cfg = {.m = m, .n = n, .tau_c = 196, .tau_p = 2 * n, .seed = 0};
    s.fading = FadingProfile::uniform(n, 1.0);
    s.powers = PowerProfile::uniform(n, p_u, p_r < 0 ? 2.0 * n : p_r, p_p);
    s.stats = estimation_stats(s.cfg, s.fading, p_p);
    return s;
}

Setup randomized(TrialRng& rng, int m, int n) {
    Setup s;
    s.cfg = {.m = m, .n = n, .tau_c = 196, .tau_p = 2 * n, .seed = 0};
    s.fading.beta_ar.resize(n);
    s.fading.beta_rb.resize(n);
    s.powers.p_a.resize(n);
    s.powers.p_b.resize(n);
    for (int i = 0; i < n; ++i) {
        s.fading.beta_ar[i] = std::exp(2.0 * (rng.uniform() - 0.5));
        s.fading.beta_rb[i] = std::exp(2.0 * (rng.uniform() - 0.5));
        s.powers.p_a[i] = std::exp(2.0 * (rng.uniform() - 0.5));
        s.powers.p_b[i] = std::exp(2.0 * (rng.uniform() - 0.5));
    }
    s.powers.p_r = std::exp(3.0 * rng.uniform());
    s.powers.p_p = std::exp(2.0 * (rng.uniform() - 0.5));
    s.stats = estimation_stats(s.cfg, s.fading, s.powers.p_p);
    return s;
}

}  // namespace

TEST_CASE("rho_af^2 is linear in p_r and reduces to noise forwarding", "[af-analysis]") {
    const Setup s = symmetric(8, 2);
    const double r1 = af_rho_squared(s.cfg, s.stats, s.fading, s.powers);
    PowerProfile doubled = s.powers;
    doubled.p_r *= 2.0;
    CHECK(af_rho_squared(s.cfg, s.stats, s.fading, doubled) == Approx(2.0 * r1).epsilon(1e-14));

    PowerProfile silent = s.powers;  // users off: only the relay-noise term remains
    silent.p_a.setZero();
    silent.p_b.setZero();
    const double m = 8.0;
    double noise = 0.0;
    for (int i = 0; i < 2; ++i) noise += s.stats.sigma2_ar[i] * s.stats.sigma2_rb[i];
    CHECK(af_rho_squared(s.cfg, s.stats, s.fading, silent) ==
          Approx(silent.p_r / (2.0 * m * (m + 1.0) * noise)).epsilon(1e-13));

    PowerProfile off = s.powers;
    off.p_r = 0.0;
    CHECK(af_rho_squared(s.cfg, s.stats, s.fading, off) == 0.0);
}

TEST_CASE("exact terms vanish with the paired transmitter power", "[af-analysis]") {
    Setup s = symmetric(8, 2);
    s.powers.p_b[0] = 0.0;
    const AfExactTerms t = af_exact_terms(s.cfg, s.stats, s.fading, s.powers, Side::A);
    CHECK(t.a[0] == 0.0);
    CHECK(t.b[0] == 0.0);
    CHECK(t.a[1] > 0.0);
}

TEST_CASE("single pair has no inter-user interference", "[af-analysis]") {
    const Setup s = symmetric(8, 1);
    const AfExactTerms t = af_exact_terms(s.cfg, s.stats, s.fading, s.powers, Side::A);
    CHECK(t.d[0] == 0.0);
}

TEST_CASE("every transcription line is nonnegative on randomized inputs", "[af-analysis]") {
    TrialRng rng(5, 0);
    for (int k = 0; k < 60; ++k) {
        const Setup s = randomized(rng, 4 + int(rng.uniform() * 60), 1 + int(rng.uniform() * 4));
        for (Side side : {Side::A, Side::B}) {
            for (int i = 0; i < s.cfg.n; ++i) {
                const auto lines =
                    detail::af_term_lines(s.cfg, s.stats, s.fading, s.powers, side, i);
                for (double v : lines.b) CHECK(v >= 0.0);
                for (double v : lines.c) CHECK(v >= 0.0);
                for (double v : lines.d) CHECK(v >= 0.0);
                for (double v : lines.e) CHECK(v >= 0.0);
                // term sums reproduce the public decomposition
                const AfExactTerms t = af_exact_terms(s.cfg, s.stats, s.fading, s.powers, side);
                double sum = 0.0;
                for (double v : lines.b) sum += v;
                CHECK(t.b[i] == Approx(sum).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("exact rate grows with the array and approaches the approximation", "[af-analysis]") {
    double prev_rate = 0.0;
    for (int m : {8, 16, 32, 64}) {
        const Setup s = symmetric(m, 2);
        const double r = af_exact_rate(s.cfg, s.stats, s.fading, s.powers).sum;
        CHECK(r > prev_rate);
        prev_rate = r;
    }

    double prev_gap = 1e9;
    for (int m : {64, 128, 256, 512, 1024}) {
        const Setup s = symmetric(m, 5);
        const double ex = af_exact_rate(s.cfg, s.stats, s.fading, s.powers).sum;
        const double ap = af_approx_rate(s.cfg, s.stats, s.fading, s.powers).sum;
        const double gap = std::abs(ex - ap) / ex;
        CHECK(gap < prev_gap);
        prev_gap = gap;
        if (m == 1024) CHECK(gap <= 0.01);
    }
}

TEST_CASE("uniform power scaling leaves all term ratios invariant except the noise term",
          "[af-analysis]") {
    TrialRng rng(11, 0);
    const Setup s = randomized(rng, 16, 3);
    const AfExactTerms t1 = af_exact_terms(s.cfg, s.stats, s.fading, s.powers, Side::A);
    Setup scaled = s;
    const double c = 7.5;
    scaled.powers.p_a *= c;
    scaled.powers.p_b *= c;
    scaled.powers.p_r *= c;
    const AfExactTerms t2 = af_exact_terms(scaled.cfg, scaled.stats, scaled.fading, scaled.powers,
                                           Side::A);
    for (int i = 0; i < s.cfg.n; ++i) {
        CHECK(t2.a[i] / t2.b[i] == Approx(t1.a[i] / t1.b[i]).epsilon(1e-12));
        CHECK(t2.a[i] / t2.c[i] == Approx(t1.a[i] / t1.c[i]).epsilon(1e-12));
        CHECK(t2.a[i] / t2.d[i] == Approx(t1.a[i] / t1.d[i]).epsilon(1e-12));
        CHECK(t2.a[i] / t2.e[i] > t1.a[i] / t1.e[i] * 1.5);  // only the noise term scales away
    }
}

TEST_CASE("approximation denominator grows with the number of pairs", "[af-analysis]") {
    double prev = 1e18;
    for (int n : {1, 2, 4, 8}) {
        const Setup s = symmetric(256, n, 1.0, 1.0, 10.0);
        const double r = af_approx_sinr(s.cfg, s.stats, s.fading, s.powers, Side::A)[0];
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("high power drowns the compound noise; low power leaves the relay gain",
          "[af-analysis]") {
    {
        Setup s = symmetric(128, 2, 1e8, 1.0, 1e8 * 4.0);
        const AfApproxTerms t = af_approx_terms(s.cfg, s.stats, s.fading, s.powers, Side::A);
        CHECK(t.etilde[0] / (t.btilde[0] + t.ctilde[0] + t.dtilde[0]) < 1e-3);
    }
    {
        // vanishing user powers: rate approaches (1/2) log2(1 + p_b M sigma2_rb)
        Setup s = symmetric(128, 2, 1e-6, 1.0, 1.0);
        const double sinr = af_approx_sinr(s.cfg, s.stats, s.fading, s.powers, Side::A)[0];
        const double limit = s.powers.p_b[0] * 128.0 * s.stats.sigma2_rb[0];
        CHECK(sinr == Approx(limit).epsilon(2e-3));
    }
}

TEST_CASE("all powers off yields zero rate", "[af-analysis]") {
    Setup s = symmetric(16, 2);
    s.powers.p_a.setZero();
    s.powers.p_b.setZero();
    CHECK(af_exact_rate(s.cfg, s.stats, s.fading, s.powers).sum == 0.0);
    s.powers.p_r = 0.0;
    CHECK(af_exact_rate(s.cfg, s.stats, s.fading, s.powers).sum == 0.0);
}
