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
#include <relaysim/df_analysis.hpp>
#include <relaysim/model.hpp>
#include <relaysim/rng.hpp>
#include <relaysim/scaling.hpp>

using namespace relaysim;
using Catch::Approx;

namespace {

const SystemConfig kCfg{.m = 128, .n = 5, .tau_c = 196, .tau_p = 10, .seed = 0};

ScalingSpec spec_a(double gamma, double e_u = 10.0, double e_r = 100.0, double e_p = 10.0) {
    return {Scenario::A, 0.0, 0.0, gamma, e_u, e_r, e_p};
}
ScalingSpec spec_b(double alpha, double beta, double e_u = 10.0, double e_r = 100.0,
                   double e_p = 10.0) {
    return {Scenario::B, alpha, beta, 0.0, e_u, e_r, e_p};
}
ScalingSpec spec_c(double alpha, double beta, double gamma, double e_u = 10.0, double e_r = 31.6,
                   double e_p = 1.0) {
    return {Scenario::C, alpha, beta, gamma, e_u, e_r, e_p};
}

}  // namespace

TEST_CASE("scenario constraints are enforced", "[scaling]") {
    CHECK_THROWS_AS(validate_scaling_spec(ScalingSpec{Scenario::A, 0.5, 0.0, 1.0, 1, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_scaling_spec(ScalingSpec{Scenario::A, 0.0, 0.0, 0.0, 1, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_scaling_spec(ScalingSpec{Scenario::B, 0.5, 0.5, 0.3, 1, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_scaling_spec(ScalingSpec{Scenario::C, 0.5, 0.5, 0.0, 1, 1, 1}),
                    std::invalid_argument);
    CHECK_NOTHROW(validate_scaling_spec(spec_a(1.0)));
    CHECK_NOTHROW(validate_scaling_spec(spec_b(1.0, 0.2)));
}

TEST_CASE("no scaling reduces to the fixed-power approximations", "[scaling]") {
    const FadingProfile fading = FadingProfile::uniform(kCfg.n, 1.0);
    const ScalingSpec s = spec_b(0.0, 0.0);
    const double m = 128;
    SystemConfig cfg = kCfg;
    const PowerProfile powers = scaled_powers(s, kCfg.n, m);
    const EstimationStats stats = estimation_stats(cfg, fading, powers.p_p);
    CHECK(scaled_rate(Protocol::AF, s, cfg, fading, m) ==
          Approx(af_approx_rate(cfg, stats, fading, powers).sum).epsilon(1e-14));
    CHECK(scaled_rate(Protocol::DF, s, cfg, fading, m) ==
          Approx(df_approx_rates(cfg, stats, fading, powers).sum).epsilon(1e-14));
}

TEST_CASE("Scenario A: limit behaviour for the three pilot exponents", "[scaling]") {
    const FadingProfile fading = FadingProfile::uniform(kCfg.n, 1.0);
    for (Protocol proto : {Protocol::AF, Protocol::DF}) {
        const RegimeClass finite = asymptotic_limit(proto, spec_a(1.0), kCfg, fading);
        REQUIRE(finite.kind == RegimeKind::FiniteLimit);
        CHECK(scaled_rate(proto, spec_a(1.0), kCfg, fading, 1e5) ==
              Approx(*finite.limit_value).epsilon(0.02));

        CHECK(asymptotic_limit(proto, spec_a(2.0), kCfg, fading).kind == RegimeKind::ZeroLimit);
        const double hi = scaled_rate(proto, spec_a(2.0), kCfg, fading, 1e2);
        const double lo = scaled_rate(proto, spec_a(2.0), kCfg, fading, 1e4);
        CHECK(lo < 0.1 * hi);

        CHECK(asymptotic_limit(proto, spec_a(0.8), kCfg, fading).kind == RegimeKind::Unbounded);
        double prev = 0.0;
        for (double m : {1e2, 1e3, 1e4, 1e5}) {
            const double r = scaled_rate(proto, spec_a(0.8), kCfg, fading, m);
            CHECK(r > prev);
            prev = r;
        }
    }
}

TEST_CASE("Scenario B classification and corollary limits", "[scaling]") {
    const FadingProfile fading = FadingProfile::uniform(kCfg.n, 1.0);
    CHECK(asymptotic_limit(Protocol::AF, spec_b(1.0, 1.0), kCfg, fading).kind ==
          RegimeKind::FiniteLimit);
    CHECK(asymptotic_limit(Protocol::AF, spec_b(0.5, 0.5), kCfg, fading).kind ==
          RegimeKind::Unbounded);
    CHECK(asymptotic_limit(Protocol::AF, spec_b(1.2, 0.5), kCfg, fading).kind ==
          RegimeKind::ZeroLimit);
    CHECK(asymptotic_limit(Protocol::DF, spec_b(0.3, 1.2), kCfg, fading).kind ==
          RegimeKind::ZeroLimit);
    // boundary snapping keeps the classification deterministic
    CHECK(asymptotic_limit(Protocol::AF, spec_b(1.0 + 5e-13, 0.2), kCfg, fading).kind ==
          RegimeKind::FiniteLimit);

    const EstimationStats st = estimation_stats(kCfg, fading, 10.0);  // p_p = e_p fixed

    {
        // user power cut at 1/M, relay power slower: relay-noise-only limit
        const ScalingSpec s = spec_b(1.0, 0.4);
        const RegimeClass rc = asymptotic_limit(Protocol::AF, s, kCfg, fading);
        REQUIRE(rc.kind == RegimeKind::FiniteLimit);
        const double per_user = 0.5 * std::log2(1.0 + s.e_u * st.sigma2_rb[0]);
        CHECK(*rc.limit_value ==
              Approx(kCfg.overhead() * 2.0 * kCfg.n * per_user).epsilon(1e-12));
        CHECK(scaled_rate(Protocol::AF, s, kCfg, fading, 1e6) ==
              Approx(*rc.limit_value).epsilon(0.01));
    }
    {
        // relay power cut at 1/M, user power slower: user-noise-only limit
        const ScalingSpec s = spec_b(0.4, 1.0);
        const RegimeClass rc = asymptotic_limit(Protocol::AF, s, kCfg, fading);
        REQUIRE(rc.kind == RegimeKind::FiniteLimit);
        double noise = 0.0;
        for (int n = 0; n < kCfg.n; ++n)
            noise += st.sigma2_ar[n] * st.sigma2_rb[n] * (st.sigma2_ar[n] + st.sigma2_rb[n]);
        const double q = st.sigma2_ar[0] * st.sigma2_ar[0] * st.sigma2_rb[0] * st.sigma2_rb[0];
        const double per_user = 0.5 * std::log2(1.0 + s.e_r * q / noise);
        CHECK(*rc.limit_value ==
              Approx(kCfg.overhead() * 2.0 * kCfg.n * per_user).epsilon(1e-12));
        CHECK(scaled_rate(Protocol::AF, s, kCfg, fading, 1e6) ==
              Approx(*rc.limit_value).epsilon(0.01));
    }
}

TEST_CASE("equal fading reduces the joint-1/M limit to parallel SISO links", "[scaling]") {
    const FadingProfile fading = FadingProfile::uniform(kCfg.n, 1.0);
    const ScalingSpec s = spec_b(1.0, 1.0);
    const RegimeClass rc = asymptotic_limit(Protocol::AF, s, kCfg, fading);
    REQUIRE(rc.kind == RegimeKind::FiniteLimit);
    const double tau_pp = kCfg.tau_p * s.e_p;
    const double sigma1 = tau_pp / (tau_pp + 1.0);
    const double siso = kCfg.overhead() * kCfg.n *
                        std::log2(1.0 + sigma1 * s.e_u * s.e_r / (s.e_r + 2.0 * kCfg.n * s.e_u));
    CHECK(*rc.limit_value == Approx(siso).epsilon(1e-12));
}

TEST_CASE("Scenario C classification follows the exponent sums", "[scaling]") {
    const FadingProfile fading = FadingProfile::uniform(kCfg.n, 1.0);
    CHECK(asymptotic_limit(Protocol::AF, spec_c(1.3, 1.1, 0.5), kCfg, fading).kind ==
          RegimeKind::ZeroLimit);
    CHECK(asymptotic_limit(Protocol::AF, spec_c(0.3, 0.2, 0.4), kCfg, fading).kind ==
          RegimeKind::Unbounded);
    CHECK(asymptotic_limit(Protocol::AF, spec_c(0.5, 0.5, 0.5), kCfg, fading).kind ==
          RegimeKind::FiniteLimit);
    CHECK(asymptotic_limit(Protocol::DF, spec_c(0.6, 0.2, 0.4), kCfg, fading).kind ==
          RegimeKind::FiniteLimit);
    CHECK(asymptotic_limit(Protocol::DF, spec_c(0.6, 0.7, 0.4), kCfg, fading).kind ==
          RegimeKind::ZeroLimit);
}

TEST_CASE("DF link-inequality used by the first-phase corollaries", "[scaling]") {
    TrialRng rng(3, 0);
    for (int k = 0; k < 500; ++k) {
        const double a1 = std::exp(4.0 * (rng.uniform() - 0.5));
        const double a2 = std::exp(4.0 * (rng.uniform() - 0.5));
        const double b = std::exp(4.0 * (rng.uniform() - 0.5));
        CHECK(std::log(1.0 + (a1 + a2) / b) <
              std::log(1.0 + a1 / b) + std::log(1.0 + a2 / b));
    }
}

TEST_CASE("asymptotic forms converge to their limits", "[scaling]") {
    const FadingProfile fading = FadingProfile::uniform(kCfg.n, 1.0);
    for (Protocol proto : {Protocol::AF, Protocol::DF}) {
        const ScalingSpec s = spec_b(1.0, 1.0);
        const RegimeClass rc = asymptotic_limit(proto, s, kCfg, fading);
        REQUIRE(rc.kind == RegimeKind::FiniteLimit);
        CHECK(asymptotic_form_rate(proto, s, kCfg, fading, 1e8) == Approx(*rc.limit_value).epsilon(1e-4));
    }
    // the Scenario-B noise split tracks the two exponents
    const NoiseParts parts = scenario_b_noise_parts(spec_b(1.0, 0.4), kCfg, fading, 0, Side::A, 100.0);
    CHECK(parts.relay_part > 0.0);
    CHECK(parts.user_part > 0.0);
    const NoiseParts parts2 =
        scenario_b_noise_parts(spec_b(1.0, 0.4), kCfg, fading, 0, Side::A, 10000.0);
    CHECK(parts2.relay_part == Approx(parts.relay_part).epsilon(1e-12));  // alpha = 1: flat
    CHECK(parts2.user_part < parts.user_part);                            // beta < 1: decays
}

TEST_CASE("tradeoff equivalence of equal power-reduction rates", "[scaling]") {
    const FadingProfile fading = FadingProfile::uniform(kCfg.n, 1.0);
    const std::vector<double> grid = {1e2, 1e3, 1e4, 1e5};
    {
        const TradeoffReport rep = tradeoff_equivalence(
            Protocol::AF, {spec_c(1.3, 1.1, 0.5), spec_c(0.8, 0.6, 1.0)}, kCfg, fading, grid);
        CHECK(rep.limits_equal);
        CHECK(rep.limits[0].kind == RegimeKind::ZeroLimit);
        for (std::size_t g = 1; g < grid.size(); ++g) CHECK(rep.gaps[g] < rep.gaps[g - 1]);
    }
    {
        const TradeoffReport rep =
            tradeoff_equivalence(Protocol::DF, {spec_c(0.5, 0.5, 0.5)}, kCfg, fading, grid);
        CHECK(rep.limits_equal);  // a single spec is trivially equivalent
    }
    {
        // same exponent sums but different E_p: finite limits differ exactly
        // as the corollary formula prescribes (equal fading: both compound
        // noise parts scale with 1/(tau_p E_p))
        ScalingSpec s1 = spec_c(0.5, 0.5, 0.5);
        ScalingSpec s2 = s1;
        s2.e_p *= 10.0;
        const TradeoffReport rep = tradeoff_equivalence(Protocol::AF, {s1, s2}, kCfg, fading, grid);
        CHECK_FALSE(rep.limits_equal);
        for (int k = 0; k < 2; ++k) {
            const ScalingSpec& s = k == 0 ? s1 : s2;
            const double t1 = 1.0 / (kCfg.tau_p * s.e_p * s.e_u);
            const double t2 = 2.0 * kCfg.n / (kCfg.tau_p * s.e_p * s.e_r);
            const double per_user = 0.5 * std::log2(1.0 + 1.0 / (t1 + t2));
            CHECK(*rep.limits[k].limit_value ==
                  Approx(kCfg.overhead() * 2.0 * kCfg.n * per_user).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(tradeoff_equivalence(Protocol::AF, {spec_c(1.3, 1.1, 0.5), spec_c(0.9, 0.6, 1.0)},
                                         kCfg, fading, grid),
                    std::invalid_argument);
}
