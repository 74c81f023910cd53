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
#include <relaysim/allocation.hpp>
#include <relaysim/df_analysis.hpp>
#include <relaysim/model.hpp>
#include <relaysim/rng.hpp>

using namespace relaysim;
using Catch::Approx;

namespace {

struct Setup {
    SystemConfig cfg;
    FadingProfile fading;
    EstimationStats stats;
};

Setup make(int m, int n, double p_p, const FadingProfile* fading = nullptr) {
    Setup s;
    s.cfg = {.m = m, .n = n, .tau_c = 196, .tau_p = 2 * n, .seed = 0};
    s.fading = fading ? *fading : FadingProfile::uniform(n, 1.0);
    s.stats = estimation_stats(s.cfg, s.fading, p_p);
    return s;
}

double af_objective(const Setup& s, const Eigen::VectorXd& p_a, const Eigen::VectorXd& p_b,
                    double p_r) {
    return af_approx_rate(s.cfg, s.stats, s.fading, {p_a, p_b, p_r, 0.0}).sum;
}

double df_objective(const Setup& s, const Eigen::VectorXd& p_a, const Eigen::VectorXd& p_b,
                    double p_r) {
    return df_approx_rates(s.cfg, s.stats, s.fading, {p_a, p_b, p_r, 0.0}).sum;
}

// per-pair-symmetric oracle: exhaustive zoomed log-lattice over (p_1, p_2, p_r)
template <typename F>
double grid_search_3d(const F& objective, double total) {
    double lo1 = std::log(1e-6 * total), hi1 = std::log(total);
    double lo2 = lo1, hi2 = hi1, lo3 = lo1, hi3 = hi1;
    double best = 0.0, b1 = 0.0, b2 = 0.0, b3 = 0.0;
    const int pts = 21;
    for (int round = 0; round < 5; ++round) {
        for (int i = 0; i < pts; ++i)
            for (int j = 0; j < pts; ++j)
                for (int k = 0; k < pts; ++k) {
                    const double p1 = std::exp(lo1 + (hi1 - lo1) * i / (pts - 1));
                    const double p2 = std::exp(lo2 + (hi2 - lo2) * j / (pts - 1));
                    const double pr = std::exp(lo3 + (hi3 - lo3) * k / (pts - 1));
                    if (2.0 * (p1 + p2) + pr > total) continue;
                    const double v = objective(p1, p2, pr);
                    if (v > best) {
                        best = v;
                        b1 = std::log(p1);
                        b2 = std::log(p2);
                        b3 = std::log(pr);
                    }
                }
        const double w1 = (hi1 - lo1) / (pts - 1), w2 = (hi2 - lo2) / (pts - 1),
                     w3 = (hi3 - lo3) / (pts - 1);
        lo1 = b1 - 1.5 * w1;
        hi1 = b1 + 1.5 * w1;
        lo2 = b2 - 1.5 * w2;
        hi2 = b2 + 1.5 * w2;
        lo3 = b3 - 1.5 * w3;
        hi3 = b3 + 1.5 * w3;
    }
    return best;
}

}  // namespace

TEST_CASE("AF coefficient tables match the printed entries", "[allocation]") {
    // sigma2 = 0.5 for beta = 1 needs tau_p p_p = 1 (tau_p = 2N = 4 here)
    Setup s = make(100, 2, 0.25);
    REQUIRE(s.stats.sigma2_rb[0] == Approx(0.5).epsilon(1e-14));
    const AfGpCoeffs k = build_af_gp_coeffs(s.cfg, s.stats, s.fading);
    CHECK(k.e[0] == Approx(0.02).epsilon(1e-13));  // 1 / (M sigma2_rb)

    // symmetric fading: the mirrored tables are the role swap of the direct ones
    CHECK(k.a_m.isApprox(k.b, 1e-13));
    CHECK(k.b_m.isApprox(k.a, 1e-13));
    CHECK(k.c_m.isApprox(k.c, 1e-13));
    CHECK(k.d_m.isApprox(k.d, 1e-13));
    CHECK(k.e_m.isApprox(k.e, 1e-13));
}

TEST_CASE("table SINR equals the large-array SINR after regrouping", "[allocation]") {
    TrialRng rng(41, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + int(rng.uniform() * 4);
        FadingProfile f;
        f.beta_ar.resize(n);
        f.beta_rb.resize(n);
        for (int i = 0; i < n; ++i) {
            f.beta_ar[i] = std::exp(2.0 * (rng.uniform() - 0.5));
            f.beta_rb[i] = std::exp(2.0 * (rng.uniform() - 0.5));
        }
        const Setup s = make(8 + int(rng.uniform() * 300), n, std::exp(rng.uniform()), &f);
        const AfGpCoeffs k = build_af_gp_coeffs(s.cfg, s.stats, s.fading);
        PowerProfile p = PowerProfile::uniform(n, 0.0, std::exp(rng.uniform() * 2.0), 0.0);
        for (int i = 0; i < n; ++i) {
            p.p_a[i] = std::exp(2.0 * (rng.uniform() - 0.5));
            p.p_b[i] = std::exp(2.0 * (rng.uniform() - 0.5));
        }
        const Eigen::VectorXd ref_a = af_approx_sinr(s.cfg, s.stats, s.fading, p, Side::A);
        const Eigen::VectorXd ref_b = af_approx_sinr(s.cfg, s.stats, s.fading, p, Side::B);
        for (int i = 0; i < n; ++i) {
            const double den_a = k.a.row(i).dot(p.p_a) + k.b.row(i).dot(p.p_b) +
                                 (k.c.row(i).dot(p.p_a) + k.d.row(i).dot(p.p_b)) / p.p_r + k.e[i];
            CHECK(p.p_b[i] / den_a == Approx(ref_a[i]).epsilon(1e-11));
            const double den_b = k.a_m.row(i).dot(p.p_a) + k.b_m.row(i).dot(p.p_b) +
                                 (k.c_m.row(i).dot(p.p_a) + k.d_m.row(i).dot(p.p_b)) / p.p_r +
                                 k.e_m[i];
            CHECK(p.p_a[i] / den_b == Approx(ref_b[i]).epsilon(1e-11));
        }
    }
}

TEST_CASE("equal fading drives the AF loop to the closed-form split", "[allocation]") {
    for (int n : {1, 5}) {
        const Setup s = make(100, n, 1.0);
        const double total = 10.0;
        const AllocationResult r = allocate_af(s.cfg, s.stats, s.fading, total);
        for (int i = 0; i < n; ++i) {
            CHECK(r.p_a[i] == Approx(total / (4.0 * n)).epsilon(1e-3));
            CHECK(r.p_b[i] == Approx(total / (4.0 * n)).epsilon(1e-3));
        }
        CHECK(r.p_r == Approx(total / 2.0).epsilon(1e-3));
        CHECK(r.converged);
    }
}

TEST_CASE("AF loop matches a zoomed grid oracle at N = 2", "[allocation]") {
    // per-pair symmetric fading (asymmetric across pairs) keeps the optimum in
    // the 3-D symmetric slice the oracle enumerates
    FadingProfile f;
    f.beta_ar.resize(2);
    f.beta_rb.resize(2);
    f.beta_ar << 1.0, 0.2;
    f.beta_rb << 1.0, 0.2;
    const Setup s = make(64, 2, 1.0);
    const Setup sf = make(64, 2, 1.0, &f);
    (void)s;
    const double total = 10.0;
    const AllocationResult r = allocate_af(sf.cfg, sf.stats, sf.fading, total);
    const double oracle = grid_search_3d(
        [&](double p1, double p2, double pr) {
            Eigen::VectorXd pa(2), pb(2);
            pa << p1, p2;
            pb << p1, p2;
            return af_objective(sf, pa, pb, pr);
        },
        total);
    CHECK(r.sum_se >= oracle * (1.0 - 1e-2));
    CHECK(r.sum_se <= oracle * (1.0 + 1e-2));
}

TEST_CASE("DF loop matches a zoomed grid oracle at N = 2", "[allocation]") {
    FadingProfile f;
    f.beta_ar.resize(2);
    f.beta_rb.resize(2);
    f.beta_ar << 1.0, 0.3;
    f.beta_rb << 1.0, 0.3;
    const Setup sf = make(64, 2, 1.0, &f);
    const double total = 10.0;
    const AllocationResult r = allocate_df(sf.cfg, sf.stats, sf.fading, total);
    const double oracle = grid_search_3d(
        [&](double p1, double p2, double pr) {
            Eigen::VectorXd pa(2), pb(2);
            pa << p1, p2;
            pb << p1, p2;
            return df_objective(sf, pa, pb, pr);
        },
        total);
    CHECK(r.sum_se >= oracle * (1.0 - 1e-2));
    CHECK(r.sum_se <= oracle * (1.0 + 1e-2));
}

TEST_CASE("iterates stay feasible with nondecreasing surrogate traces", "[allocation]") {
    FadingProfile f;
    f.beta_ar.resize(3);
    f.beta_rb.resize(3);
    f.beta_ar << 1.5, 0.4, 0.9;
    f.beta_rb << 0.7, 1.1, 0.2;
    const Setup s = make(96, 3, 2.0, &f);
    const double total = 8.0;
    for (bool df : {false, true}) {
        const AllocationResult r = df ? allocate_df(s.cfg, s.stats, s.fading, total)
                                      : allocate_af(s.cfg, s.stats, s.fading, total);
        CHECK(r.p_a.minCoeff() > 0.0);
        CHECK(r.p_b.minCoeff() > 0.0);
        CHECK(r.p_r > 0.0);
        CHECK(r.p_a.sum() + r.p_b.sum() + r.p_r <= total * (1.0 + 1e-9));
        REQUIRE(r.objective_trace.size() >= 2);
        for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
            CHECK(r.objective_trace[k] >= r.objective_trace[k - 1] - 1e-7);
        CHECK(r.sum_se >= r.objective_trace.front() - 1e-7);
    }
}

TEST_CASE("DF loop keeps a symmetric configuration symmetric", "[allocation]") {
    const Setup s = make(64, 3, 1.0);
    const AllocationResult r = allocate_df(s.cfg, s.stats, s.fading, 9.0);
    for (int i = 1; i < 3; ++i) {
        CHECK(r.p_a[i] == Approx(r.p_a[0]).epsilon(1e-3));
        CHECK(r.p_b[i] == Approx(r.p_b[0]).epsilon(1e-3));
    }
    CHECK(r.p_a[0] == Approx(r.p_b[0]).epsilon(1e-3));
}

TEST_CASE("symmetric allocation: closed form and grid agreement", "[allocation]") {
    {
        const Setup s = make(100, 5, 1.0);
        const SymmetricAllocation a = allocate_symmetric(Protocol::AF, s.cfg, s.stats, s.fading, 10.0);
        CHECK(a.p_u == Approx(0.5).epsilon(1e-12));
        CHECK(a.p_r == Approx(5.0).epsilon(1e-12));
    }
    {
        const Setup s = make(100, 1, 1.0);
        const SymmetricAllocation a = allocate_symmetric(Protocol::AF, s.cfg, s.stats, s.fading, 8.0);
        CHECK(a.p_u == Approx(2.0).epsilon(1e-12));
        CHECK(a.p_r == Approx(4.0).epsilon(1e-12));
    }
    {
        FadingProfile f;
        f.beta_ar.resize(2);
        f.beta_rb.resize(2);
        f.beta_ar << 1.0, 0.4;
        f.beta_rb << 0.6, 1.3;
        const Setup s = make(80, 2, 0.5, &f);
        const double total = 12.0;
        const SymmetricAllocation a = allocate_symmetric(Protocol::DF, s.cfg, s.stats, s.fading, total);
        // 10^4-point grid oracle
        double best = 0.0, best_pu = 0.0;
        const int pts = 10000;
        for (int k = 1; k < pts; ++k) {
            const double p_u = total / (2.0 * 2) * k / double(pts);
            const double v = df_objective(s, Eigen::VectorXd::Constant(2, p_u),
                                          Eigen::VectorXd::Constant(2, p_u),
                                          total - 2.0 * 2 * p_u);
            if (v > best) {
                best = v;
                best_pu = p_u;
            }
        }
        CHECK(a.sum_se >= best - 1e-9);
        CHECK(std::abs(a.p_u - best_pu) <= total / (2.0 * 2) / pts * 1.5);
    }
}

TEST_CASE("the symmetric 1-D objective is concave on a grid", "[allocation]") {
    FadingProfile f;
    f.beta_ar.resize(2);
    f.beta_rb.resize(2);
    f.beta_ar << 1.0, 0.5;
    f.beta_rb << 0.8, 1.2;
    const Setup s = make(64, 2, 1.0, &f);
    const double total = 10.0;
    for (bool df : {false, true}) {
        std::vector<double> vals;
        const int pts = 60;
        for (int k = 1; k < pts; ++k) {
            const double p_u = total / 4.0 * k / double(pts);
            const Eigen::VectorXd p = Eigen::VectorXd::Constant(2, p_u);
            vals.push_back(df ? df_objective(s, p, p, total - 4.0 * p_u)
                              : af_objective(s, p, p, total - 4.0 * p_u));
        }
        for (std::size_t k = 1; k + 1 < vals.size(); ++k)
            CHECK(vals[k + 1] - 2.0 * vals[k] + vals[k - 1] <= 1e-9);
    }
}

TEST_CASE("uniform power is already optimal under equal fading", "[allocation]") {
    const Setup s = make(100, 3, 1.0);
    const ImprovementReport rep = improvement_report(s.cfg, s.stats, s.fading, 10.0);
    CHECK(std::abs(rep.af.uplift_percent) < 0.5);
    CHECK(rep.af.uplift_percent >= -1e-6);
    CHECK(rep.df.uplift_percent >= -1e-6);
}
