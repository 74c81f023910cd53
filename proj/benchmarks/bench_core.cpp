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

#include <benchmark/benchmark.h>

#include <relaysim/af_analysis.hpp>
#include <relaysim/allocation.hpp>
#include <relaysim/gp.hpp>
#include <relaysim/model.hpp>
#include <relaysim/montecarlo.hpp>

using namespace relaysim;

namespace {

SystemConfig cfg_for(int m, int n) { return {.m = m, .n = n, .tau_c = 196, .tau_p = 2 * n, .seed = 1}; }

void bm_sample_channels(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const SystemConfig cfg = cfg_for(m, 5);
    const FadingProfile fading = FadingProfile::uniform(5, 1.0);
    const EstimationStats stats = estimation_stats(cfg, fading, 1.0);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        TrialRng rng(1, trial++);
        benchmark::DoNotOptimize(sample_channels(cfg, fading, stats, rng));
    }
}
BENCHMARK(bm_sample_channels)->Arg(64)->Arg(256);

void bm_af_mc_trials(benchmark::State& state) {
    const SystemConfig cfg = cfg_for(static_cast<int>(state.range(0)), 5);
    const FadingProfile fading = FadingProfile::uniform(5, 1.0);
    const PowerProfile powers = PowerProfile::uniform(5, 1.0, 10.0, 1.0);
    McOptions opt;
    opt.trials = 64;
    opt.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_af_sum_se(cfg, fading, powers, opt));
    state.SetItemsProcessed(state.iterations() * opt.trials);
}
BENCHMARK(bm_af_mc_trials)->Arg(64)->Arg(256);

void bm_af_exact_rate(benchmark::State& state) {
    const SystemConfig cfg = cfg_for(512, static_cast<int>(state.range(0)));
    const FadingProfile fading = FadingProfile::uniform(cfg.n, 1.0);
    const PowerProfile powers = PowerProfile::uniform(cfg.n, 1.0, 10.0, 1.0);
    const EstimationStats stats = estimation_stats(cfg, fading, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(af_exact_rate(cfg, stats, fading, powers).sum);
}
BENCHMARK(bm_af_exact_rate)->Arg(5)->Arg(20);

void bm_gp_solve(benchmark::State& state) {
    GpProblem p;
    Monomial obj;
    obj.coeff = 1.0;
    for (int v = 0; v < 5; ++v) obj.exponents["x" + std::to_string(v)] = -1.0;
    p.objective = Posynomial(obj);
    Posynomial budget;
    for (int v = 0; v < 5; ++v) {
        Monomial m;
        m.coeff = 0.2;
        m.exponents["x" + std::to_string(v)] = 1.0;
        budget.terms.push_back(std::move(m));
    }
    p.constraints.push_back(budget);
    for (auto _ : state) benchmark::DoNotOptimize(gp_solve(p, 1e-8));
}
BENCHMARK(bm_gp_solve);

void bm_allocate_af(benchmark::State& state) {
    const SystemConfig cfg = cfg_for(300, 5);
    FadingProfile fading;
    fading.beta_ar.resize(5);
    fading.beta_rb.resize(5);
    fading.beta_ar << 0.2688, 0.0368, 0.00025, 0.1398, 0.0047;
    fading.beta_rb << 0.0003, 0.00025, 0.0050, 0.0794, 0.0001;
    const EstimationStats stats = estimation_stats(cfg, fading, 10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(allocate_af(cfg, stats, fading, 10.0).sum_se);
}
BENCHMARK(bm_allocate_af);

}  // namespace

BENCHMARK_MAIN();
