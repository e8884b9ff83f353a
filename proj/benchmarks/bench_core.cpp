// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "qkdlab/attacks.hpp"
#include "qkdlab/decoy.hpp"
#include "qkdlab/experiments.hpp"
#include "qkdlab/montecarlo.hpp"
#include "qkdlab/thresholds.hpp"

namespace {

void BM_GainSeries(benchmark::State& state) {
    const auto profile = qkdlab::usd_yield_profile();
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkdlab::gain_from_yields(profile, 6.44));
    }
}
BENCHMARK(BM_GainSeries);

void BM_UsdGainClosed(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkdlab::usd_gain_closed(6.44));
    }
}
BENCHMARK(BM_UsdGainClosed);

void BM_SolveUsdThreshold(benchmark::State& state) {
    const qkdlab::DecoyParams params{0.5, 0.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkdlab::solve_usd_threshold(params));
    }
}
BENCHMARK(BM_SolveUsdThreshold);

void BM_SolveModifiedThreshold(benchmark::State& state) {
    const qkdlab::DecoyParams params{0.5, 0.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkdlab::solve_modified_threshold(params, 0.3));
    }
}
BENCHMARK(BM_SolveModifiedThreshold);

void BM_McConclusive(benchmark::State& state) {
    qkdlab::McConfig cfg;
    cfg.trials = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 42;
    cfg.workers = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkdlab::mc_conclusive_prob(5, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McConclusive)->Arg(1 << 14)->Arg(1 << 17);

void BM_SweepFig3(benchmark::State& state) {
    const qkdlab::DecoyParams params{0.5, 0.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkdlab::sweep_q1_vs_kappa(params));
    }
}
BENCHMARK(BM_SweepFig3);

}  // namespace

BENCHMARK_MAIN();
