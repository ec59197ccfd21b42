/*
   Copyright 2026 The rismac Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Serial reference vs OpenMP kernels. Thread count follows RISMAC_THREADS.

#include <benchmark/benchmark.h>

#include "rismac/config.hpp"
#include "rismac/simulator.hpp"
#include "rismac/solver.hpp"
#include "rismac/strategies.hpp"
#include "rismac/threshold_table.hpp"

namespace {

using namespace rismac;

const NetworkConfig& cfg() {
    static const NetworkConfig c = reference_network();
    return c;
}

const OfflineModel& model() {
    static const OfflineModel m = OfflineModel::from_config(cfg());
    return m;
}

const Strategy& proposed() {
    static const ThresholdTable t = build_threshold_table(cfg());
    static const Strategy s = Strategy::proposed(t);
    return s;
}

constexpr double kLambda = 6.197;

void BM_CampaignSerial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_campaign_serial(1, cfg(), proposed(), n).estimate.mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CampaignSerial)->Arg(20'000)->Unit(benchmark::kMillisecond);

void BM_CampaignParallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_campaign(1, cfg(), proposed(), n).estimate.mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = resolve_threads();
}
BENCHMARK(BM_CampaignParallel)->Arg(20'000)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_LambdaMcSerial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_mc_serial(model(), 0, kLambda, 1e-3, n, 7).mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LambdaMcSerial)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_LambdaMcParallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_mc(model(), 0, kLambda, 1e-3, n, 7).mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LambdaMcParallel)->Arg(100'000)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_BellmanLhs(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(bellman_lhs(model(), kLambda).value);
    }
}
BENCHMARK(BM_BellmanLhs)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
