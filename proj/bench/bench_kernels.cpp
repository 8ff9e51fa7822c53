// Copyright 2026 The ifm-imaging Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference against the OpenMP kernels. Set OMP_NUM_THREADS to vary
// the thread count of the parallel variants.

#include <benchmark/benchmark.h>

#include "ifm/experiment.hpp"
#include "ifm/kernels.hpp"

using namespace ifm;

namespace {

OutcomeSampler imaging_sampler() {
    auto config = make_config(SchemeKind::multipixel_zeno, PixelPattern::from_bits("10110010"), 100);
    return OutcomeSampler(run_scheme(config).distribution);
}

std::vector<SchemeConfig> sweep_configs(std::size_t points) {
    std::vector<SchemeConfig> configs;
    for (std::size_t i = 0; i < points; i++) {
        configs.push_back(make_config(SchemeKind::semitransparent_zeno,
                                      PixelPattern::from_transmissions(std::vector<double>(4, 0.25)), 100 * (i + 1)));
    }
    return configs;
}

void BM_count_shots_serial(benchmark::State &state) {
    auto sampler = imaging_sampler();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::count_shots_serial(sampler, state.range(0), 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_count_shots_parallel(benchmark::State &state) {
    auto sampler = imaging_sampler();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::count_shots_parallel(sampler, state.range(0), 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = kernels::max_threads();
}

void BM_run_batch_serial(benchmark::State &state) {
    auto configs = sweep_configs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::run_batch_serial(configs));
    }
}

void BM_run_batch_parallel(benchmark::State &state) {
    auto configs = sweep_configs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::run_batch_parallel(configs));
    }
    state.counters["threads"] = kernels::max_threads();
}

}  // namespace

BENCHMARK(BM_count_shots_serial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_shots_parallel)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_run_batch_serial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_run_batch_parallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
