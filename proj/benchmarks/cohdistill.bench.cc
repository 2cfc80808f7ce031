// Copyright 2026 The cohdistill Authors
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

#include <algorithm>
#include <functional>
#include <random>

#include "benchmark/benchmark.h"
#include "cohdistill/loss_optimizer.h"
#include "cohdistill/no_waste.h"
#include "cohdistill/protocol.h"

using namespace cohdistill;

namespace {

PureCoherentState random_state(size_t d) {
    std::mt19937_64 rng(d);
    std::exponential_distribution<double> exp1;
    std::vector<double> w(d);
    for (auto &x : w) {
        x = exp1(rng);
    }
    std::sort(w.begin(), w.end(), std::greater<>());
    double total = 0;
    for (double x : w) {
        total += x;
    }
    for (auto &x : w) {
        x /= total;
    }
    return PureCoherentState::from_probabilities(w);
}

}  // namespace

static void build_channel(benchmark::State &state) {
    auto s = random_state(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_channel(s));
    }
}
BENCHMARK(build_channel)->RangeMultiplier(2)->Range(2, 64);

static void verify_sio(benchmark::State &state) {
    auto channel = build_channel(random_state(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_sio(channel));
    }
}
BENCHMARK(verify_sio)->RangeMultiplier(2)->Range(2, 64);

static void two_step_distill(benchmark::State &state) {
    auto s = PureCoherentState::from_probabilities(std::vector<double>{0.35, 0.3, 0.25, 0.1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(two_step_distill(s));
    }
}
BENCHMARK(two_step_distill);

static void sample_ensemble(benchmark::State &state) {
    auto ensemble = outcome_probabilities(random_state(16));
    const uint64_t n = 1000000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_ensemble(ensemble, n, 7, state.range(0)));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(sample_ensemble)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

static void min_output_coherence(benchmark::State &state) {
    const size_t d = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_output_coherence(d, 0.5 * (d - 1)));
    }
}
BENCHMARK(min_output_coherence)->Arg(3)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
