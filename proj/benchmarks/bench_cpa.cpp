/*
 * SPDX-FileCopyrightText: <text>Copyright 2026 The lrcpa Authors</text>
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lrcpa/cpa.hpp"
#include "lrcpa/hd_analysis.hpp"
#include "lrcpa/leakage.hpp"

#include <benchmark/benchmark.h>

namespace {

const lrcpa::TraceSet &campaign() {
    static const lrcpa::TraceSet ts = [] {
        lrcpa::LeakageConfig cfg = lrcpa::LeakageConfig::equal_weights(1.0);
        cfg.noise_sigma = 4.0;
        return lrcpa::simulate_campaign(
            lrcpa::Block::from_hex("2b7e151628aed2a6abf7158809cf4f3c"), 20000, cfg, 1);
    }();
    return ts;
}

void BM_Accumulate(benchmark::State &state) {
    const auto &ts = campaign();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            lrcpa::accumulate(ts, 0, static_cast<unsigned>(state.range(0))));
    state.SetItemsProcessed(state.iterations() * ts.size());
}
BENCHMARK(BM_Accumulate)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_CpaAttackWithEvolution(benchmark::State &state) {
    const auto &ts = campaign();
    for (auto _ : state)
        benchmark::DoNotOptimize(lrcpa::cpa_attack(ts, 0, {.checkpoint_stride = 100}));
    state.SetItemsProcessed(state.iterations() * ts.size());
}
BENCHMARK(BM_CpaAttackWithEvolution)->Unit(benchmark::kMillisecond);

void BM_WrongHorseScan(benchmark::State &state) {
    const auto &ts = campaign();
    for (auto _ : state)
        benchmark::DoNotOptimize(lrcpa::wrong_horse_scan(ts, 0, 0xd0));
}
BENCHMARK(BM_WrongHorseScan)->Unit(benchmark::kMillisecond);

} // namespace
