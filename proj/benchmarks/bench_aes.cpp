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

#include "lrcpa/aes.hpp"
#include "lrcpa/leakage.hpp"

#include <benchmark/benchmark.h>

namespace {

const lrcpa::Block kKey = lrcpa::Block::from_hex("2b7e151628aed2a6abf7158809cf4f3c");

void BM_EncryptBlock(benchmark::State &state) {
    const lrcpa::KeySchedule ks = lrcpa::expand_key(kKey);
    lrcpa::Block pt{};
    for (auto _ : state) {
        pt = lrcpa::encrypt_block(ks, pt);
        benchmark::DoNotOptimize(pt);
    }
}
BENCHMARK(BM_EncryptBlock);

void BM_ExpandKey(benchmark::State &state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(lrcpa::expand_key(kKey));
}
BENCHMARK(BM_ExpandKey);

void BM_SimulateCampaign(benchmark::State &state) {
    lrcpa::LeakageConfig cfg = lrcpa::LeakageConfig::equal_weights(1.0);
    cfg.noise_sigma = 4.0;
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(lrcpa::simulate_campaign(kKey, n, cfg, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateCampaign)->Arg(1000)->Arg(10000);

} // namespace
