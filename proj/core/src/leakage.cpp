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

#include "lrcpa/leakage.hpp"

#include "lrcpa/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace lrcpa {

const char *to_string(Trigger t) noexcept {
    return t == Trigger::OnStatic ? "on_static" : "on_toggle";
}

Trigger parse_trigger(std::string_view text) {
    std::string norm;
    for (const char c : text)
        norm.push_back(c == '-' ? '_'
                                : static_cast<char>(std::tolower(
                                      static_cast<unsigned char>(c))));
    if (norm == "on_static" || norm == "static")
        return Trigger::OnStatic;
    if (norm == "on_toggle" || norm == "toggle")
        return Trigger::OnToggle;
    throw ArgumentError("unknown trigger '" + std::string(text) +
                        "' (expected on_static or on_toggle)");
}

void Augmentation::validate() const {
    if (byte_index > 15)
        throw ArgumentError("augmentation byte_index must be in 0..15");
    if (bit_index > 7)
        throw ArgumentError("augmentation bit_index must be in 0..7");
    if (!(offset >= 0.0) || !std::isfinite(offset))
        throw ArgumentError("augmentation offset must be finite and >= 0");
}

LeakageConfig LeakageConfig::equal_weights(double weight) {
    LeakageConfig c;
    c.bit_weights.fill(weight);
    return c;
}

void LeakageConfig::validate() const {
    for (const double w : bit_weights)
        if (!(w >= 0.0) || !std::isfinite(w))
            throw ArgumentError("bit weights must be finite and >= 0");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
        throw ArgumentError("noise_sigma must be finite and >= 0");
    if (!std::isfinite(baseline))
        throw ArgumentError("baseline must be finite");
    if (samples_per_trace == 0)
        throw ArgumentError("samples_per_trace must be >= 1");
    if (poi_index >= samples_per_trace)
        throw ArgumentError("poi_index must be < samples_per_trace");
    if (augmentation)
        augmentation->validate();
}

double modeled_leakage(const LastRoundStates &states,
                       const LeakageConfig &config) {
    const Block toggles = states.toggles();
    double drop = 0.0;
    for (std::size_t byte = 0; byte < 16; ++byte) {
        std::uint8_t t = toggles[byte];
        for (std::size_t bit = 0; t != 0; ++bit, t >>= 1)
            if (t & 1)
                drop += config.bit_weights[8 * byte + bit];
    }
    if (const auto &aug = config.augmentation) {
        const bool toggled = (toggles[aug->byte_index] >> aug->bit_index) & 1;
        const bool fire = aug->trigger == Trigger::OnStatic ? !toggled : toggled;
        if (fire)
            drop += aug->offset;
    }
    return config.baseline - drop;
}

SimulatedTrace simulate_trace(const KeySchedule &schedule,
                              const Block &plaintext,
                              const LeakageConfig &config,
                              std::mt19937_64 &rng) {
    const LastRoundStates states = last_round_states(schedule, plaintext);
    const double poi_value = modeled_leakage(states, config);

    SimulatedTrace out;
    out.ciphertext = states.ciphertext;
    out.samples.resize(config.samples_per_trace);
    if (config.noise_sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, config.noise_sigma);
        for (std::size_t s = 0; s < config.samples_per_trace; ++s) {
            const double clean = s == config.poi_index ? poi_value : config.baseline;
            out.samples[s] = static_cast<float>(clean + noise(rng));
        }
    } else {
        std::fill(out.samples.begin(), out.samples.end(),
                  static_cast<float>(config.baseline));
        out.samples[config.poi_index] = static_cast<float>(poi_value);
    }
    return out;
}

SimulatedTrace simulate_trace(const Block &key, const Block &plaintext,
                              const LeakageConfig &config,
                              std::mt19937_64 &rng) {
    return simulate_trace(expand_key(key), plaintext, config, rng);
}

std::mt19937_64 trace_substream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

namespace {

Block random_block(std::mt19937_64 &rng) {
    Block b;
    for (std::size_t half = 0; half < 2; ++half) {
        std::uint64_t v = rng();
        for (std::size_t i = 0; i < 8; ++i, v >>= 8)
            b[8 * half + i] = static_cast<std::uint8_t>(v);
    }
    return b;
}

} // namespace

TraceSet simulate_campaign(const Block &key, std::size_t n,
                           const LeakageConfig &config, std::uint64_t seed,
                           unsigned workers) {
    if (n == 0)
        throw ArgumentError("campaign needs n >= 1 traces");
    config.validate();

    const KeySchedule schedule = expand_key(key);
    TraceSet traces(n, config.samples_per_trace);
    traces.set_true_key(key);
    traces.set_seed(seed);

    detail::parallel_ranges(
        n, detail::resolve_workers(workers, n / 256 + 1),
        [&](unsigned, std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                std::mt19937_64 rng = trace_substream(seed, i);
                const Block pt = random_block(rng);
                SimulatedTrace t = simulate_trace(schedule, pt, config, rng);
                traces.plaintext(i) = pt;
                traces.ciphertext(i) = t.ciphertext;
                std::copy(t.samples.begin(), t.samples.end(),
                          traces.trace(i).begin());
            }
        });
    return traces;
}

double ro_offset_model(std::size_t n_ro, double pulse_fraction, double alpha) {
    if (!(pulse_fraction >= 0.0 && pulse_fraction <= 1.0))
        throw ArgumentError("pulse_fraction must be in [0, 1]");
    return alpha * static_cast<double>(n_ro) * pulse_fraction;
}

} // namespace lrcpa
