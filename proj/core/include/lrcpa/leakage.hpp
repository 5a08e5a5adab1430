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

#pragma once

#include "lrcpa/aes.hpp"
#include "lrcpa/trace_set.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace lrcpa {

// Leakage is a voltage-drop signal: every toggling register bit pulls the
// point-of-interest sample *down* by its weight, so more switching gives a
// more negative value.
//
// Register bit numbering: bit b of the 128-bit state register is bit (b % 8)
// (0 = LSB) of state byte b / 8.

enum class Trigger {
    OnStatic, ///< offset applied when the augmented bit does not toggle
    OnToggle, ///< offset applied when it does
};

const char *to_string(Trigger t) noexcept;
/// "on_static" / "on_toggle" (case-insensitive, '-' accepted for '_').
Trigger parse_trigger(std::string_view text);

/// Fixed extra leakage attached to one register bit.
struct Augmentation {
    std::size_t byte_index = 0;
    std::size_t bit_index = 2;
    double offset = 0.0;
    Trigger trigger = Trigger::OnStatic;

    void validate() const;
};

struct LeakageConfig {
    std::array<double, 128> bit_weights{};
    double baseline = 0.0;
    double noise_sigma = 0.0;
    std::optional<Augmentation> augmentation;
    std::size_t samples_per_trace = 1;
    std::size_t poi_index = 0;

    /// Every register bit contributes `weight`.
    static LeakageConfig equal_weights(double weight);

    /// Throws ArgumentError on negative weights/sigma, a poi outside the
    /// trace or an invalid augmentation.
    void validate() const;
};

/// Noise-free value of the point-of-interest sample for one register
/// overwrite.
double modeled_leakage(const LastRoundStates &states,
                       const LeakageConfig &config);

struct SimulatedTrace {
    std::vector<float> samples;
    Block ciphertext;
};

SimulatedTrace simulate_trace(const KeySchedule &schedule,
                              const Block &plaintext,
                              const LeakageConfig &config, std::mt19937_64 &rng);
SimulatedTrace simulate_trace(const Block &key, const Block &plaintext,
                              const LeakageConfig &config, std::mt19937_64 &rng);

/// Random source for trace `index` of a campaign seeded with `seed`. Every
/// trace owns an independent substream, so campaigns are identical however
/// they are split across workers.
std::mt19937_64 trace_substream(std::uint64_t seed, std::uint64_t index);

/// n traces over uniformly random plaintexts. Deterministic in
/// (key, n, config, seed) regardless of `workers` (0 = hardware threads).
TraceSet simulate_campaign(const Block &key, std::size_t n,
                           const LeakageConfig &config, std::uint64_t seed,
                           unsigned workers = 0);

/// Linear abstraction of a ring-oscillator bank: alpha * n_ro * pulse_fraction.
double ro_offset_model(std::size_t n_ro, double pulse_fraction, double alpha);

} // namespace lrcpa
