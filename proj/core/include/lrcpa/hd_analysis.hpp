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

#include "lrcpa/trace_set.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lrcpa {

struct HdClass {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0; ///< population standard deviation

    bool present() const noexcept { return count > 0; }
};

/// Leakage statistics of one sample grouped by the hypothesised Hamming
/// distance (0..8) of one key guess.
struct HdClassSummary {
    std::uint8_t guess = 0;
    std::size_t byte_index = 0;
    std::size_t sample_index = 0;
    std::array<HdClass, 9> classes{};

    std::size_t total() const noexcept;
    std::size_t classes_present() const noexcept;
};

/// Least-squares line through the (HD, class mean) points, one point per
/// non-empty class, all points weighted equally.
struct HdFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r = 0.0;
    std::size_t n_classes_used = 0;
};

/// Throws ArgumentError on a bad byte or sample index.
HdClassSummary group_by_hd(const TraceSet &traces, std::uint8_t key_guess,
                           std::size_t byte_index, std::size_t sample_index);

/// Throws InsufficientDataError with fewer than two non-empty classes.
HdFit fit_hd_line(const HdClassSummary &summary);

struct SignFlipReport {
    bool flipped = false;
    double baseline_slope = 0.0;
    double augmented_slope = 0.0;
    double slope_change = 0.0; ///< augmented - baseline
};

/// Flags a change of slope sign between two fits. A zero slope counts as
/// having neither sign, so it never participates in a flip.
SignFlipReport sign_flip_report(const HdFit &baseline, const HdFit &augmented);

struct GuessFit {
    std::uint8_t guess = 0;
    HdFit fit;
};

struct WrongHorseScan {
    HdFit correct;
    /// Incorrect guesses whose |fit r| exceeds the correct guess's, by
    /// descending |r| (ties by ascending guess).
    std::vector<GuessFit> contenders;
};

/// Fits every one of the 256 guesses. Guesses with fewer than two
/// populated classes cannot be fitted and are never contenders.
WrongHorseScan wrong_horse_scan(const TraceSet &traces, std::size_t byte_index,
                                std::uint8_t correct_guess,
                                std::size_t sample_index = 0,
                                unsigned workers = 0);

} // namespace lrcpa
