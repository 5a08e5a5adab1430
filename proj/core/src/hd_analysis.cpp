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

#include "lrcpa/hd_analysis.hpp"

#include "lrcpa/aes.hpp"
#include "lrcpa/cpa.hpp"
#include "lrcpa/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace lrcpa {

std::size_t HdClassSummary::total() const noexcept {
    std::size_t n = 0;
    for (const auto &c : classes)
        n += c.count;
    return n;
}

std::size_t HdClassSummary::classes_present() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(classes.begin(), classes.end(),
                      [](const HdClass &c) { return c.present(); }));
}

HdClassSummary group_by_hd(const TraceSet &traces, std::uint8_t key_guess,
                           std::size_t byte_index, std::size_t sample_index) {
    if (byte_index > 15)
        throw ArgumentError("byte_index " + std::to_string(byte_index) +
                            " out of range 0..15");
    if (sample_index >= traces.samples_per_trace())
        throw ArgumentError("sample_index " + std::to_string(sample_index) +
                            " out of range");

    HdClassSummary out;
    out.guess = key_guess;
    out.byte_index = byte_index;
    out.sample_index = sample_index;

    // Welford per class.
    std::array<double, 9> m2{};
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const int hd = hypothetical_power(traces.ciphertext(i), key_guess,
                                          byte_index);
        HdClass &c = out.classes[static_cast<std::size_t>(hd)];
        const double y = traces.trace(i)[sample_index];
        ++c.count;
        const double d = y - c.mean;
        c.mean += d / static_cast<double>(c.count);
        m2[static_cast<std::size_t>(hd)] += d * (y - c.mean);
    }
    for (std::size_t h = 0; h < 9; ++h)
        if (out.classes[h].count > 0)
            out.classes[h].stddev =
                std::sqrt(m2[h] / static_cast<double>(out.classes[h].count));
    return out;
}

HdFit fit_hd_line(const HdClassSummary &summary) {
    std::vector<double> xs, ys;
    for (std::size_t h = 0; h < 9; ++h) {
        if (!summary.classes[h].present())
            continue;
        xs.push_back(static_cast<double>(h));
        ys.push_back(summary.classes[h].mean);
    }
    if (xs.size() < 2)
        throw InsufficientDataError(
            "fit_hd_line: need at least 2 populated HD classes, have " +
            std::to_string(xs.size()));

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }

    HdFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r = pearson(xs, ys);
    fit.n_classes_used = xs.size();
    return fit;
}

SignFlipReport sign_flip_report(const HdFit &baseline, const HdFit &augmented) {
    SignFlipReport rep;
    rep.baseline_slope = baseline.slope;
    rep.augmented_slope = augmented.slope;
    rep.slope_change = augmented.slope - baseline.slope;
    rep.flipped = (baseline.slope < 0.0 && augmented.slope > 0.0) ||
                  (baseline.slope > 0.0 && augmented.slope < 0.0);
    return rep;
}

WrongHorseScan wrong_horse_scan(const TraceSet &traces, std::size_t byte_index,
                                std::uint8_t correct_guess,
                                std::size_t sample_index, unsigned workers) {
    std::array<std::optional<HdFit>, 256> fits;
    detail::parallel_ranges(
        256, detail::resolve_workers(workers, 256 / 32),
        [&](unsigned, std::size_t b, std::size_t e) {
            for (std::size_t g = b; g < e; ++g) {
                const HdClassSummary s = group_by_hd(
                    traces, static_cast<std::uint8_t>(g), byte_index,
                    sample_index);
                if (s.classes_present() >= 2)
                    fits[g] = fit_hd_line(s);
            }
        });

    if (!fits[correct_guess])
        throw InsufficientDataError(
            "wrong_horse_scan: correct guess has fewer than 2 HD classes");

    WrongHorseScan scan;
    scan.correct = *fits[correct_guess];
    const double bar = std::abs(scan.correct.r);
    for (unsigned g = 0; g < 256; ++g) {
        if (g == correct_guess || !fits[g])
            continue;
        if (std::abs(fits[g]->r) > bar)
            scan.contenders.push_back({static_cast<std::uint8_t>(g), *fits[g]});
    }
    std::stable_sort(scan.contenders.begin(), scan.contenders.end(),
                     [](const GuessFit &a, const GuessFit &b) {
                         return std::abs(a.fit.r) > std::abs(b.fit.r);
                     });
    return scan;
}

} // namespace lrcpa
