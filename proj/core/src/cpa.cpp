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

#include "lrcpa/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lrcpa {

namespace {

double safe_r(double c, double m2x, double m2y) {
    if (!(m2x > 0.0) || !(m2y > 0.0))
        return 0.0;
    return std::clamp(c / std::sqrt(m2x * m2y), -1.0, 1.0);
}

void check_byte(std::size_t byte_index) {
    if (byte_index > 15)
        throw ArgumentError("byte_index " + std::to_string(byte_index) +
                            " out of range 0..15");
}

} // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw ArgumentError("pearson: length mismatch (" +
                            std::to_string(xs.size()) + " vs " +
                            std::to_string(ys.size()) + ")");
    if (xs.size() < 2)
        throw ArgumentError("pearson: need at least 2 points");
    PearsonAccumulator acc;
    for (std::size_t i = 0; i < xs.size(); ++i)
        acc.add(xs[i], ys[i]);
    return acc.correlation();
}

void PearsonAccumulator::add(double x, double y) noexcept {
    ++n_;
    const double inv_n = 1.0 / static_cast<double>(n_);
    const double dx = x - mean_x_;
    const double dy = y - mean_y_;
    mean_x_ += dx * inv_n;
    mean_y_ += dy * inv_n;
    m2_x_ += dx * (x - mean_x_);
    m2_y_ += dy * (y - mean_y_);
    c_xy_ += dx * (y - mean_y_);
}

void PearsonAccumulator::merge(const PearsonAccumulator &o) noexcept {
    if (o.n_ == 0)
        return;
    if (n_ == 0) {
        *this = o;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(o.n_);
    const double n = na + nb;
    const double dx = o.mean_x_ - mean_x_;
    const double dy = o.mean_y_ - mean_y_;
    const double w = na * nb / n;
    m2_x_ += o.m2_x_ + dx * dx * w;
    m2_y_ += o.m2_y_ + dy * dy * w;
    c_xy_ += o.c_xy_ + dx * dy * w;
    mean_x_ += dx * nb / n;
    mean_y_ += dy * nb / n;
    n_ += o.n_;
}

double PearsonAccumulator::correlation() const noexcept {
    return safe_r(c_xy_, m2_x_, m2_y_);
}

CorrelationAccumulator::CorrelationAccumulator(std::size_t byte_index,
                                               std::size_t samples_per_trace,
                                               unsigned first_guess,
                                               unsigned end_guess)
    : byte_(byte_index), samples_(samples_per_trace), first_(first_guess),
      end_(end_guess) {
    check_byte(byte_index);
    if (samples_per_trace == 0)
        throw ArgumentError("samples_per_trace must be >= 1");
    if (first_guess >= end_guess || end_guess > 256)
        throw ArgumentError("invalid guess range");
    const std::size_t guesses = end_ - first_;
    mean_x_.assign(guesses, 0.0);
    m2_x_.assign(guesses, 0.0);
    mean_y_.assign(samples_, 0.0);
    m2_y_.assign(samples_, 0.0);
    c_xy_.assign(guesses * samples_, 0.0);
    scratch_.assign(samples_, 0.0);
}

void CorrelationAccumulator::add(const Block &ciphertext,
                                 std::span<const float> samples) {
    if (samples.size() != samples_)
        throw ArgumentError("trace length does not match accumulator");
    ++n_;
    const double inv_n = 1.0 / static_cast<double>(n_);

    // scratch_ holds y - mean_y after the update, as the co-moment needs.
    for (std::size_t s = 0; s < samples_; ++s) {
        const double y = samples[s];
        const double dy = y - mean_y_[s];
        mean_y_[s] += dy * inv_n;
        scratch_[s] = y - mean_y_[s];
        m2_y_[s] += dy * scratch_[s];
    }

    const std::uint8_t shifted = ciphertext[key_position_for(byte_)];
    const std::uint8_t overwritten = ciphertext[byte_];
    for (unsigned g = first_; g < end_; ++g) {
        const std::size_t k = g - first_;
        const double x = hamming_weight(
            inv_sbox(static_cast<std::uint8_t>(shifted ^ g)) ^ overwritten);
        const double dx = x - mean_x_[k];
        mean_x_[k] += dx * inv_n;
        m2_x_[k] += dx * (x - mean_x_[k]);
        double *c = &c_xy_[k * samples_];
        for (std::size_t s = 0; s < samples_; ++s)
            c[s] += dx * scratch_[s];
    }
}

void CorrelationAccumulator::add(const TraceSet &traces, std::size_t first,
                                 std::size_t count) {
    if (traces.samples_per_trace() != samples_)
        throw ArgumentError("trace length does not match accumulator");
    if (first > traces.size() || count > traces.size() - first)
        throw ArgumentError("trace range out of bounds");
    for (std::size_t i = first; i < first + count; ++i)
        add(traces.ciphertext(i), traces.trace(i));
}

void CorrelationAccumulator::merge(const CorrelationAccumulator &o) {
    if (o.byte_ != byte_ || o.samples_ != samples_ || o.first_ != first_ ||
        o.end_ != end_)
        throw ArgumentError("cannot merge accumulators of different shape");
    if (o.n_ == 0)
        return;
    if (n_ == 0) {
        *this = o;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(o.n_);
    const double n = na + nb;
    const double w = na * nb / n;

    std::vector<double> dy(samples_);
    for (std::size_t s = 0; s < samples_; ++s) {
        dy[s] = o.mean_y_[s] - mean_y_[s];
        m2_y_[s] += o.m2_y_[s] + dy[s] * dy[s] * w;
        mean_y_[s] += dy[s] * nb / n;
    }
    for (std::size_t k = 0; k < mean_x_.size(); ++k) {
        const double dx = o.mean_x_[k] - mean_x_[k];
        m2_x_[k] += o.m2_x_[k] + dx * dx * w;
        mean_x_[k] += dx * nb / n;
        for (std::size_t s = 0; s < samples_; ++s)
            c_xy_[k * samples_ + s] +=
                o.c_xy_[k * samples_ + s] + dx * dy[s] * w;
    }
    n_ += o.n_;
}

double CorrelationAccumulator::correlation(unsigned guess,
                                           std::size_t sample) const {
    if (guess < first_ || guess >= end_)
        throw ArgumentError("guess outside accumulator range");
    if (sample >= samples_)
        throw ArgumentError("sample index out of range");
    const std::size_t k = guess - first_;
    return safe_r(c_xy_[k * samples_ + sample], m2_x_[k], m2_y_[sample]);
}

double CorrelationAccumulator::peak_correlation(unsigned guess) const {
    double best = correlation(guess, 0);
    for (std::size_t s = 1; s < samples_; ++s) {
        const double r = correlation(guess, s);
        if (std::abs(r) > std::abs(best))
            best = r;
    }
    return best;
}

CorrelationAccumulator accumulate(const TraceSet &traces,
                                  std::size_t byte_index, unsigned workers) {
    const std::size_t n = traces.size();
    const unsigned w = detail::resolve_workers(workers, n / 1024 + 1);
    std::vector<CorrelationAccumulator> parts(
        w, CorrelationAccumulator(byte_index, traces.samples_per_trace()));
    detail::parallel_ranges(n, w,
                            [&](unsigned worker, std::size_t b, std::size_t e) {
                                parts[worker].add(traces, b, e - b);
                            });
    for (unsigned i = 1; i < w; ++i)
        parts[0].merge(parts[i]);
    return parts[0];
}

AttackOutcome cpa_attack(const TraceSet &traces, std::size_t byte_index,
                         const AttackOptions &options) {
    check_byte(byte_index);
    if (traces.empty())
        throw ArgumentError("cpa_attack: empty trace set");
    if (options.checkpoint_stride == 0)
        throw ArgumentError("cpa_attack: checkpoint_stride must be >= 1");

    const std::size_t n = traces.size();
    AttackOutcome out;
    CorrelationEvolution &evo = out.evolution;
    for (std::size_t c = options.checkpoint_stride; c <= n;
         c += options.checkpoint_stride)
        evo.checkpoints.push_back(c);
    if (evo.checkpoints.empty() || evo.checkpoints.back() != n)
        evo.checkpoints.push_back(n);
    const std::size_t n_cp = evo.checkpoints.size();
    evo.values.assign(256 * n_cp, 0.0);

    AttackResult &res = out.result;
    res.byte_index = byte_index;

    // Guesses are independent, so splitting them across workers leaves every
    // floating-point operation unchanged.
    const unsigned w = detail::resolve_workers(options.workers, 256 / 16);
    detail::parallel_ranges(
        256, w, [&](unsigned, std::size_t g_begin, std::size_t g_end) {
            CorrelationAccumulator acc(byte_index, traces.samples_per_trace(),
                                       static_cast<unsigned>(g_begin),
                                       static_cast<unsigned>(g_end));
            std::size_t done = 0;
            for (std::size_t cp = 0; cp < n_cp; ++cp) {
                acc.add(traces, done, evo.checkpoints[cp] - done);
                done = evo.checkpoints[cp];
                for (std::size_t g = g_begin; g < g_end; ++g)
                    evo.values[g * n_cp + cp] =
                        acc.peak_correlation(static_cast<unsigned>(g));
            }
            for (std::size_t g = g_begin; g < g_end; ++g)
                res.scores[g] = std::abs(evo.values[g * n_cp + n_cp - 1]);
        });

    std::array<unsigned, 256> order;
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](unsigned a, unsigned b) {
        return res.scores[a] > res.scores[b];
    });
    for (std::size_t i = 0; i < 256; ++i)
        res.ranking[i] = static_cast<std::uint8_t>(order[i]);
    res.best_guess = res.ranking[0];

    if (traces.true_key()) {
        res.correct_guess = correct_guess(*traces.true_key(), byte_index);
        res.disclosure = traces_to_disclosure(evo, *res.correct_guess);
    }
    return out;
}

std::optional<std::size_t>
traces_to_disclosure(const CorrelationEvolution &evolution,
                     std::uint8_t correct_guess) {
    const std::size_t n_cp = evolution.checkpoints.size();
    if (n_cp == 0)
        throw ArgumentError("traces_to_disclosure: empty evolution");
    if (evolution.values.size() != 256 * n_cp)
        throw ArgumentError("traces_to_disclosure: malformed evolution");

    auto strictly_first = [&](std::size_t cp) {
        const double mine = std::abs(evolution.value(correct_guess, cp));
        for (unsigned g = 0; g < 256; ++g)
            if (g != correct_guess && std::abs(evolution.value(g, cp)) >= mine)
                return false;
        return true;
    };

    std::optional<std::size_t> first;
    for (std::size_t cp = n_cp; cp-- > 0;) {
        if (!strictly_first(cp))
            break;
        first = evolution.checkpoints[cp];
    }
    return first;
}

std::size_t rank_of_guess(const AttackResult &result, std::uint8_t guess) {
    const auto it =
        std::find(result.ranking.begin(), result.ranking.end(), guess);
    return static_cast<std::size_t>(it - result.ranking.begin()) + 1;
}

} // namespace lrcpa
