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

#include "lrcpa/trace_set.hpp"

#include "lrcpa/error.hpp"

#include <algorithm>
#include <cstring>
#include <string>

namespace lrcpa {

TraceSet::TraceSet(std::size_t samples_per_trace) : samples_(samples_per_trace) {
    if (samples_per_trace == 0)
        throw ArgumentError("samples_per_trace must be >= 1");
}

TraceSet::TraceSet(std::size_t n_traces, std::size_t samples_per_trace)
    : TraceSet(samples_per_trace) {
    data_.assign(n_traces * samples_per_trace, 0.0f);
    plaintexts_.resize(n_traces);
    ciphertexts_.resize(n_traces);
}

std::span<const float> TraceSet::trace(std::size_t i) const {
    if (i >= size())
        throw ArgumentError("trace index " + std::to_string(i) +
                            " out of range");
    return std::span<const float>(data_).subspan(i * samples_, samples_);
}

std::span<float> TraceSet::trace(std::size_t i) {
    if (i >= size())
        throw ArgumentError("trace index " + std::to_string(i) +
                            " out of range");
    return std::span<float>(data_).subspan(i * samples_, samples_);
}

void TraceSet::push_back(const Block &plaintext, const Block &ciphertext,
                         std::span<const float> samples) {
    if (samples.size() != samples_)
        throw ArgumentError("trace has " + std::to_string(samples.size()) +
                            " samples, expected " + std::to_string(samples_));
    data_.insert(data_.end(), samples.begin(), samples.end());
    plaintexts_.push_back(plaintext);
    ciphertexts_.push_back(ciphertext);
}

void TraceSet::reserve(std::size_t n_traces) {
    data_.reserve(n_traces * samples_);
    plaintexts_.reserve(n_traces);
    ciphertexts_.reserve(n_traces);
}

TraceSet TraceSet::slice(std::size_t first, std::size_t count) const {
    if (first > size() || count > size() - first)
        throw ArgumentError("slice out of range");
    TraceSet out(samples_);
    out.data_.assign(data_.begin() + static_cast<std::ptrdiff_t>(first * samples_),
                     data_.begin() +
                         static_cast<std::ptrdiff_t>((first + count) * samples_));
    out.plaintexts_.assign(plaintexts_.begin() + static_cast<std::ptrdiff_t>(first),
                           plaintexts_.begin() +
                               static_cast<std::ptrdiff_t>(first + count));
    out.ciphertexts_.assign(
        ciphertexts_.begin() + static_cast<std::ptrdiff_t>(first),
        ciphertexts_.begin() + static_cast<std::ptrdiff_t>(first + count));
    out.key_ = key_;
    out.seed_ = seed_;
    return out;
}

bool operator==(const TraceSet &a, const TraceSet &b) {
    return a.samples_ == b.samples_ && a.key_ == b.key_ &&
           a.seed_ == b.seed_ && a.plaintexts_ == b.plaintexts_ &&
           a.ciphertexts_ == b.ciphertexts_ &&
           a.data_.size() == b.data_.size() &&
           (a.data_.empty() ||
            std::memcmp(a.data_.data(), b.data_.data(),
                        a.data_.size() * sizeof(float)) == 0);
}

std::optional<std::size_t> first_ciphertext_mismatch(const TraceSet &traces) {
    if (!traces.true_key())
        return std::nullopt;
    const KeySchedule ks = expand_key(*traces.true_key());
    for (std::size_t i = 0; i < traces.size(); ++i)
        if (encrypt_block(ks, traces.plaintext(i)) != traces.ciphertext(i))
            return i;
    return std::nullopt;
}

} // namespace lrcpa
