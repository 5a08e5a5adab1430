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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lrcpa {

/// N traces of S float samples, each with the plaintext/ciphertext of the
/// encryption that produced it. Samples are stored row-major (trace-major).
class TraceSet {
  public:
    explicit TraceSet(std::size_t samples_per_trace = 1);

    /// Allocates n zero-filled traces with zero plaintexts/ciphertexts.
    TraceSet(std::size_t n_traces, std::size_t samples_per_trace);

    std::size_t size() const noexcept { return plaintexts_.size(); }
    bool empty() const noexcept { return plaintexts_.empty(); }
    std::size_t samples_per_trace() const noexcept { return samples_; }

    std::span<const float> trace(std::size_t i) const;
    std::span<float> trace(std::size_t i);

    /// All samples, trace-major.
    std::span<const float> samples() const noexcept { return data_; }

    const Block &plaintext(std::size_t i) const { return plaintexts_.at(i); }
    const Block &ciphertext(std::size_t i) const { return ciphertexts_.at(i); }
    Block &plaintext(std::size_t i) { return plaintexts_.at(i); }
    Block &ciphertext(std::size_t i) { return ciphertexts_.at(i); }

    /// Throws ArgumentError if samples.size() != samples_per_trace().
    void push_back(const Block &plaintext, const Block &ciphertext,
                   std::span<const float> samples);

    void reserve(std::size_t n_traces);

    const std::optional<Block> &true_key() const noexcept { return key_; }
    void set_true_key(std::optional<Block> key) { key_ = key; }

    const std::optional<std::uint64_t> &seed() const noexcept {
        return seed_;
    }
    void set_seed(std::optional<std::uint64_t> seed) { seed_ = seed; }

    /// Traces [first, first + count) as a new set sharing key and seed.
    TraceSet slice(std::size_t first, std::size_t count) const;

    /// Field-for-field equality; samples compare by bit pattern.
    friend bool operator==(const TraceSet &a, const TraceSet &b);

  private:
    std::size_t samples_;
    std::vector<float> data_;
    std::vector<Block> plaintexts_;
    std::vector<Block> ciphertexts_;
    std::optional<Block> key_;
    std::optional<std::uint64_t> seed_;
};

/// Index of the first trace whose ciphertext does not match
/// encrypt_block(true_key, plaintext), or nullopt if all match. Sets
/// without a true key trivially pass.
std::optional<std::size_t> first_ciphertext_mismatch(const TraceSet &traces);

} // namespace lrcpa
