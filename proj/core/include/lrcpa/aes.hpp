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

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace lrcpa {

/// 16 bytes in FIPS-197 order: byte i is state position i, i.e. row i % 4,
/// column i / 4.
template <typename Tag> struct ByteBlock {
    std::array<std::uint8_t, 16> bytes{};

    constexpr ByteBlock() = default;
    constexpr explicit ByteBlock(const std::array<std::uint8_t, 16> &b)
        : bytes(b) {}

    constexpr std::uint8_t &operator[](std::size_t i) { return bytes[i]; }
    constexpr const std::uint8_t &operator[](std::size_t i) const {
        return bytes[i];
    }

    /// Accepts exactly 32 hex digits, either case.
    static ByteBlock from_hex(std::string_view hex);
    /// Lower-case, 32 digits.
    std::string to_hex() const;

    friend constexpr bool operator==(const ByteBlock &,
                                     const ByteBlock &) = default;
};

using Block = ByteBlock<struct BlockTag>;
using RoundKey = ByteBlock<struct RoundKeyTag>;

/// Round keys 0..10 of AES-128. round_keys[0] is the cipher key,
/// round_keys[10] the last-round key.
struct KeySchedule {
    std::array<RoundKey, 11> round_keys{};

    const RoundKey &last_round_key() const { return round_keys[10]; }
};

/// ShiftRows as a byte-position permutation: ShiftRows moves the byte at
/// state position p to position forward[p]; inverse undoes it.
struct ShiftRowsPerm {
    std::array<std::uint8_t, 16> forward;
    std::array<std::uint8_t, 16> inverse;
};

const ShiftRowsPerm &shift_rows_perm() noexcept;

std::uint8_t sbox(std::uint8_t v) noexcept;
std::uint8_t inv_sbox(std::uint8_t v) noexcept;

KeySchedule expand_key(const Block &key);

/// Recovers the cipher key from the last-round key by running the key
/// expansion backwards.
Block invert_key_schedule(const RoundKey &last_round_key);

Block encrypt_block(const Block &key, const Block &plaintext);
Block encrypt_block(const KeySchedule &schedule, const Block &plaintext);
Block decrypt_block(const KeySchedule &schedule, const Block &ciphertext);

/// State register contents around the final round: round9_state is what
/// the register holds before the last round overwrites it with ciphertext.
struct LastRoundStates {
    Block round9_state;
    Block ciphertext;

    /// Per-bit toggle mask of the register overwrite.
    Block toggles() const;
};

LastRoundStates last_round_states(const Block &key, const Block &plaintext);
LastRoundStates last_round_states(const KeySchedule &schedule,
                                  const Block &plaintext);

/// Position of the last-round key byte that a hypothesis on register byte
/// `byte_index` guesses. Equal to shift_rows_perm().forward[byte_index].
std::size_t key_position_for(std::size_t byte_index);

/// Register toggles of state byte `byte_index` during the last-round
/// overwrite, reconstructed from the ciphertext and a guess for the
/// last-round key byte at key_position_for(byte_index):
///
///   InvSbox[ct[SR(j)] ^ guess] ^ ct[j]
///
/// Throws ArgumentError if byte_index > 15.
std::uint8_t last_round_transitions(const Block &ct, std::uint8_t key_guess,
                             std::size_t byte_index);

constexpr int hamming_weight(std::uint8_t v) noexcept {
    return std::popcount(v);
}

/// Hamming-distance power model: HW of last_round_transitions, in 0..8.
int hypothetical_power(const Block &ct, std::uint8_t key_guess,
                       std::size_t byte_index);

/// Correct hypothesis for register byte `byte_index` under `key`.
std::uint8_t correct_guess(const Block &key, std::size_t byte_index);

} // namespace lrcpa
