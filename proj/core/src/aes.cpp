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

#include "lrcpa/error.hpp"

#include <string>

namespace lrcpa {

namespace {

constexpr std::array<std::uint8_t, 256> kSbox = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b,
    0xfe, 0xd7, 0xab, 0x76, 0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0,
    0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0, 0xb7, 0xfd, 0x93, 0x26,
    0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2,
    0xeb, 0x27, 0xb2, 0x75, 0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0,
    0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84, 0x53, 0xd1, 0x00, 0xed,
    0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f,
    0x50, 0x3c, 0x9f, 0xa8, 0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5,
    0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2, 0xcd, 0x0c, 0x13, 0xec,
    0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14,
    0xde, 0x5e, 0x0b, 0xdb, 0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c,
    0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79, 0xe7, 0xc8, 0x37, 0x6d,
    0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f,
    0x4b, 0xbd, 0x8b, 0x8a, 0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e,
    0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e, 0xe1, 0xf8, 0x98, 0x11,
    0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f,
    0xb0, 0x54, 0xbb, 0x16,
};

constexpr std::array<std::uint8_t, 256> kInvSbox = {
    0x52, 0x09, 0x6a, 0xd5, 0x30, 0x36, 0xa5, 0x38, 0xbf, 0x40, 0xa3, 0x9e,
    0x81, 0xf3, 0xd7, 0xfb, 0x7c, 0xe3, 0x39, 0x82, 0x9b, 0x2f, 0xff, 0x87,
    0x34, 0x8e, 0x43, 0x44, 0xc4, 0xde, 0xe9, 0xcb, 0x54, 0x7b, 0x94, 0x32,
    0xa6, 0xc2, 0x23, 0x3d, 0xee, 0x4c, 0x95, 0x0b, 0x42, 0xfa, 0xc3, 0x4e,
    0x08, 0x2e, 0xa1, 0x66, 0x28, 0xd9, 0x24, 0xb2, 0x76, 0x5b, 0xa2, 0x49,
    0x6d, 0x8b, 0xd1, 0x25, 0x72, 0xf8, 0xf6, 0x64, 0x86, 0x68, 0x98, 0x16,
    0xd4, 0xa4, 0x5c, 0xcc, 0x5d, 0x65, 0xb6, 0x92, 0x6c, 0x70, 0x48, 0x50,
    0xfd, 0xed, 0xb9, 0xda, 0x5e, 0x15, 0x46, 0x57, 0xa7, 0x8d, 0x9d, 0x84,
    0x90, 0xd8, 0xab, 0x00, 0x8c, 0xbc, 0xd3, 0x0a, 0xf7, 0xe4, 0x58, 0x05,
    0xb8, 0xb3, 0x45, 0x06, 0xd0, 0x2c, 0x1e, 0x8f, 0xca, 0x3f, 0x0f, 0x02,
    0xc1, 0xaf, 0xbd, 0x03, 0x01, 0x13, 0x8a, 0x6b, 0x3a, 0x91, 0x11, 0x41,
    0x4f, 0x67, 0xdc, 0xea, 0x97, 0xf2, 0xcf, 0xce, 0xf0, 0xb4, 0xe6, 0x73,
    0x96, 0xac, 0x74, 0x22, 0xe7, 0xad, 0x35, 0x85, 0xe2, 0xf9, 0x37, 0xe8,
    0x1c, 0x75, 0xdf, 0x6e, 0x47, 0xf1, 0x1a, 0x71, 0x1d, 0x29, 0xc5, 0x89,
    0x6f, 0xb7, 0x62, 0x0e, 0xaa, 0x18, 0xbe, 0x1b, 0xfc, 0x56, 0x3e, 0x4b,
    0xc6, 0xd2, 0x79, 0x20, 0x9a, 0xdb, 0xc0, 0xfe, 0x78, 0xcd, 0x5a, 0xf4,
    0x1f, 0xdd, 0xa8, 0x33, 0x88, 0x07, 0xc7, 0x31, 0xb1, 0x12, 0x10, 0x59,
    0x27, 0x80, 0xec, 0x5f, 0x60, 0x51, 0x7f, 0xa9, 0x19, 0xb5, 0x4a, 0x0d,
    0x2d, 0xe5, 0x7a, 0x9f, 0x93, 0xc9, 0x9c, 0xef, 0xa0, 0xe0, 0x3b, 0x4d,
    0xae, 0x2a, 0xf5, 0xb0, 0xc8, 0xeb, 0xbb, 0x3c, 0x83, 0x53, 0x99, 0x61,
    0x17, 0x2b, 0x04, 0x7e, 0xba, 0x77, 0xd6, 0x26, 0xe1, 0x69, 0x14, 0x63,
    0x55, 0x21, 0x0c, 0x7d,
};

constexpr std::array<std::uint8_t, 11> kRcon = {0x00, 0x01, 0x02, 0x04,
                                                0x08, 0x10, 0x20, 0x40,
                                                0x80, 0x1b, 0x36};

constexpr ShiftRowsPerm make_shift_rows_perm() {
    ShiftRowsPerm perm{};
    for (std::size_t p = 0; p < 16; ++p) {
        const std::size_t row = p % 4;
        const std::size_t col = p / 4;
        // Row r rotates left by r columns.
        const std::size_t dest = row + 4 * ((col + 4 - row) % 4);
        perm.forward[p] = static_cast<std::uint8_t>(dest);
        perm.inverse[dest] = static_cast<std::uint8_t>(p);
    }
    return perm;
}

constexpr ShiftRowsPerm kShiftRows = make_shift_rows_perm();

constexpr std::uint8_t xtime(std::uint8_t v) {
    return static_cast<std::uint8_t>((v << 1) ^ ((v & 0x80) ? 0x1b : 0x00));
}

std::uint8_t gmul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t r = 0;
    while (b != 0) {
        if (b & 1)
            r ^= a;
        a = xtime(a);
        b >>= 1;
    }
    return r;
}

template <typename T> void add_round_key(Block &s, const T &k) {
    for (std::size_t i = 0; i < 16; ++i)
        s[i] ^= k[i];
}

void sub_bytes(Block &s) {
    for (auto &b : s.bytes)
        b = kSbox[b];
}

void inv_sub_bytes(Block &s) {
    for (auto &b : s.bytes)
        b = kInvSbox[b];
}

void shift_rows(Block &s) {
    Block out;
    for (std::size_t p = 0; p < 16; ++p)
        out[kShiftRows.forward[p]] = s[p];
    s = out;
}

void inv_shift_rows(Block &s) {
    Block out;
    for (std::size_t p = 0; p < 16; ++p)
        out[kShiftRows.inverse[p]] = s[p];
    s = out;
}

void mix_columns(Block &s) {
    for (std::size_t c = 0; c < 4; ++c) {
        std::uint8_t *col = &s.bytes[4 * c];
        const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        const std::uint8_t all = a0 ^ a1 ^ a2 ^ a3;
        col[0] = a0 ^ all ^ xtime(a0 ^ a1);
        col[1] = a1 ^ all ^ xtime(a1 ^ a2);
        col[2] = a2 ^ all ^ xtime(a2 ^ a3);
        col[3] = a3 ^ all ^ xtime(a3 ^ a0);
    }
}

void inv_mix_columns(Block &s) {
    for (std::size_t c = 0; c < 4; ++c) {
        std::uint8_t *col = &s.bytes[4 * c];
        const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        col[0] = gmul(a0, 14) ^ gmul(a1, 11) ^ gmul(a2, 13) ^ gmul(a3, 9);
        col[1] = gmul(a0, 9) ^ gmul(a1, 14) ^ gmul(a2, 11) ^ gmul(a3, 13);
        col[2] = gmul(a0, 13) ^ gmul(a1, 9) ^ gmul(a2, 14) ^ gmul(a3, 11);
        col[3] = gmul(a0, 11) ^ gmul(a1, 13) ^ gmul(a2, 9) ^ gmul(a3, 14);
    }
}

// State after rounds 1..9, i.e. the register content before the final round.
Block run_nine_rounds(const KeySchedule &ks, const Block &plaintext) {
    Block s = plaintext;
    add_round_key(s, ks.round_keys[0]);
    for (std::size_t round = 1; round < 10; ++round) {
        sub_bytes(s);
        shift_rows(s);
        mix_columns(s);
        add_round_key(s, ks.round_keys[round]);
    }
    return s;
}

Block final_round(const KeySchedule &ks, Block s) {
    sub_bytes(s);
    shift_rows(s);
    add_round_key(s, ks.round_keys[10]);
    return s;
}

void check_byte_index(std::size_t byte_index) {
    if (byte_index > 15)
        throw ArgumentError("byte_index " + std::to_string(byte_index) +
                            " out of range 0..15");
}

} // namespace

const ShiftRowsPerm &shift_rows_perm() noexcept { return kShiftRows; }

std::uint8_t sbox(std::uint8_t v) noexcept { return kSbox[v]; }

std::uint8_t inv_sbox(std::uint8_t v) noexcept { return kInvSbox[v]; }

KeySchedule expand_key(const Block &key) {
    // 44 words, word w occupies bytes 4w..4w+3 of the flattened schedule.
    std::array<std::uint8_t, 176> w{};
    for (std::size_t i = 0; i < 16; ++i)
        w[i] = key[i];
    for (std::size_t i = 4; i < 44; ++i) {
        std::array<std::uint8_t, 4> t = {w[4 * i - 4], w[4 * i - 3],
                                         w[4 * i - 2], w[4 * i - 1]};
        if (i % 4 == 0) {
            t = {static_cast<std::uint8_t>(kSbox[t[1]] ^ kRcon[i / 4]),
                 kSbox[t[2]], kSbox[t[3]], kSbox[t[0]]};
        }
        for (std::size_t b = 0; b < 4; ++b)
            w[4 * i + b] = w[4 * (i - 4) + b] ^ t[b];
    }
    KeySchedule ks;
    for (std::size_t r = 0; r < 11; ++r)
        for (std::size_t i = 0; i < 16; ++i)
            ks.round_keys[r][i] = w[16 * r + i];
    return ks;
}

Block invert_key_schedule(const RoundKey &last_round_key) {
    std::array<std::uint8_t, 176> w{};
    for (std::size_t i = 0; i < 16; ++i)
        w[160 + i] = last_round_key[i];
    // w[i-4] = w[i] ^ f(w[i-1]), walking down from word 43.
    for (std::size_t i = 43; i >= 4; --i) {
        std::array<std::uint8_t, 4> t = {w[4 * i - 4], w[4 * i - 3],
                                         w[4 * i - 2], w[4 * i - 1]};
        if (i % 4 == 0) {
            t = {static_cast<std::uint8_t>(kSbox[t[1]] ^ kRcon[i / 4]),
                 kSbox[t[2]], kSbox[t[3]], kSbox[t[0]]};
        }
        for (std::size_t b = 0; b < 4; ++b)
            w[4 * (i - 4) + b] = w[4 * i + b] ^ t[b];
    }
    Block key;
    for (std::size_t i = 0; i < 16; ++i)
        key[i] = w[i];
    return key;
}

Block encrypt_block(const Block &key, const Block &plaintext) {
    return encrypt_block(expand_key(key), plaintext);
}

Block encrypt_block(const KeySchedule &schedule, const Block &plaintext) {
    return final_round(schedule, run_nine_rounds(schedule, plaintext));
}

Block decrypt_block(const KeySchedule &schedule, const Block &ciphertext) {
    Block s = ciphertext;
    add_round_key(s, schedule.round_keys[10]);
    inv_shift_rows(s);
    inv_sub_bytes(s);
    for (std::size_t round = 9; round >= 1; --round) {
        add_round_key(s, schedule.round_keys[round]);
        inv_mix_columns(s);
        inv_shift_rows(s);
        inv_sub_bytes(s);
    }
    add_round_key(s, schedule.round_keys[0]);
    return s;
}

Block LastRoundStates::toggles() const {
    Block t;
    for (std::size_t i = 0; i < 16; ++i)
        t[i] = round9_state[i] ^ ciphertext[i];
    return t;
}

LastRoundStates last_round_states(const Block &key, const Block &plaintext) {
    return last_round_states(expand_key(key), plaintext);
}

LastRoundStates last_round_states(const KeySchedule &schedule,
                                  const Block &plaintext) {
    LastRoundStates out;
    out.round9_state = run_nine_rounds(schedule, plaintext);
    out.ciphertext = final_round(schedule, out.round9_state);
    return out;
}

std::size_t key_position_for(std::size_t byte_index) {
    check_byte_index(byte_index);
    return kShiftRows.forward[byte_index];
}

std::uint8_t last_round_transitions(const Block &ct, std::uint8_t key_guess,
                             std::size_t byte_index) {
    check_byte_index(byte_index);
    const std::uint8_t shifted = ct[kShiftRows.forward[byte_index]];
    return kInvSbox[shifted ^ key_guess] ^ ct[byte_index];
}

int hypothetical_power(const Block &ct, std::uint8_t key_guess,
                       std::size_t byte_index) {
    return hamming_weight(last_round_transitions(ct, key_guess, byte_index));
}

std::uint8_t correct_guess(const Block &key, std::size_t byte_index) {
    return expand_key(key).last_round_key()[key_position_for(byte_index)];
}

} // namespace lrcpa
