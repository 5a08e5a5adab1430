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

#include "lrcpa/hex.hpp"

#include "lrcpa/aes.hpp"
#include "lrcpa/error.hpp"

namespace lrcpa {

namespace {

int nibble(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

} // namespace

std::array<std::uint8_t, 16> parse_hex16(std::string_view hex) {
    if (hex.size() != 32)
        throw ArgumentError("expected 32 hex digits, got " +
                            std::to_string(hex.size()) + " characters");
    std::array<std::uint8_t, 16> out{};
    for (std::size_t i = 0; i < 16; ++i) {
        const int hi = nibble(hex[2 * i]);
        const int lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            const std::size_t at = hi < 0 ? 2 * i : 2 * i + 1;
            throw ArgumentError("invalid hex digit '" +
                                std::string(1, hex[at]) + "' at offset " +
                                std::to_string(at));
        }
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * bytes.size());
    for (const std::uint8_t b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

template <typename Tag>
ByteBlock<Tag> ByteBlock<Tag>::from_hex(std::string_view hex) {
    return ByteBlock<Tag>(parse_hex16(hex));
}

template <typename Tag> std::string ByteBlock<Tag>::to_hex() const {
    return lrcpa::to_hex(bytes);
}

template struct ByteBlock<BlockTag>;
template struct ByteBlock<RoundKeyTag>;

} // namespace lrcpa
