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

#define OPENSSL_SUPPRESS_DEPRECATED
#include "support/oracles.hpp"

#include <openssl/aes.h>
#include <openssl/evp.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace lrcpa::oracle {

Block openssl_encrypt(const Block &key, const Block &plaintext) {
    std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(
        EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
    if (!ctx ||
        EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ecb(), nullptr,
                           key.bytes.data(), nullptr) != 1)
        throw std::runtime_error("EVP init failed");
    EVP_CIPHER_CTX_set_padding(ctx.get(), 0);
    Block out;
    int len = 0;
    if (EVP_EncryptUpdate(ctx.get(), out.bytes.data(), &len,
                          plaintext.bytes.data(), 16) != 1 ||
        len != 16)
        throw std::runtime_error("EVP encrypt failed");
    return out;
}

std::array<RoundKey, 11> openssl_round_keys(const Block &key) {
    AES_KEY ks;
    if (AES_set_encrypt_key(key.bytes.data(), 128, &ks) != 0)
        throw std::runtime_error("AES_set_encrypt_key failed");
    // rd_key is either big-endian words (portable C code) or the raw byte
    // schedule (assembler builds); round 0 equals the key in both layouts.
    std::array<RoundKey, 11> words, raw;
    for (std::size_t r = 0; r < 11; ++r)
        for (std::size_t i = 0; i < 16; ++i) {
            const std::uint32_t word = ks.rd_key[4 * r + i / 4];
            words[r][i] = static_cast<std::uint8_t>(word >> (24 - 8 * (i % 4)));
            raw[r][i] = reinterpret_cast<const std::uint8_t *>(ks.rd_key)[16 * r + i];
        }
    const bool raw_layout =
        std::memcmp(raw[0].bytes.data(), key.bytes.data(), 16) == 0;
    if (!raw_layout && std::memcmp(words[0].bytes.data(), key.bytes.data(), 16) != 0)
        throw std::runtime_error("unrecognised AES_KEY layout");
    return raw_layout ? raw : words;
}

double two_pass_pearson(std::span<const double> xs, std::span<const double> ys) {
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    long double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const long double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0 || syy == 0)
        return 0.0;
    return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

Line least_squares(std::span<const double> xs, std::span<const double> ys) {
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    long double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const long double slope = sxy / sxx;
    return {static_cast<double>(slope), static_cast<double>(my - slope * mx)};
}

int count_bits(std::uint8_t v) {
    int n = 0;
    for (int b = 0; b < 8; ++b)
        n += (v >> b) & 1;
    return n;
}

Block random_block(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> byte(0, 255);
    Block b;
    for (auto &x : b.bytes)
        x = static_cast<std::uint8_t>(byte(rng));
    return b;
}

} // namespace lrcpa::oracle
