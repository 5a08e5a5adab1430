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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace lrcpa {

// SCTR layout, all integers little-endian, no padding:
//
//   offset  size  field
//        0     4  magic "SCTR"
//        4     2  version (1)
//        6     2  flags: bit 0 true key present, bit 1 seed present
//        8     4  n_traces
//       12     4  samples_per_trace
//       16     8  seed (0 when absent)
//       24    16  true key (only when flags bit 0 is set)
//        …        per trace: 16-byte plaintext, 16-byte ciphertext,
//                 samples_per_trace IEEE-754 binary32 samples

inline constexpr std::size_t kSctrHeaderSize = 24;
inline constexpr std::uint16_t kSctrVersion = 1;
inline constexpr std::uint16_t kSctrFlagKey = 0x1;
inline constexpr std::uint16_t kSctrFlagSeed = 0x2;

/// Exact file size of a trace set with the given shape.
std::uint64_t sctr_file_size(std::uint64_t n_traces,
                             std::uint64_t samples_per_trace, bool has_key);

std::vector<std::byte> encode_sctr(const TraceSet &traces);
/// Throws FormatError naming the failed check.
TraceSet decode_sctr(std::span<const std::byte> data);

/// Throws IoError (with path) on I/O failure.
void write_sctr(const TraceSet &traces, const std::filesystem::path &path);
void write_sctr(const TraceSet &traces, std::ostream &out);

/// Throws IoError on I/O failure and FormatError on a malformed file.
TraceSet read_sctr(const std::filesystem::path &path);
TraceSet read_sctr(std::istream &in);

/// Imports externally captured traces: `samples_file` is a header-less
/// matrix of little-endian binary32 samples, one row of samples_per_trace
/// values per trace; `meta_csv` has plaintext_hex and ciphertext_hex
/// columns, one row per trace in the same order. Any row-count mismatch,
/// partial row or malformed hex is an ImportError carrying the row; a
/// missing column is an ImportError at row 0 (the header).
TraceSet import_raw(const std::filesystem::path &samples_file,
                    const std::filesystem::path &meta_csv,
                    std::size_t samples_per_trace);

/// Inverse of import_raw. The true key and seed are not exported.
void export_raw(const TraceSet &traces,
                const std::filesystem::path &samples_file,
                const std::filesystem::path &meta_csv);

} // namespace lrcpa
