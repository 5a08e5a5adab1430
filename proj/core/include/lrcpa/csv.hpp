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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lrcpa {

/// Comma-separated table with a header line. No quoting: every field this
/// project writes is a number or hex string.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by header name; throws ArgumentError if missing.
    std::size_t column(std::string_view name) const;
};

/// Throws IoError if unreadable and ImportError (with the 1-based data row)
/// if a row's field count differs from the header's. Blank lines and CR
/// line endings are tolerated.
CsvTable read_csv(const std::filesystem::path &path);
CsvTable parse_csv(std::string_view text);

/// Shortest round-trippable decimal form of a double.
std::string format_double(double v);

} // namespace lrcpa
