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

#include "lrcpa/csv.hpp"

#include "lrcpa/error.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace lrcpa {

namespace {

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            return out;
        }
        out.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw ArgumentError("CSV has no column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    bool have_header = false;
    std::size_t row = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;
        if (!have_header) {
            table.header = split(line);
            have_header = true;
            continue;
        }
        ++row;
        auto fields = split(line);
        if (fields.size() != table.header.size())
            throw ImportError(row, "expected " +
                                       std::to_string(table.header.size()) +
                                       " fields, found " +
                                       std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
    }
    if (!have_header)
        throw ImportError(0, "CSV is empty (no header line)");
    return table;
}

CsvTable read_csv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path.string(), "cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError(path.string(), "read failed");
    return parse_csv(ss.str());
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

} // namespace lrcpa
