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
#include <stdexcept>
#include <string>

namespace lrcpa {

/// Raised when a caller passes an out-of-range index, mismatched lengths or
/// an otherwise invalid argument.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation needs more data than it was given (e.g. a line
/// fit over fewer than two HD classes).
class InsufficientDataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// File system failure. The message always carries the offending path.
class IoError : public std::runtime_error {
  public:
    IoError(const std::string &path, const std::string &what)
        : std::runtime_error(path + ": " + what), path_(path) {}

    const std::string &path() const noexcept { return path_; }

  private:
    std::string path_;
};

/// Structural checks performed when reading an SCTR file.
enum class SctrCheck { Magic, Version, Flags, Truncated, SizeMismatch };

const char *to_string(SctrCheck check) noexcept;

/// A trace file failed one of the SCTR structural checks.
class FormatError : public std::runtime_error {
  public:
    FormatError(SctrCheck check, const std::string &what)
        : std::runtime_error(std::string("sctr ") + to_string(check) +
                             " check failed: " + what),
          check_(check) {}

    SctrCheck check() const noexcept { return check_; }

  private:
    SctrCheck check_;
};

/// Raw sample / CSV metadata import failure. row() is the 1-based data row
/// (header excluded) at which the problem was detected.
class ImportError : public std::runtime_error {
  public:
    ImportError(std::size_t row, const std::string &what)
        : std::runtime_error("import error at row " + std::to_string(row) +
                             ": " + what),
          row_(row) {}

    std::size_t row() const noexcept { return row_; }

  private:
    std::size_t row_;
};

} // namespace lrcpa
