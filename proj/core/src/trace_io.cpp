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

#include "lrcpa/trace_io.hpp"

#include "lrcpa/csv.hpp"
#include "lrcpa/error.hpp"
#include "lrcpa/hex.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

namespace lrcpa {

const char *to_string(SctrCheck check) noexcept {
    switch (check) {
    case SctrCheck::Magic:
        return "magic";
    case SctrCheck::Version:
        return "version";
    case SctrCheck::Flags:
        return "flags";
    case SctrCheck::Truncated:
        return "truncation";
    case SctrCheck::SizeMismatch:
        return "size";
    }
    return "unknown";
}

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'C', 'T', 'R'};

class Writer {
  public:
    explicit Writer(std::vector<std::byte> &out) : out_(out) {}

    void u16(std::uint16_t v) { le(v, 2); }
    void u32(std::uint32_t v) { le(v, 4); }
    void u64(std::uint64_t v) { le(v, 8); }
    void f32(float v) { le(std::bit_cast<std::uint32_t>(v), 4); }
    template <typename Tag> void block(const ByteBlock<Tag> &b) {
        for (const std::uint8_t x : b.bytes)
            out_.push_back(static_cast<std::byte>(x));
    }
    void raw(const char *p, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i)
            out_.push_back(static_cast<std::byte>(p[i]));
    }

  private:
    void le(std::uint64_t v, int bytes) {
        for (int i = 0; i < bytes; ++i, v >>= 8)
            out_.push_back(static_cast<std::byte>(v & 0xff));
    }
    std::vector<std::byte> &out_;
};

class Reader {
  public:
    explicit Reader(std::span<const std::byte> in) : in_(in) {}

    std::uint64_t le(int bytes) {
        std::uint64_t v = 0;
        for (int i = 0; i < bytes; ++i)
            v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
        pos_ += static_cast<std::size_t>(bytes);
        return v;
    }
    float f32() { return std::bit_cast<float>(static_cast<std::uint32_t>(le(4))); }
    Block block() {
        Block b;
        for (std::size_t i = 0; i < 16; ++i)
            b[i] = static_cast<std::uint8_t>(in_[pos_ + i]);
        pos_ += 16;
        return b;
    }

  private:
    std::span<const std::byte> in_;
    std::size_t pos_ = 0;
};

std::vector<std::byte> read_all(std::istream &in) {
    std::vector<char> buf((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
    std::vector<std::byte> out(buf.size());
    if (!buf.empty())
        std::memcpy(out.data(), buf.data(), buf.size());
    return out;
}

std::vector<std::byte> read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path.string(), "cannot open for reading");
    auto data = read_all(in);
    if (in.bad())
        throw IoError(path.string(), "read failed");
    return data;
}

void write_file(const std::filesystem::path &path,
                std::span<const std::byte> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(path.string(), "cannot open for writing");
    out.write(reinterpret_cast<const char *>(data.data()),
              static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out)
        throw IoError(path.string(), "write failed");
}

} // namespace

std::uint64_t sctr_file_size(std::uint64_t n_traces,
                             std::uint64_t samples_per_trace, bool has_key) {
    return kSctrHeaderSize + (has_key ? 16 : 0) +
           n_traces * (32 + 4 * samples_per_trace);
}

std::vector<std::byte> encode_sctr(const TraceSet &traces) {
    if (traces.size() > std::numeric_limits<std::uint32_t>::max() ||
        traces.samples_per_trace() > std::numeric_limits<std::uint32_t>::max())
        throw ArgumentError("trace set too large for SCTR");

    std::vector<std::byte> out;
    out.reserve(static_cast<std::size_t>(sctr_file_size(
        traces.size(), traces.samples_per_trace(), traces.true_key().has_value())));
    Writer w(out);
    w.raw(kMagic.data(), kMagic.size());
    w.u16(kSctrVersion);
    std::uint16_t flags = 0;
    if (traces.true_key())
        flags |= kSctrFlagKey;
    if (traces.seed())
        flags |= kSctrFlagSeed;
    w.u16(flags);
    w.u32(static_cast<std::uint32_t>(traces.size()));
    w.u32(static_cast<std::uint32_t>(traces.samples_per_trace()));
    w.u64(traces.seed().value_or(0));
    if (traces.true_key())
        w.block(*traces.true_key());
    for (std::size_t i = 0; i < traces.size(); ++i) {
        w.block(traces.plaintext(i));
        w.block(traces.ciphertext(i));
        for (const float s : traces.trace(i))
            w.f32(s);
    }
    return out;
}

TraceSet decode_sctr(std::span<const std::byte> data) {
    if (data.size() < kSctrHeaderSize)
        throw FormatError(SctrCheck::Truncated,
                          "file holds " + std::to_string(data.size()) +
                              " bytes, header needs " +
                              std::to_string(kSctrHeaderSize));
    if (std::memcmp(data.data(), kMagic.data(), kMagic.size()) != 0)
        throw FormatError(SctrCheck::Magic, "expected \"SCTR\"");

    Reader r(data.subspan(4));
    const auto version = static_cast<std::uint16_t>(r.le(2));
    if (version != kSctrVersion)
        throw FormatError(SctrCheck::Version,
                          "unsupported version " + std::to_string(version));
    const auto flags = static_cast<std::uint16_t>(r.le(2));
    if ((flags & ~(kSctrFlagKey | kSctrFlagSeed)) != 0)
        throw FormatError(SctrCheck::Flags,
                          "unknown flag bits " + std::to_string(flags));
    const std::uint64_t n = r.le(4);
    const std::uint64_t spt = r.le(4);
    const std::uint64_t seed = r.le(8);
    const bool has_key = flags & kSctrFlagKey;

    if (spt == 0)
        throw FormatError(SctrCheck::SizeMismatch, "samples_per_trace is 0");
    if (n != 0 && 32 + 4 * spt > (std::numeric_limits<std::uint64_t>::max() -
                                   kSctrHeaderSize - 16) / n)
        throw FormatError(SctrCheck::Truncated,
                          "declared size exceeds any possible file");
    const std::uint64_t expected = sctr_file_size(n, spt, has_key);
    if (data.size() < expected)
        throw FormatError(SctrCheck::Truncated,
                          "header declares " + std::to_string(expected) +
                              " bytes, file holds " +
                              std::to_string(data.size()));
    if (data.size() > expected)
        throw FormatError(SctrCheck::SizeMismatch,
                          "header declares " + std::to_string(expected) +
                              " bytes, file holds " +
                              std::to_string(data.size()));

    TraceSet traces(static_cast<std::size_t>(n), static_cast<std::size_t>(spt));
    Reader body(data.subspan(kSctrHeaderSize));
    if (has_key)
        traces.set_true_key(body.block());
    if (flags & kSctrFlagSeed)
        traces.set_seed(seed);
    for (std::size_t i = 0; i < n; ++i) {
        traces.plaintext(i) = body.block();
        traces.ciphertext(i) = body.block();
        for (float &s : traces.trace(i))
            s = body.f32();
    }
    return traces;
}

void write_sctr(const TraceSet &traces, const std::filesystem::path &path) {
    write_file(path, encode_sctr(traces));
}

void write_sctr(const TraceSet &traces, std::ostream &out) {
    const auto bytes = encode_sctr(traces);
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

TraceSet read_sctr(const std::filesystem::path &path) {
    return decode_sctr(read_file(path));
}

TraceSet read_sctr(std::istream &in) { return decode_sctr(read_all(in)); }

TraceSet import_raw(const std::filesystem::path &samples_file,
                    const std::filesystem::path &meta_csv,
                    std::size_t samples_per_trace) {
    if (samples_per_trace == 0)
        throw ArgumentError("samples_per_trace must be >= 1");
    const auto raw = read_file(samples_file);
    const std::size_t row_bytes = 4 * samples_per_trace;
    const std::size_t raw_rows = raw.size() / row_bytes;
    if (raw.size() % row_bytes != 0)
        throw ImportError(raw_rows + 1,
                          "samples file ends with a partial trace row (" +
                              std::to_string(raw.size() % row_bytes) +
                              " of " + std::to_string(row_bytes) + " bytes)");

    const CsvTable meta = read_csv(meta_csv);
    std::size_t pt_col = 0, ct_col = 0;
    try {
        pt_col = meta.column("plaintext_hex");
        ct_col = meta.column("ciphertext_hex");
    } catch (const ArgumentError &e) {
        throw ImportError(0, e.what());
    }
    const std::size_t meta_rows = meta.rows.size();
    if (meta_rows > raw_rows)
        throw ImportError(raw_rows + 1,
                          "metadata row has no trace (samples file holds " +
                              std::to_string(raw_rows) + " traces, CSV " +
                              std::to_string(meta_rows) + " rows)");
    if (raw_rows > meta_rows)
        throw ImportError(meta_rows + 1,
                          "trace has no metadata row (samples file holds " +
                              std::to_string(raw_rows) + " traces, CSV " +
                              std::to_string(meta_rows) + " rows)");
    if (raw_rows == 0)
        throw ImportError(1, "no traces");

    TraceSet traces(raw_rows, samples_per_trace);
    Reader r(raw);
    for (std::size_t i = 0; i < raw_rows; ++i) {
        try {
            traces.plaintext(i) = Block::from_hex(meta.rows[i][pt_col]);
            traces.ciphertext(i) = Block::from_hex(meta.rows[i][ct_col]);
        } catch (const ArgumentError &e) {
            throw ImportError(i + 1, e.what());
        }
        for (float &s : traces.trace(i))
            s = r.f32();
    }
    return traces;
}

void export_raw(const TraceSet &traces,
                const std::filesystem::path &samples_file,
                const std::filesystem::path &meta_csv) {
    std::vector<std::byte> raw;
    raw.reserve(traces.samples().size() * 4);
    Writer w(raw);
    for (const float s : traces.samples())
        w.f32(s);
    write_file(samples_file, raw);

    std::string csv = "plaintext_hex,ciphertext_hex\n";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        csv += traces.plaintext(i).to_hex();
        csv += ',';
        csv += traces.ciphertext(i).to_hex();
        csv += '\n';
    }
    write_file(meta_csv, std::as_bytes(std::span(csv.data(), csv.size())));
}

} // namespace lrcpa
