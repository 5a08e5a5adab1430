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
#include "lrcpa/cpa.hpp"
#include "lrcpa/hd_analysis.hpp"
#include "lrcpa/leakage.hpp"
#include "lrcpa/trace_set.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lrcpa {

/// Offset augmentation as written in a config: the offset is either given
/// directly or derived from a ring-oscillator bank (n_ro, alpha,
/// pulse_fraction).
struct AugmentationSpec {
    std::size_t byte_index = 0;
    std::size_t bit_index = 2;
    std::optional<double> offset;
    std::optional<std::size_t> n_ro;
    double alpha = 0.0;
    double pulse_fraction = 1.0;
    Trigger trigger = Trigger::OnStatic;

    double resolved_offset() const;
};

/// Everything needed to rerun an experiment. Text form is one
/// `name = value` per line, `#` starts a comment:
///
///   key                 32 hex digits (cipher key)
///   n_traces            >= 1
///   noise_sigma         >= 0
///   bit_weight          >= 0, weight of every register bit
///   baseline            real
///   samples_per_trace   >= 1
///   poi_index           < samples_per_trace
///   seed                64-bit unsigned
///   byte_index          0..15, attacked register byte
///   checkpoint_stride   >= 1
///   workers             0 = all hardware threads
///   augment_byte        0..15   (any augment_*/offset/n_ro key enables
///   augment_bit         0..7     the augmentation)
///   offset              >= 0
///   n_ro, alpha, pulse_fraction   ring-oscillator offset, instead of offset
///   trigger             on_static | on_toggle
///   output, report, evolution_csv   output paths
///   meta.<name>         free-text setup notes, carried through unchanged
struct ExperimentConfig {
    Block key = Block::from_hex("2b7e151628aed2a6abf7158809cf4f3c");
    std::size_t n_traces = 5000;
    double noise_sigma = 0.0;
    double bit_weight = 1.0;
    double baseline = 0.0;
    std::size_t samples_per_trace = 1;
    std::size_t poi_index = 0;
    std::uint64_t seed = 1;
    std::size_t byte_index = 0;
    std::size_t checkpoint_stride = 100;
    unsigned workers = 0;
    std::optional<AugmentationSpec> augmentation;
    std::string output;
    std::string report;
    std::string evolution_csv;
    std::map<std::string, std::string> metadata;

    /// Throws ArgumentError on any out-of-range value.
    void validate() const;
    LeakageConfig leakage() const;
    AttackOptions attack_options() const;
    /// Resolved, re-parseable `name = value` text.
    std::string to_text() const;
};

/// Sets one named field from its text form. Throws ArgumentError naming
/// the setting on unknown names or unparsable values.
void apply_setting(ExperimentConfig &config, std::string_view name,
                   std::string_view value);
ExperimentConfig parse_config(std::string_view text,
                              ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path &path,
                             ExperimentConfig base = {});

TraceSet run_simulate(const ExperimentConfig &config);

inline constexpr int kReportSchemaVersion = 1;

/// JSON attack report (schema_version 1) with the ranking and the full
/// evolution curves of all 256 guesses.
std::string attack_report_json(const AttackOutcome &outcome,
                               const TraceSet &traces);

/// checkpoint,guess,r rows, checkpoint-major.
void write_evolution_csv(const CorrelationEvolution &evolution,
                         std::ostream &out);

struct KeyRecovery {
    std::vector<AttackResult> bytes; ///< indexed by register byte
    RoundKey last_round_key;         ///< wire order
    Block cipher_key;                ///< last_round_key run back through the schedule
};

KeyRecovery recover_key(const TraceSet &traces, const AttackOptions &options);
std::string key_recovery_json(const KeyRecovery &recovery,
                              const TraceSet &traces);

/// guess,hd,mean,count rows; empty classes omitted.
void write_hd_classes_csv(std::span<const HdClassSummary> summaries,
                          std::ostream &out);
/// guess,slope,intercept,r,n_classes rows.
void write_hd_fits_csv(std::span<const GuessFit> fits, std::ostream &out);

struct SweepRow {
    std::size_t bit = 0;
    double offset = 0.0;
    std::optional<std::size_t> disclosure;
    std::size_t wrong_horse_count = 0;
    std::size_t correct_rank = 0;
};

/// One campaign per (bit, offset), all with the config's seed: the
/// augmentation sits on the attacked byte (or the config's augment_byte)
/// and offset 0 reproduces the unaugmented campaign exactly.
std::vector<SweepRow> run_sweep(const ExperimentConfig &config,
                                std::span<const double> offsets,
                                std::span<const std::size_t> bits);

/// bit,offset,disclosure,wrong_horse_count,correct_rank; an absent
/// disclosure is written as an empty field.
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream &out);

} // namespace lrcpa
