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

#include "lrcpa/experiment.hpp"

#include "lrcpa/csv.hpp"
#include "lrcpa/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace lrcpa {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view name, std::string_view value,
                            std::string_view expected) {
    throw ArgumentError("setting '" + std::string(name) + "': cannot parse '" +
                        std::string(value) + "' as " + std::string(expected));
}

template <typename T> T parse_unsigned(std::string_view name, std::string_view v) {
    T out{};
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size())
        bad_value(name, v, "an unsigned integer");
    return out;
}

double parse_real(std::string_view name, std::string_view v) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size() ||
        !std::isfinite(out))
        bad_value(name, v, "a finite real number");
    return out;
}

AugmentationSpec &augmentation_of(ExperimentConfig &c) {
    if (!c.augmentation)
        c.augmentation.emplace();
    return *c.augmentation;
}

} // namespace

double AugmentationSpec::resolved_offset() const {
    if (offset && n_ro)
        throw ArgumentError("augmentation: give either offset or n_ro, not both");
    if (offset)
        return *offset;
    if (n_ro)
        return ro_offset_model(*n_ro, pulse_fraction, alpha);
    throw ArgumentError("augmentation: needs offset or n_ro");
}

void ExperimentConfig::validate() const {
    if (n_traces == 0)
        throw ArgumentError("n_traces must be >= 1");
    if (byte_index > 15)
        throw ArgumentError("byte_index must be in 0..15");
    if (checkpoint_stride == 0)
        throw ArgumentError("checkpoint_stride must be >= 1");
    leakage().validate();
}

LeakageConfig ExperimentConfig::leakage() const {
    LeakageConfig c = LeakageConfig::equal_weights(bit_weight);
    c.baseline = baseline;
    c.noise_sigma = noise_sigma;
    c.samples_per_trace = samples_per_trace;
    c.poi_index = poi_index;
    if (augmentation) {
        Augmentation a;
        a.byte_index = augmentation->byte_index;
        a.bit_index = augmentation->bit_index;
        a.offset = augmentation->resolved_offset();
        a.trigger = augmentation->trigger;
        c.augmentation = a;
    }
    return c;
}

AttackOptions ExperimentConfig::attack_options() const {
    AttackOptions o;
    o.checkpoint_stride = checkpoint_stride;
    o.workers = workers;
    return o;
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream o;
    o << "key = " << key.to_hex() << '\n'
      << "n_traces = " << n_traces << '\n'
      << "noise_sigma = " << format_double(noise_sigma) << '\n'
      << "bit_weight = " << format_double(bit_weight) << '\n'
      << "baseline = " << format_double(baseline) << '\n'
      << "samples_per_trace = " << samples_per_trace << '\n'
      << "poi_index = " << poi_index << '\n'
      << "seed = " << seed << '\n'
      << "byte_index = " << byte_index << '\n'
      << "checkpoint_stride = " << checkpoint_stride << '\n'
      << "workers = " << workers << '\n';
    if (augmentation) {
        const AugmentationSpec &a = *augmentation;
        o << "augment_byte = " << a.byte_index << '\n'
          << "augment_bit = " << a.bit_index << '\n';
        if (a.n_ro) {
            o << "n_ro = " << *a.n_ro << '\n'
              << "alpha = " << format_double(a.alpha) << '\n'
              << "pulse_fraction = " << format_double(a.pulse_fraction) << '\n'
              << "# resolved offset = " << format_double(a.resolved_offset())
              << '\n';
        } else {
            o << "offset = " << format_double(a.resolved_offset()) << '\n';
        }
        o << "trigger = " << to_string(a.trigger) << '\n';
    }
    if (!output.empty())
        o << "output = " << output << '\n';
    if (!report.empty())
        o << "report = " << report << '\n';
    if (!evolution_csv.empty())
        o << "evolution_csv = " << evolution_csv << '\n';
    for (const auto &[k, v] : metadata)
        o << "meta." << k << " = " << v << '\n';
    return o.str();
}

void apply_setting(ExperimentConfig &c, std::string_view name,
                   std::string_view raw) {
    const std::string_view v = trim(raw);
    if (name == "key") {
        try {
            c.key = Block::from_hex(v);
        } catch (const ArgumentError &e) {
            throw ArgumentError("setting 'key': " + std::string(e.what()));
        }
    } else if (name == "n_traces") {
        c.n_traces = parse_unsigned<std::size_t>(name, v);
    } else if (name == "noise_sigma") {
        c.noise_sigma = parse_real(name, v);
    } else if (name == "bit_weight") {
        c.bit_weight = parse_real(name, v);
    } else if (name == "baseline") {
        c.baseline = parse_real(name, v);
    } else if (name == "samples_per_trace") {
        c.samples_per_trace = parse_unsigned<std::size_t>(name, v);
    } else if (name == "poi_index") {
        c.poi_index = parse_unsigned<std::size_t>(name, v);
    } else if (name == "seed") {
        c.seed = parse_unsigned<std::uint64_t>(name, v);
    } else if (name == "byte_index") {
        c.byte_index = parse_unsigned<std::size_t>(name, v);
    } else if (name == "checkpoint_stride") {
        c.checkpoint_stride = parse_unsigned<std::size_t>(name, v);
    } else if (name == "workers") {
        c.workers = parse_unsigned<unsigned>(name, v);
    } else if (name == "augment_byte") {
        augmentation_of(c).byte_index = parse_unsigned<std::size_t>(name, v);
    } else if (name == "augment_bit") {
        augmentation_of(c).bit_index = parse_unsigned<std::size_t>(name, v);
    } else if (name == "offset") {
        augmentation_of(c).offset = parse_real(name, v);
    } else if (name == "n_ro") {
        augmentation_of(c).n_ro = parse_unsigned<std::size_t>(name, v);
    } else if (name == "alpha") {
        augmentation_of(c).alpha = parse_real(name, v);
    } else if (name == "pulse_fraction") {
        augmentation_of(c).pulse_fraction = parse_real(name, v);
    } else if (name == "trigger") {
        augmentation_of(c).trigger = parse_trigger(v);
    } else if (name == "output") {
        c.output = std::string(v);
    } else if (name == "report") {
        c.report = std::string(v);
    } else if (name == "evolution_csv") {
        c.evolution_csv = std::string(v);
    } else if (name.starts_with("meta.") && name.size() > 5) {
        c.metadata[std::string(name.substr(5))] = std::string(v);
    } else {
        throw ArgumentError("unknown setting '" + std::string(name) + "'");
    }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ArgumentError("config line " + std::to_string(line_no) +
                                ": expected 'name = value'");
        try {
            apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ArgumentError &e) {
            throw ArgumentError("config line " + std::to_string(line_no) +
                                ": " + e.what());
        }
    }
    return base;
}

ExperimentConfig load_config(const std::filesystem::path &path,
                             ExperimentConfig base) {
    std::ifstream in(path);
    if (!in)
        throw IoError(path.string(), "cannot open config");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

TraceSet run_simulate(const ExperimentConfig &config) {
    config.validate();
    return simulate_campaign(config.key, config.n_traces, config.leakage(),
                             config.seed, config.workers);
}

namespace {

nlohmann::json optional_json(const auto &v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json byte_summary(const AttackResult &r) {
    nlohmann::json j;
    j["byte_index"] = r.byte_index;
    j["key_position"] = key_position_for(r.byte_index);
    j["best_guess"] = r.best_guess;
    j["best_score"] = r.scores[r.best_guess];
    j["correct_guess"] = optional_json(r.correct_guess);
    j["correct_rank"] =
        r.correct_guess ? nlohmann::json(rank_of_guess(r, *r.correct_guess))
                        : nlohmann::json(nullptr);
    j["disclosure"] = optional_json(r.disclosure);
    return j;
}

} // namespace

std::string attack_report_json(const AttackOutcome &outcome,
                               const TraceSet &traces) {
    const AttackResult &r = outcome.result;
    nlohmann::json j = byte_summary(r);
    j["schema_version"] = kReportSchemaVersion;
    j["n_traces"] = traces.size();
    j["samples_per_trace"] = traces.samples_per_trace();
    nlohmann::json ranking = nlohmann::json::array();
    for (const std::uint8_t g : r.ranking)
        ranking.push_back({{"guess", g}, {"score", r.scores[g]}});
    j["ranking"] = std::move(ranking);

    const CorrelationEvolution &evo = outcome.evolution;
    nlohmann::json curves = nlohmann::json::array();
    for (unsigned g = 0; g < 256; ++g) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t cp = 0; cp < evo.checkpoints.size(); ++cp)
            row.push_back(evo.value(g, cp));
        curves.push_back(std::move(row));
    }
    j["evolution"] = {{"checkpoints", evo.checkpoints}, {"r", std::move(curves)}};
    return j.dump(2);
}

void write_evolution_csv(const CorrelationEvolution &evolution,
                         std::ostream &out) {
    out << "checkpoint,guess,r\n";
    for (std::size_t cp = 0; cp < evolution.checkpoints.size(); ++cp)
        for (unsigned g = 0; g < 256; ++g)
            out << evolution.checkpoints[cp] << ',' << g << ','
                << format_double(evolution.value(g, cp)) << '\n';
}

KeyRecovery recover_key(const TraceSet &traces, const AttackOptions &options) {
    KeyRecovery rec;
    for (std::size_t j = 0; j < 16; ++j) {
        AttackResult r = cpa_attack(traces, j, options).result;
        rec.last_round_key[key_position_for(j)] = r.best_guess;
        rec.bytes.push_back(r);
    }
    rec.cipher_key = invert_key_schedule(rec.last_round_key);
    return rec;
}

std::string key_recovery_json(const KeyRecovery &recovery,
                              const TraceSet &traces) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["n_traces"] = traces.size();
    j["samples_per_trace"] = traces.samples_per_trace();
    j["last_round_key"] = recovery.last_round_key.to_hex();
    j["cipher_key"] = recovery.cipher_key.to_hex();
    if (traces.true_key()) {
        j["true_cipher_key"] = traces.true_key()->to_hex();
        j["true_last_round_key"] =
            expand_key(*traces.true_key()).last_round_key().to_hex();
    }
    nlohmann::json bytes = nlohmann::json::array();
    for (const AttackResult &r : recovery.bytes)
        bytes.push_back(byte_summary(r));
    j["bytes"] = std::move(bytes);
    return j.dump(2);
}

void write_hd_classes_csv(std::span<const HdClassSummary> summaries,
                          std::ostream &out) {
    out << "guess,hd,mean,count\n";
    for (const HdClassSummary &s : summaries)
        for (std::size_t h = 0; h < 9; ++h)
            if (s.classes[h].present())
                out << unsigned{s.guess} << ',' << h << ','
                    << format_double(s.classes[h].mean) << ','
                    << s.classes[h].count << '\n';
}

void write_hd_fits_csv(std::span<const GuessFit> fits, std::ostream &out) {
    out << "guess,slope,intercept,r,n_classes\n";
    for (const GuessFit &f : fits)
        out << unsigned{f.guess} << ',' << format_double(f.fit.slope) << ','
            << format_double(f.fit.intercept) << ',' << format_double(f.fit.r)
            << ',' << f.fit.n_classes_used << '\n';
}

std::vector<SweepRow> run_sweep(const ExperimentConfig &config,
                                std::span<const double> offsets,
                                std::span<const std::size_t> bits) {
    config.validate();
    const std::size_t aug_byte =
        config.augmentation ? config.augmentation->byte_index : config.byte_index;
    const Trigger trigger =
        config.augmentation ? config.augmentation->trigger : Trigger::OnStatic;
    const std::uint8_t correct = correct_guess(config.key, config.byte_index);

    std::vector<SweepRow> rows;
    for (const std::size_t bit : bits) {
        for (const double offset : offsets) {
            ExperimentConfig c = config;
            c.augmentation = AugmentationSpec{};
            c.augmentation->byte_index = aug_byte;
            c.augmentation->bit_index = bit;
            c.augmentation->offset = offset;
            c.augmentation->trigger = trigger;
            const TraceSet traces = run_simulate(c);

            SweepRow row;
            row.bit = bit;
            row.offset = offset;
            const AttackOutcome out =
                cpa_attack(traces, c.byte_index, c.attack_options());
            row.disclosure = out.result.disclosure;
            row.correct_rank = rank_of_guess(out.result, correct);
            row.wrong_horse_count =
                wrong_horse_scan(traces, c.byte_index, correct, c.poi_index,
                                 c.workers)
                    .contenders.size();
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream &out) {
    out << "bit,offset,disclosure,wrong_horse_count,correct_rank\n";
    for (const SweepRow &r : rows) {
        out << r.bit << ',' << format_double(r.offset) << ',';
        if (r.disclosure)
            out << *r.disclosure;
        out << ',' << r.wrong_horse_count << ',' << r.correct_rank << '\n';
    }
}

} // namespace lrcpa
