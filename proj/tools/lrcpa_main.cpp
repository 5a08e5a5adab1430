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

// lrcpa: simulate last-round AES leakage, attack it with CPA, fit HD lines
// and sweep the offset countermeasure.

#include "lrcpa/error.hpp"
#include "lrcpa/experiment.hpp"
#include "lrcpa/hd_analysis.hpp"
#include "lrcpa/trace_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>
#include <vector>

namespace {

using namespace lrcpa;

/// Flags that mirror config-file settings. Values are kept as text and
/// routed through apply_setting so flags and config files share one parser.
struct SettingFlags {
    std::string config_path;
    std::vector<std::pair<CLI::Option *, std::string>> options;
    std::deque<std::string> values; // stable addresses for CLI11 bindings
    std::vector<std::string> meta;

    void add(CLI::App &app, const std::string &flag, std::string setting,
             const std::string &help) {
        values.emplace_back();
        options.emplace_back(app.add_option(flag, values.back(), help),
                             std::move(setting));
    }

    ExperimentConfig resolve() const {
        ExperimentConfig c;
        if (!config_path.empty())
            c = load_config(config_path);
        for (std::size_t i = 0; i < options.size(); ++i)
            if (options[i].first->count() > 0)
                apply_setting(c, options[i].second, values[i]);
        for (const std::string &m : meta) {
            const auto eq = m.find('=');
            if (eq == std::string::npos)
                throw ArgumentError("--meta expects name=value, got '" + m + "'");
            c.metadata[m.substr(0, eq)] = m.substr(eq + 1);
        }
        c.validate();
        return c;
    }
};

void add_simulation_flags(CLI::App &app, SettingFlags &f) {
    app.add_option("--config", f.config_path,
                   "Experiment config file (name = value lines)");
    f.add(app, "--key", "key", "Cipher key, 32 hex digits");
    f.add(app, "-n,--n", "n_traces", "Number of traces");
    f.add(app, "--sigma", "noise_sigma", "Gaussian noise standard deviation");
    f.add(app, "--bit-weight", "bit_weight", "Leakage per toggling register bit");
    f.add(app, "--baseline", "baseline", "Leakage with no toggles");
    f.add(app, "--samples", "samples_per_trace", "Samples per trace");
    f.add(app, "--poi", "poi_index", "Sample carrying the leakage");
    f.add(app, "--seed", "seed", "Campaign seed");
    f.add(app, "--byte", "byte_index", "Attacked register byte (0..15)");
    f.add(app, "--stride", "checkpoint_stride", "Traces between checkpoints");
    f.add(app, "--workers", "workers", "Worker threads, 0 = all");
    f.add(app, "--augment-byte", "augment_byte", "Augmented register byte");
    f.add(app, "--augment-bit", "augment_bit", "Augmented bit (0 = LSB)");
    f.add(app, "--offset", "offset", "Augmentation offset");
    f.add(app, "--n-ro", "n_ro", "Ring oscillators in the offset bank");
    f.add(app, "--alpha", "alpha", "Offset per fully-enabled ring oscillator");
    f.add(app, "--pulse", "pulse_fraction", "Fraction of the window the bank runs");
    f.add(app, "--trigger", "trigger", "on_static | on_toggle");
    app.add_option("--meta", f.meta, "Free-text setup note, name=value");
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError(path, "cannot open for writing");
    out << text;
    if (!out)
        throw IoError(path, "write failed");
}

template <typename Fn> void write_stream(const std::string &path, Fn &&fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError(path, "cannot open for writing");
    fn(out);
    if (!out)
        throw IoError(path, "write failed");
}

template <typename T>
std::vector<T> parse_list(const std::string &text, const std::string &what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        T v{};
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() ||
            res.ptr != item.data() + item.size())
            throw ArgumentError(what + ": cannot parse '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw ArgumentError(what + " list is empty");
    return out;
}

int report_error(const char *kind, const std::exception &e) {
    nlohmann::json j = {{"error", kind}, {"message", e.what()}};
    std::cerr << j.dump() << std::endl;
    return 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Last-round AES leakage simulation, CPA and offset "
                 "countermeasure analysis"};
    app.require_subcommand(1);

    // simulate
    SettingFlags sim_flags;
    std::string sim_out;
    auto *simulate = app.add_subcommand("simulate", "Simulate a trace campaign");
    add_simulation_flags(*simulate, sim_flags);
    simulate->add_option("-o,--output", sim_out, "Output SCTR file");

    // attack
    std::string attack_in, attack_report, attack_csv;
    std::size_t attack_byte = 0, attack_stride = 100;
    unsigned attack_workers = 0;
    bool attack_all = false;
    auto *attack = app.add_subcommand("attack", "CPA attack on an SCTR file");
    attack->add_option("input", attack_in, "SCTR trace file")->required();
    attack->add_option("--byte", attack_byte, "Register byte (0..15)")
        ->check(CLI::Range(0, 15));
    attack->add_option("--stride", attack_stride, "Traces between checkpoints")
        ->check(CLI::PositiveNumber);
    attack->add_option("--workers", attack_workers, "Worker threads, 0 = all");
    attack->add_option("--report", attack_report, "JSON report path (- = stdout)");
    attack->add_option("--evolution-csv", attack_csv,
                       "Correlation evolution CSV path");
    attack->add_flag("--all-bytes", attack_all,
                     "Attack all 16 bytes and recover the cipher key");

    // fit-hd
    std::string fit_in, fit_compare, fit_classes_csv, fit_fits_csv;
    std::size_t fit_byte = 0, fit_sample = 0;
    std::vector<unsigned> fit_guesses;
    bool fit_scan = false;
    auto *fit = app.add_subcommand("fit-hd", "Leakage vs HD class fits");
    fit->add_option("input", fit_in, "SCTR trace file")->required();
    fit->add_option("--byte", fit_byte, "Register byte (0..15)")
        ->check(CLI::Range(0, 15));
    fit->add_option("--guess", fit_guesses,
                    "Key guesses to fit (default: the true key byte)")
        ->check(CLI::Range(0, 255));
    fit->add_option("--sample", fit_sample, "Sample index");
    fit->add_option("--classes-csv", fit_classes_csv,
                    "guess,hd,mean,count output (default stdout)");
    fit->add_option("--fits-csv", fit_fits_csv,
                    "guess,slope,intercept,r output (default stdout)");
    fit->add_option("--compare", fit_compare,
                    "Baseline SCTR file: report the slope sign flip against it");
    fit->add_flag("--wrong-horse", fit_scan,
                  "Scan all 256 guesses for fits beating the true key");

    // sweep
    SettingFlags sweep_flags;
    std::string sweep_offsets = "0,1,2,4,8", sweep_bits = "2", sweep_out;
    auto *sweep = app.add_subcommand("sweep", "Sweep augmentation offset and bit");
    add_simulation_flags(*sweep, sweep_flags);
    sweep->add_option("--offsets", sweep_offsets, "Comma-separated offsets");
    sweep->add_option("--bits", sweep_bits, "Comma-separated bit indices");
    sweep->add_option("-o,--output", sweep_out, "Table CSV path (default stdout)");

    // convert
    std::string conv_raw, conv_meta, conv_out;
    std::size_t conv_samples = 0;
    auto *convert = app.add_subcommand("convert", "Raw float32 matrix + CSV to SCTR");
    convert->add_option("--raw", conv_raw, "Header-less float32 LE samples")
        ->required();
    convert->add_option("--meta", conv_meta,
                        "CSV with plaintext_hex,ciphertext_hex")
        ->required();
    convert->add_option("--samples", conv_samples, "Samples per trace")
        ->required()
        ->check(CLI::PositiveNumber);
    convert->add_option("-o,--output", conv_out, "Output SCTR file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            ExperimentConfig c = sim_flags.resolve();
            if (!sim_out.empty())
                c.output = sim_out;
            if (c.output.empty())
                throw ArgumentError("simulate: no output path (-o or output =)");
            std::cout << c.to_text();
            write_sctr(run_simulate(c), c.output);
        } else if (*attack) {
            const TraceSet traces = read_sctr(attack_in);
            AttackOptions opt;
            opt.checkpoint_stride = attack_stride;
            opt.workers = attack_workers;
            if (attack_all) {
                const KeyRecovery rec = recover_key(traces, opt);
                write_text(attack_report, key_recovery_json(rec, traces) + "\n");
            } else {
                const AttackOutcome out = cpa_attack(traces, attack_byte, opt);
                write_text(attack_report, attack_report_json(out, traces) + "\n");
                if (!attack_csv.empty())
                    write_stream(attack_csv, [&](std::ostream &o) {
                        write_evolution_csv(out.evolution, o);
                    });
                if (!attack_report.empty() && attack_report != "-") {
                    const AttackResult &r = out.result;
                    std::cout << "best_guess " << unsigned{r.best_guess}
                              << " disclosure ";
                    if (r.disclosure)
                        std::cout << *r.disclosure;
                    else
                        std::cout << "none";
                    std::cout << '\n';
                }
            }
        } else if (*fit) {
            const TraceSet traces = read_sctr(fit_in);
            std::optional<std::uint8_t> truth;
            if (traces.true_key())
                truth = correct_guess(*traces.true_key(), fit_byte);
            std::vector<std::uint8_t> guesses(fit_guesses.begin(),
                                              fit_guesses.end());
            if (guesses.empty()) {
                if (!truth)
                    throw ArgumentError(
                        "fit-hd: file has no true key, pass --guess");
                guesses.push_back(*truth);
            }
            std::vector<HdClassSummary> summaries;
            std::vector<GuessFit> fits;
            for (const std::uint8_t g : guesses) {
                summaries.push_back(group_by_hd(traces, g, fit_byte, fit_sample));
                fits.push_back({g, fit_hd_line(summaries.back())});
            }
            write_stream(fit_classes_csv, [&](std::ostream &o) {
                write_hd_classes_csv(summaries, o);
            });
            write_stream(fit_fits_csv, [&](std::ostream &o) {
                write_hd_fits_csv(fits, o);
            });
            if (!fit_compare.empty()) {
                const TraceSet base = read_sctr(fit_compare);
                for (const GuessFit &f : fits) {
                    const HdFit b =
                        fit_hd_line(group_by_hd(base, f.guess, fit_byte, fit_sample));
                    const SignFlipReport rep = sign_flip_report(b, f.fit);
                    std::cerr << "sign_flip guess=" << unsigned{f.guess}
                              << " baseline_slope=" << rep.baseline_slope
                              << " slope=" << rep.augmented_slope
                              << " flipped=" << (rep.flipped ? "true" : "false")
                              << '\n';
                }
            }
            if (fit_scan) {
                if (!truth)
                    throw ArgumentError("fit-hd --wrong-horse needs a true key");
                const WrongHorseScan scan =
                    wrong_horse_scan(traces, fit_byte, *truth, fit_sample);
                std::cerr << "wrong_horse correct_r=" << scan.correct.r
                          << " contenders=" << scan.contenders.size();
                for (const GuessFit &f : scan.contenders)
                    std::cerr << ' ' << unsigned{f.guess} << ':' << f.fit.r;
                std::cerr << '\n';
            }
        } else if (*sweep) {
            const ExperimentConfig c = sweep_flags.resolve();
            const auto offsets = parse_list<double>(sweep_offsets, "offsets");
            const auto bits = parse_list<std::size_t>(sweep_bits, "bits");
            const auto rows = run_sweep(c, offsets, bits);
            write_stream(sweep_out, [&](std::ostream &o) {
                write_sweep_csv(rows, o);
            });
        } else if (*convert) {
            write_sctr(import_raw(conv_raw, conv_meta, conv_samples), conv_out);
        }
    } catch (const ArgumentError &e) {
        return report_error("argument", e);
    } catch (const InsufficientDataError &e) {
        return report_error("insufficient_data", e);
    } catch (const FormatError &e) {
        return report_error("format", e);
    } catch (const ImportError &e) {
        return report_error("import", e);
    } catch (const IoError &e) {
        return report_error("io", e);
    } catch (const std::exception &e) {
        return report_error("internal", e);
    }
    return 0;
}
