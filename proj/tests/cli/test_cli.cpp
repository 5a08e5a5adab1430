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

#include "lrcpa/aes.hpp"
#include "lrcpa/csv.hpp"
#include "lrcpa/trace_io.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace lrcpa;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               (std::string("lrcpa_cli_") +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }

    fs::path path(const std::string &name) const { return dir_ / name; }

    CliRun run(const std::string &args) const {
        const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
        const std::string cmd = std::string("\"") + LRCPA_CLI_PATH + "\" " + args +
                                " >\"" + out.string() + "\" 2>\"" + err.string() +
                                "\"";
        const int raw = std::system(cmd.c_str());
        CliRun r;
        r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    void simulate(const std::string &name, const std::string &extra = "") const {
        const CliRun r = run("simulate -n 800 --sigma 2 --seed 3 -o \"" +
                          path(name).string() + "\" " + extra);
        ASSERT_EQ(r.status, 0) << r.err;
    }

  private:
    fs::path dir_;
};

json error_of(const CliRun &r) { return json::parse(r.err); }

} // namespace

TEST_F(CliTest, SimulateWritesFileAndEchoesConfig) {
    const CliRun r = run("simulate -n 50 --sigma 1.5 --seed 9 --meta board=demo -o \"" +
                      path("a.sctr").string() + "\"");
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("n_traces = 50"), std::string::npos);
    EXPECT_NE(r.out.find("seed = 9"), std::string::npos);
    EXPECT_NE(r.out.find("meta.board = demo"), std::string::npos);
    EXPECT_EQ(fs::file_size(path("a.sctr")), sctr_file_size(50, 1, true));
    const TraceSet ts = read_sctr(path("a.sctr"));
    EXPECT_EQ(ts.seed(), 9u);
}

TEST_F(CliTest, ConfigFileAndFlagOverride) {
    std::ofstream(path("c.cfg")) << "n_traces = 40\nseed = 4\noutput = "
                                 << path("c.sctr").string() << "\n";
    const CliRun r = run("simulate --config \"" + path("c.cfg").string() + "\" --seed 8");
    ASSERT_EQ(r.status, 0) << r.err;
    const TraceSet ts = read_sctr(path("c.sctr"));
    EXPECT_EQ(ts.size(), 40u);
    EXPECT_EQ(ts.seed(), 8u);
}

TEST_F(CliTest, SameSeedSameFile) {
    simulate("a.sctr");
    simulate("b.sctr", "--workers 1");
    EXPECT_EQ(slurp(path("a.sctr")), slurp(path("b.sctr")));
}

TEST_F(CliTest, AttackReportToStdout) {
    simulate("t.sctr");
    const CliRun r = run("attack \"" + path("t.sctr").string() + "\" --stride 200");
    ASSERT_EQ(r.status, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["n_traces"], 800);
    EXPECT_EQ(j["evolution"]["checkpoints"], json({200, 400, 600, 800}));
    const Block key = Block::from_hex("2b7e151628aed2a6abf7158809cf4f3c");
    EXPECT_EQ(j["correct_guess"], correct_guess(key, 0));
}

TEST_F(CliTest, AttackWritesReportAndCsv) {
    simulate("t.sctr");
    const CliRun r = run("attack \"" + path("t.sctr").string() + "\" --byte 5 --report \"" +
                      path("r.json").string() + "\" --evolution-csv \"" +
                      path("e.csv").string() + "\"");
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out.rfind("best_guess ", 0), 0u);
    const json j = json::parse(slurp(path("r.json")));
    EXPECT_EQ(j["byte_index"], 5);
    EXPECT_EQ(j["key_position"], key_position_for(5));
    const CsvTable t = read_csv(path("e.csv"));
    EXPECT_EQ(t.rows.size(), 8u * 256u);
}

TEST_F(CliTest, AttackAllBytesRecoversKey) {
    const CliRun s = run("simulate -n 2000 --seed 2 -o \"" + path("k.sctr").string() + "\"");
    ASSERT_EQ(s.status, 0) << s.err;
    const CliRun r = run("attack \"" + path("k.sctr").string() + "\" --all-bytes");
    ASSERT_EQ(r.status, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["cipher_key"], "2b7e151628aed2a6abf7158809cf4f3c");
}

TEST_F(CliTest, FitHdWritesCsvsAndDiagnostics) {
    simulate("base.sctr");
    simulate("aug.sctr", "--augment-byte 0 --augment-bit 2 --offset 20");
    const CliRun r = run("fit-hd \"" + path("aug.sctr").string() + "\" --classes-csv \"" +
                      path("cls.csv").string() + "\" --fits-csv \"" +
                      path("fit.csv").string() + "\" --compare \"" +
                      path("base.sctr").string() + "\" --wrong-horse");
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.err.find("sign_flip guess="), std::string::npos);
    EXPECT_NE(r.err.find("flipped=true"), std::string::npos);
    EXPECT_NE(r.err.find("wrong_horse correct_r="), std::string::npos);
    const CsvTable fits = read_csv(path("fit.csv"));
    ASSERT_EQ(fits.rows.size(), 1u);
    EXPECT_GT(std::stod(fits.rows[0][fits.column("slope")]), 0.0);
    EXPECT_FALSE(read_csv(path("cls.csv")).rows.empty());
}

TEST_F(CliTest, SweepTable) {
    const CliRun r = run("sweep -n 600 --sigma 2 --offsets 0,2 --bits 1,2");
    ASSERT_EQ(r.status, 0) << r.err;
    const CsvTable t = parse_csv(r.out);
    EXPECT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(t.header.front(), "bit");
}

TEST_F(CliTest, ConvertRawRoundTrip) {
    simulate("t.sctr");
    const TraceSet ts = read_sctr(path("t.sctr"));
    export_raw(ts, path("s.bin"), path("m.csv"));
    const CliRun r = run("convert --raw \"" + path("s.bin").string() + "\" --meta \"" +
                      path("m.csv").string() + "\" --samples 1 -o \"" +
                      path("c.sctr").string() + "\"");
    ASSERT_EQ(r.status, 0) << r.err;
    const TraceSet back = read_sctr(path("c.sctr"));
    ASSERT_EQ(back.size(), ts.size());
    EXPECT_TRUE(std::equal(back.samples().begin(), back.samples().end(),
                           ts.samples().begin()));
}

TEST_F(CliTest, ErrorsAreJsonWithKind) {
    CliRun r = run("attack \"" + path("absent.sctr").string() + "\"");
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(error_of(r)["error"], "io");

    std::ofstream(path("bad.sctr")) << "NOPE and then some more bytes here";
    r = run("attack \"" + path("bad.sctr").string() + "\"");
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(error_of(r)["error"], "format");

    r = run("simulate -n 0 -o \"" + path("x.sctr").string() + "\"");
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(error_of(r)["error"], "argument");
    EXPECT_FALSE(fs::exists(path("x.sctr")));

    r = run("simulate -n 10 --offset 1 --n-ro 3 -o \"" + path("x.sctr").string() + "\"");
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(error_of(r)["error"], "argument");

    std::ofstream(path("s.bin"), std::ios::binary) << "abcdef";
    std::ofstream(path("m.csv")) << "plaintext_hex,ciphertext_hex\n";
    r = run("convert --raw \"" + path("s.bin").string() + "\" --meta \"" +
            path("m.csv").string() + "\" --samples 1 -o \"" +
            path("y.sctr").string() + "\"");
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(error_of(r)["error"], "import");
}

TEST_F(CliTest, InsufficientDataError) {
    // Ten traces sharing one ciphertext populate a single HD class.
    TraceSet ts(1);
    const float v = 1.0f;
    for (int i = 0; i < 10; ++i)
        ts.push_back(Block{}, Block{}, std::span(&v, 1));
    write_sctr(ts, path("one.sctr"));
    const CliRun r = run("fit-hd \"" + path("one.sctr").string() + "\" --guess 3");
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(error_of(r)["error"], "insufficient_data");
}

TEST_F(CliTest, UsageErrorsExitNonZero) {
    EXPECT_NE(run("").status, 0);
    EXPECT_NE(run("attack").status, 0);
    EXPECT_NE(run("frobnicate").status, 0);
}
