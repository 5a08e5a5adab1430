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

#include "lrcpa/hd_analysis.hpp"
#include "lrcpa/error.hpp"
#include "lrcpa/leakage.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace lrcpa;

namespace {

const Block kKey = Block::from_hex("2b7e151628aed2a6abf7158809cf4f3c");

int oracle_hd(const Block &ct, std::uint8_t guess, std::size_t byte) {
    const std::uint8_t shifted = ct[shift_rows_perm().forward[byte]];
    return oracle::count_bits(inv_sbox(static_cast<std::uint8_t>(shifted ^ guess)) ^
                              ct[byte]);
}

LeakageConfig single_byte_weights(std::size_t byte, double w) {
    LeakageConfig cfg;
    for (std::size_t b = 0; b < 8; ++b)
        cfg.bit_weights[8 * byte + b] = w;
    return cfg;
}

HdFit fit(double slope, double r) {
    HdFit f;
    f.slope = slope;
    f.r = r;
    f.n_classes_used = 9;
    return f;
}

} // namespace

TEST(GroupByHd, IdenticalCiphertextsFormOneClass) {
    TraceSet ts(1);
    const Block ct = Block::from_hex("3925841d02dc09fbdc118597196a0b32");
    for (int i = 0; i < 50; ++i) {
        const float v = static_cast<float>(i);
        ts.push_back(Block{}, ct, std::span(&v, 1));
    }
    const HdClassSummary s = group_by_hd(ts, 0x11, 0, 0);
    EXPECT_EQ(s.classes_present(), 1u);
    const HdClass &c = s.classes[oracle_hd(ct, 0x11, 0)];
    EXPECT_EQ(c.count, 50u);
    EXPECT_DOUBLE_EQ(c.mean, 24.5);
    EXPECT_THROW(fit_hd_line(s), InsufficientDataError);
}

TEST(GroupByHd, CountsFollowBinomialShape) {
    std::mt19937_64 rng(60);
    TraceSet ts(1);
    const float v = 0.0f;
    for (int i = 0; i < 5000; ++i)
        ts.push_back(Block{}, oracle::random_block(rng), std::span(&v, 1));
    for (unsigned g : {0u, 208u, 255u}) {
        const HdClassSummary s = group_by_hd(ts, static_cast<std::uint8_t>(g), 5, 0);
        EXPECT_EQ(s.total(), ts.size());
        const auto most = std::max_element(
            s.classes.begin(), s.classes.end(),
            [](const HdClass &a, const HdClass &b) { return a.count < b.count; });
        EXPECT_EQ(most - s.classes.begin(), 4);
    }
}

TEST(GroupByHd, ClassStatisticsMatchOracle) {
    std::mt19937_64 rng(61);
    std::normal_distribution<float> noise(10.0f, 2.0f);
    TraceSet ts(2);
    for (int i = 0; i < 3000; ++i) {
        const float row[2] = {noise(rng), noise(rng)};
        ts.push_back(Block{}, oracle::random_block(rng), row);
    }
    const HdClassSummary s = group_by_hd(ts, 0x42, 9, 1);
    EXPECT_EQ(s.guess, 0x42);
    EXPECT_EQ(s.byte_index, 9u);
    EXPECT_EQ(s.sample_index, 1u);
    for (int k = 0; k <= 8; ++k) {
        std::vector<double> ys;
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (oracle_hd(ts.ciphertext(i), 0x42, 9) == k)
                ys.push_back(ts.trace(i)[1]);
        ASSERT_EQ(s.classes[k].count, ys.size()) << "class " << k;
        if (ys.empty())
            continue;
        long double sum = 0;
        for (double y : ys)
            sum += y;
        const long double mean = sum / ys.size();
        long double ss = 0;
        for (double y : ys)
            ss += (y - mean) * (y - mean);
        EXPECT_NEAR(s.classes[k].mean, static_cast<double>(mean), 1e-9);
        EXPECT_NEAR(s.classes[k].stddev,
                    static_cast<double>(std::sqrt(ss / ys.size())), 1e-9);
    }
}

TEST(GroupByHd, ArgumentErrors) {
    const TraceSet ts =
        simulate_campaign(kKey, 10, LeakageConfig::equal_weights(1.0), 62);
    EXPECT_THROW(group_by_hd(ts, 0, 16, 0), ArgumentError);
    EXPECT_THROW(group_by_hd(ts, 0, 0, 1), ArgumentError);
}

TEST(FitHdLine, RecoversExactLine) {
    std::mt19937_64 rng(63);
    TraceSet ts(1);
    for (int i = 0; i < 2000; ++i) {
        const Block ct = oracle::random_block(rng);
        const float v = static_cast<float>(3.0 - 0.5 * oracle_hd(ct, 0x9a, 3));
        ts.push_back(Block{}, ct, std::span(&v, 1));
    }
    const HdFit f = fit_hd_line(group_by_hd(ts, 0x9a, 3, 0));
    EXPECT_NEAR(f.slope, -0.5, 1e-12);
    EXPECT_NEAR(f.intercept, 3.0, 1e-12);
    EXPECT_NEAR(f.r, -1.0, 1e-12);
}

TEST(FitHdLine, MatchesLeastSquaresOracle) {
    LeakageConfig cfg = LeakageConfig::equal_weights(1.0);
    cfg.noise_sigma = 3.0;
    const TraceSet ts = simulate_campaign(kKey, 4000, cfg, 64);
    const HdClassSummary s = group_by_hd(ts, 17, 0, 0);
    std::vector<double> xs, ys;
    for (int k = 0; k <= 8; ++k)
        if (s.classes[k].present()) {
            xs.push_back(k);
            ys.push_back(s.classes[k].mean);
        }
    const HdFit f = fit_hd_line(s);
    const oracle::Line line = oracle::least_squares(xs, ys);
    EXPECT_EQ(f.n_classes_used, xs.size());
    EXPECT_NEAR(f.slope, line.slope, 1e-12);
    EXPECT_NEAR(f.intercept, line.intercept, 1e-9);
    EXPECT_NEAR(f.r, oracle::two_pass_pearson(xs, ys), 1e-12);
}

TEST(FitHdLine, SingleByteLeakageGivesSlopeMinusWeight) {
    for (double w : {0.25, 1.0, 3.0}) {
        const TraceSet ts = simulate_campaign(kKey, 3000, single_byte_weights(0, w), 65);
        const HdClassSummary s = group_by_hd(ts, correct_guess(kKey, 0), 0, 0);
        for (int k = 0; k < 8; ++k)
            if (s.classes[k].present() && s.classes[k + 1].present())
                EXPECT_GT(s.classes[k].mean, s.classes[k + 1].mean);
        const HdFit f = fit_hd_line(s);
        EXPECT_NEAR(f.slope, -w, 1e-9);
        EXPECT_NEAR(f.r, -1.0, 1e-12);
    }
}

TEST(FitHdLine, FullStateLeakageHasNegativeSlope) {
    const TraceSet ts =
        simulate_campaign(kKey, 20000, LeakageConfig::equal_weights(1.0), 66);
    const HdFit f = fit_hd_line(group_by_hd(ts, correct_guess(kKey, 0), 0, 0));
    EXPECT_NEAR(f.slope, -1.0, 0.2);
    EXPECT_LT(f.r, -0.9);
}

TEST(FitHdLine, StaticOffsetSteepensTowardsZero) {
    // Per class, the static bit shifts the mean by o * P(bit static | HD=k),
    // which rises by o/8 per class.
    LeakageConfig cfg = single_byte_weights(0, 1.0);
    cfg.augmentation = Augmentation{0, 2, 4.0, Trigger::OnStatic};
    const TraceSet ts = simulate_campaign(kKey, 20000, cfg, 67);
    const HdFit f = fit_hd_line(group_by_hd(ts, correct_guess(kKey, 0), 0, 0));
    EXPECT_NEAR(f.slope, -1.0 + 4.0 / 8.0, 0.05);
}

TEST(SignFlip, PositiveAfterNegativeIsFlip) {
    const SignFlipReport r = sign_flip_report(fit(-4.049e-4, -0.9), fit(7.629e-4, 0.8));
    EXPECT_TRUE(r.flipped);
    EXPECT_DOUBLE_EQ(r.baseline_slope, -4.049e-4);
    EXPECT_DOUBLE_EQ(r.augmented_slope, 7.629e-4);
    EXPECT_NEAR(r.slope_change, 1.1678e-3, 1e-15);
}

TEST(SignFlip, SameSignIsNoFlip) {
    EXPECT_FALSE(sign_flip_report(fit(-1.0, -1), fit(-0.1, -1)).flipped);
    EXPECT_FALSE(sign_flip_report(fit(2.0, 1), fit(0.5, 1)).flipped);
    EXPECT_TRUE(sign_flip_report(fit(0.5, 1), fit(-0.5, -1)).flipped);
}

TEST(SignFlip, ZeroSlopeNeverFlips) {
    EXPECT_FALSE(sign_flip_report(fit(0.0, 0), fit(1.0, 1)).flipped);
    EXPECT_FALSE(sign_flip_report(fit(-1.0, -1), fit(0.0, 0)).flipped);
    EXPECT_FALSE(sign_flip_report(fit(-0.0, 0), fit(0.0, 0)).flipped);
}

TEST(WrongHorse, NoContendersWithoutAugmentation) {
    const TraceSet ts = simulate_campaign(kKey, 2000, single_byte_weights(0, 1.0), 68);
    const WrongHorseScan scan = wrong_horse_scan(ts, 0, correct_guess(kKey, 0));
    EXPECT_NEAR(scan.correct.r, -1.0, 1e-12);
    EXPECT_TRUE(scan.contenders.empty());
}

TEST(WrongHorse, LargeOffsetProducesSortedContenders) {
    LeakageConfig cfg = LeakageConfig::equal_weights(1.0);
    cfg.noise_sigma = 4.0;
    cfg.augmentation = Augmentation{0, 2, 10.0, Trigger::OnStatic};
    const TraceSet ts = simulate_campaign(kKey, 20000, cfg, 69);
    const std::uint8_t correct = correct_guess(kKey, 0);
    const WrongHorseScan scan = wrong_horse_scan(ts, 0, correct);
    ASSERT_FALSE(scan.contenders.empty());
    for (std::size_t i = 0; i < scan.contenders.size(); ++i) {
        const GuessFit &c = scan.contenders[i];
        EXPECT_NE(c.guess, correct);
        EXPECT_GT(std::abs(c.fit.r), std::abs(scan.correct.r));
        if (i > 0)
            EXPECT_GE(std::abs(scan.contenders[i - 1].fit.r), std::abs(c.fit.r));
    }
    // Worker count does not change the scan.
    const WrongHorseScan serial = wrong_horse_scan(ts, 0, correct, 0, 1);
    ASSERT_EQ(serial.contenders.size(), scan.contenders.size());
    for (std::size_t i = 0; i < scan.contenders.size(); ++i)
        EXPECT_EQ(serial.contenders[i].guess, scan.contenders[i].guess);
}
