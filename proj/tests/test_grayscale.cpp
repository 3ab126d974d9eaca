// Copyright 2026 The qseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qseg/error.hpp"
#include "qseg/grayscale.hpp"

using namespace qseg;

namespace {

struct TableCase {
    double theta;
    std::vector<double> printed;
};

} // namespace

TEST(GrayProbabilities, SumToOneAndMatchClosedForm) {
    for (double theta : {kPi / 2, kPi, 1.7 * kPi, 4 * kPi}) {
        for (int i = 0; i <= 100; ++i) {
            const double I = i / 100.0;
            const GrayProbabilities p = gray_probabilities(I, theta);
            EXPECT_NEAR(p.class0 + p.class1, 1.0, 1e-15);
            EXPECT_NEAR(p.class0, (1 + std::cos(I * theta)) / 2, 1e-15);
        }
    }
}

TEST(GrayProbabilities, AgreesWithMatrixAndExpandedForms) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ui(0.0, 1.0), ut(0.01, 8 * kPi);
    for (int trial = 0; trial < 5000; ++trial) {
        const double I = ui(rng), theta = ut(rng);
        const GrayProbabilities p = gray_probabilities(I, theta);
        const auto m = qseg::testing::gray_matrix_probs(I, theta);
        const auto e = qseg::testing::gray_expanded_probs(I, theta);
        ASSERT_NEAR(p.class0, m[0], 1e-12);
        ASSERT_NEAR(p.class1, m[1], 1e-12);
        ASSERT_NEAR(p.class0, e[0], 1e-12);
        ASSERT_NEAR(p.class1, e[1], 1e-12);
    }
}

TEST(GrayProbabilities, RejectsBadInputs) {
    EXPECT_THROW((void)gray_probabilities(-0.01, kPi), InputError);
    EXPECT_THROW((void)gray_probabilities(1.01, kPi), InputError);
    EXPECT_THROW((void)gray_probabilities(0.5, 0.0), InputError);
    EXPECT_THROW((void)gray_probabilities(0.5, -kPi), InputError);
    EXPECT_THROW((void)gray_probabilities(0.5, NAN), InputError);
    EXPECT_THROW((void)classify_gray_pixel(2.0, kPi), InputError);
}

TEST(ClassifyGray, BlackIsClassZero) {
    EXPECT_EQ(classify_gray_pixel(0.0, kPi).value, 0);
    EXPECT_EQ(classify_gray_pixel(0.0, 4 * kPi).value, 0);
}

TEST(ClassifyGray, PiSplitsAtOneHalf) {
    EXPECT_EQ(classify_gray_pixel(0.49, kPi).value, 0);
    EXPECT_EQ(classify_gray_pixel(0.5, kPi).value, 0);
    EXPECT_EQ(classify_gray_pixel(0.51, kPi).value, 1);
    EXPECT_EQ(classify_gray_pixel(1.0, kPi).value, 1);
}

TEST(ClassifyGray, ConfidenceIsWinningProbability) {
    const Classification c = classify_gray_unchecked(0.25, kPi);
    EXPECT_EQ(c.label.value, 0);
    EXPECT_NEAR(c.probability, (1 + std::cos(kPi / 4)) / 2, 1e-15);
    const Classification d = classify_gray_unchecked(1.0, kPi);
    EXPECT_EQ(d.label.value, 1);
    EXPECT_NEAR(d.probability, 1.0, 1e-15);
}

TEST(Thresholds, TableOfPrintedValues) {
    const std::vector<TableCase> cases = {
        {3 * kPi / 4, {0.667}},   {kPi, {0.500}},           {5 * kPi / 4, {0.400}},
        {3 * kPi / 2, {0.333}},   {7 * kPi / 4, {0.2857, 0.8571}}, {2 * kPi, {0.25, 0.75}},
    };
    for (const auto &c : cases) {
        const ThresholdSet t = thresholds_from_theta(c.theta);
        ASSERT_EQ(t.size(), c.printed.size()) << c.theta;
        for (std::size_t i = 0; i < t.size(); ++i) {
            EXPECT_NEAR(t.thresholds[i], c.printed[i], 5e-4);
        }
    }
}

TEST(Thresholds, FourPiGivesOddEighths) {
    const ThresholdSet t = thresholds_from_theta(4 * kPi);
    ASSERT_EQ(t.size(), 4u);
    const double expected[] = {0.125, 0.375, 0.625, 0.875};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_DOUBLE_EQ(t.thresholds[i], expected[i]);
    }
}

TEST(Thresholds, SmallThetaHasNone) {
    EXPECT_TRUE(thresholds_from_theta(kPi / 4).empty());
    EXPECT_TRUE(thresholds_from_theta(kPi / 2 - 1e-6).empty());
    // Boundary lands exactly on I = 1.
    const ThresholdSet t = thresholds_from_theta(kPi / 2);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_DOUBLE_EQ(t.thresholds[0], 1.0);
}

TEST(Thresholds, TrailingBoundaryOnOneIsDropped) {
    const ThresholdSet t = thresholds_from_theta(3 * kPi / 2);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_NEAR(t.thresholds[0], 1.0 / 3.0, 1e-15);
    EXPECT_EQ(thresholds_from_theta(5 * kPi / 2).size(), 2u);
}

TEST(Thresholds, RejectsNonPositiveTheta) {
    EXPECT_THROW((void)thresholds_from_theta(0.0), InputError);
    EXPECT_THROW((void)thresholds_from_theta(-1.0), InputError);
    EXPECT_THROW((void)thresholds_from_theta(INFINITY), InputError);
}

TEST(Thresholds, SortedAndInUnitInterval) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ut(0.01, 8 * kPi);
    for (int trial = 0; trial < 1000; ++trial) {
        const ThresholdSet t = thresholds_from_theta(ut(rng));
        for (std::size_t i = 0; i < t.size(); ++i) {
            EXPECT_GT(t.thresholds[i], 0.0);
            EXPECT_LE(t.thresholds[i], 1.0);
            if (i > 0) {
                EXPECT_GT(t.thresholds[i], t.thresholds[i - 1]);
            }
        }
    }
}

TEST(Thresholds, LabelsFlipExactlyAtThresholds) {
    // Between consecutive thresholds the class is constant and alternates.
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ut(kPi / 2, 8 * kPi);
    for (int trial = 0; trial < 300; ++trial) {
        const double theta = ut(rng);
        const ThresholdSet t = thresholds_from_theta(theta);
        std::vector<double> edges{0.0};
        edges.insert(edges.end(), t.thresholds.begin(), t.thresholds.end());
        edges.push_back(1.0);
        for (std::size_t band = 0; band + 1 < edges.size(); ++band) {
            const double lo = edges[band], hi = edges[band + 1];
            if (hi - lo < 1e-9) {
                continue;
            }
            const std::uint8_t expected = band % 2;
            for (int s = 1; s < 10; ++s) {
                const double I = lo + (hi - lo) * s / 10.0;
                ASSERT_EQ(classify_gray_pixel(I, theta).value, expected)
                    << "theta=" << theta << " I=" << I;
            }
        }
    }
}

TEST(ThetaFromThreshold, RoundTrip) {
    for (double ith : {0.05, 0.2, 1.0 / 3, 0.4465, 0.5, 0.75, 1.0}) {
        const double theta = theta_from_threshold(ith);
        EXPECT_NEAR(theta, kPi / (2 * ith), 1e-15);
        const ThresholdSet t = thresholds_from_theta(theta);
        ASSERT_FALSE(t.empty());
        EXPECT_NEAR(t.thresholds.front(), ith, 1e-12);
    }
}

TEST(ThetaFromThreshold, OtsuStyleValue) {
    EXPECT_NEAR(theta_from_threshold(0.4465) / kPi, 1.1197, 5e-4);
    EXPECT_NEAR(theta_from_threshold(0.5), kPi, 1e-15);
}

TEST(ThetaFromThreshold, RejectsOutOfRange) {
    EXPECT_THROW((void)theta_from_threshold(0.0), InputError);
    EXPECT_THROW((void)theta_from_threshold(1.5), InputError);
    EXPECT_THROW((void)theta_from_threshold(-0.2), InputError);
    EXPECT_THROW((void)theta_from_threshold(NAN), InputError);
}

TEST(ClassifyGray, FourPiBands) {
    // Bands split at 1/8, 3/8, 5/8, 7/8 and alternate 0, 1, 0, 1, 0.
    EXPECT_EQ(classify_gray_pixel(0.05, 4 * kPi).value, 0);
    EXPECT_EQ(classify_gray_pixel(0.25, 4 * kPi).value, 1);
    EXPECT_EQ(classify_gray_pixel(0.5, 4 * kPi).value, 0);
    EXPECT_EQ(classify_gray_pixel(0.75, 4 * kPi).value, 1);
    EXPECT_EQ(classify_gray_pixel(0.9, 4 * kPi).value, 0);
    EXPECT_EQ(classify_gray_pixel(0.6, kPi).value, 1);
}

TEST(ThetaFromThreshold, SecondOtsuStyleValue) {
    EXPECT_NEAR(theta_from_threshold(0.4911) / kPi, 1.0180, 5e-4);
}
