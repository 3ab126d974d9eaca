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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qseg/error.hpp"
#include "qseg/metrics.hpp"
#include "qseg/segment.hpp"

using namespace qseg;

namespace {

GrayImage random_gray(std::size_t w, std::size_t h, std::mt19937_64 &rng) {
    GrayImage g(w, h);
    std::uniform_int_distribution<int> d(0, 255);
    for (double &v : g.data) {
        v = d(rng) / 255.0;
    }
    return g;
}

} // namespace

TEST(SegmentRgb, SingleBlackPixel) {
    const RgbImage img(1, 1);
    const LabelMap lm = segment_rgb(img, AngleParams::uniform(kPi));
    ASSERT_EQ(lm.labels.size(), 1u);
    EXPECT_EQ(lm.labels[0], 0);
}

TEST(SegmentRgb, UniformImageHasOneLabel) {
    RgbImage img(17, 9);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        img.set(i, {123, 45, 210});
    }
    for (double t : {kPi / 2, kPi, 1.75 * kPi, 4 * kPi}) {
        EXPECT_EQ(count_segments(segment_rgb(img, AngleParams::uniform(t))), 1);
    }
}

TEST(SegmentRgb, ParallelMatchesSerialForAnyThreadCount) {
    std::mt19937_64 rng(42);
    const RgbImage img = qseg::testing::random_rgb_image(97, 61, rng);
    const AngleParams params{1.25 * kPi, 0.5 * kPi, 1.75 * kPi};
    const LabelMap ref = reference::segment_rgb_serial(img, params);
    const int saved = max_threads();
    for (int t : {1, 2, 3, 4, 8}) {
        set_num_threads(t);
        EXPECT_EQ(segment_rgb(img, params), ref) << "threads=" << t;
    }
    set_num_threads(saved);
}

TEST(SegmentRgb, UnnormalizedParallelMatchesSerial) {
    std::mt19937_64 rng(43);
    const RgbImage img = qseg::testing::random_rgb_image(40, 30, rng);
    const AngleParams params = AngleParams::uniform(kPi);
    EXPECT_EQ(segment_rgb(img, params, false), reference::segment_rgb_serial(img, params, false));
}

TEST(SegmentRgb, UnnormalizedUsesRawChannelValues) {
    RgbImage img(1, 1);
    img.set(0, {1, 0, 0});
    // Raw R = 1 at theta = pi gives gamma = pi: the alternating vector, label 4.
    EXPECT_EQ(segment_rgb(img, AngleParams::uniform(kPi), false).labels[0], 4);
    // Normalized, 1/255 is almost black.
    EXPECT_EQ(segment_rgb(img, AngleParams::uniform(kPi), true).labels[0], 0);
}

TEST(SegmentRgb, ConfidenceMatchesPerPixelProbability) {
    std::mt19937_64 rng(44);
    const RgbImage img = qseg::testing::random_rgb_image(8, 8, rng);
    const AngleParams params = AngleParams::uniform(kPi);
    const SegmentationResult r = segment_rgb_detailed(img, params);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const auto px = img.at(i);
        const Classification c =
            classify_phases(phase_encode_rgb({px[0] / 255.0, px[1] / 255.0, px[2] / 255.0}, params));
        EXPECT_EQ(r.labels.labels[i], c.label.value);
        EXPECT_DOUBLE_EQ(r.confidence[i], c.probability);
        EXPECT_GE(r.confidence[i], 1.0 / 8 - 1e-12);
    }
}

TEST(SegmentRgb, RejectsEmptyImageAndBadParams) {
    EXPECT_THROW((void)segment_rgb(RgbImage{}, AngleParams{}), InputError);
    EXPECT_THROW((void)segment_rgb(RgbImage(2, 2), AngleParams{-1, 1, 1}), InputError);
    EXPECT_THROW((void)reference::segment_rgb_serial(RgbImage{}, AngleParams{}), InputError);
}

TEST(SegmentRgb, QuarterPiCollapsesToOneSegment) {
    std::mt19937_64 rng(45);
    const RgbImage img = qseg::testing::random_rgb_image(64, 64, rng);
    const LabelMap lm = segment_rgb(img, AngleParams::uniform(kPi / 4));
    EXPECT_EQ(count_segments(lm), 1);
    EXPECT_EQ(lm.labels[0], 0);
}

TEST(SegmentRgb, PiNeverExceedsSixSegments) {
    std::mt19937_64 rng(46);
    const RgbImage img = qseg::testing::random_rgb_image(128, 128, rng);
    EXPECT_LE(count_segments(segment_rgb(img, AngleParams::uniform(kPi))), 6);
}

TEST(SegmentGray, ParallelMatchesSerial) {
    std::mt19937_64 rng(47);
    const GrayImage g = random_gray(55, 33, rng);
    for (double t : {kPi, 1.3 * kPi, 4 * kPi}) {
        EXPECT_EQ(segment_gray(g, t), reference::segment_gray_serial(g, t));
    }
}

TEST(SegmentGray, ConstantImageSingleLabel) {
    GrayImage g(10, 10);
    std::fill(g.data.begin(), g.data.end(), 0.7);
    EXPECT_EQ(count_segments(segment_gray(g, kPi)), 1);
}

TEST(SegmentGray, BallsAtFourPiIsolateMidBand) {
    // Three mid-band balls between a darker background and a brighter disk,
    // both of which fall in the neighbouring bands.
    const std::size_t w = 80, h = 40;
    GrayImage g(w, h);
    std::fill(g.data.begin(), g.data.end(), 0.25);
    std::set<std::size_t> mid;
    auto disk = [&](double cx, double cy, double r, double value, bool is_mid) {
        for (std::size_t y = 0; y < h; ++y) {
            for (std::size_t x = 0; x < w; ++x) {
                if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) {
                    g.data[y * w + x] = value;
                    if (is_mid) {
                        mid.insert(y * w + x);
                    } else {
                        mid.erase(y * w + x);
                    }
                }
            }
        }
    };
    disk(12, 20, 8, 0.45, true);
    disk(32, 20, 8, 0.50, true);
    disk(52, 20, 8, 0.55, true);
    disk(70, 20, 6, 0.75, false);
    const LabelMap lm = segment_gray(g, 4 * kPi);
    for (std::size_t i = 0; i < g.pixel_count(); ++i) {
        EXPECT_EQ(lm.labels[i], mid.count(i) ? 0 : 1) << i;
    }
}

TEST(SegmentGray, RejectsBadInput) {
    GrayImage g(2, 2);
    EXPECT_THROW((void)segment_gray(g, 0.0), InputError);
    EXPECT_THROW((void)segment_gray(GrayImage{}, kPi), InputError);
    g.data[3] = 1.5;
    EXPECT_THROW((void)segment_gray(g, kPi), InputError);
}
