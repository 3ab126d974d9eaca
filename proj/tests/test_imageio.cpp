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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <set>

#include <gtest/gtest.h>
#include <png.h>

#include "qseg/error.hpp"
#include "qseg/imageio.hpp"

using namespace qseg;

namespace {

void append(png_structp png, png_bytep data, png_size_t len) {
    auto *out = static_cast<Bytes *>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + len);
}

void no_flush(png_structp) {}

/// Writes an 8-bit PNG straight through libpng's low-level API.
Bytes write_raw_png(std::size_t w, std::size_t h, int color_type, const std::vector<std::uint8_t> &pixels,
                    const std::vector<png_color> &palette = {}) {
    Bytes out;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        ADD_FAILURE() << "libpng write failed";
        return {};
    }
    png_set_write_fn(png, &out, append, no_flush);
    png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    if (!palette.empty()) {
        png_set_PLTE(png, info, palette.data(), static_cast<int>(palette.size()));
    }
    png_write_info(png, info);
    const std::size_t channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
    for (std::size_t y = 0; y < h; ++y) {
        png_write_row(png, const_cast<png_bytep>(pixels.data() + y * w * channels));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

std::vector<png_color> gray_palette() {
    std::vector<png_color> p(256);
    for (int i = 0; i < 256; ++i) {
        p[i] = {static_cast<png_byte>(i), static_cast<png_byte>(i), static_cast<png_byte>(i)};
    }
    return p;
}

} // namespace

TEST(Decode, OneByOneWhitePng) {
    const Bytes png = write_raw_png(1, 1, PNG_COLOR_TYPE_RGB, {255, 255, 255});
    const RgbImage img = decode_image(png);
    EXPECT_EQ(img.width, 1u);
    EXPECT_EQ(img.height, 1u);
    EXPECT_EQ(img.data, (std::vector<std::uint8_t>{255, 255, 255}));
}

TEST(Decode, CheckerboardRowMajor) {
    const std::vector<std::uint8_t> px = {255, 0, 0, 0, 255, 0, 0, 0, 255, 10, 20, 30};
    const RgbImage img = decode_image(write_raw_png(2, 2, PNG_COLOR_TYPE_RGB, px));
    ASSERT_EQ(img.width, 2u);
    ASSERT_EQ(img.height, 2u);
    EXPECT_EQ(img.data, px);
    EXPECT_EQ(img.at(3), (Rgb8{10, 20, 30}));
}

TEST(Decode, GrayAndPalettedExpandToRgb) {
    const RgbImage g = decode_image(write_raw_png(2, 1, PNG_COLOR_TYPE_GRAY, {7, 200}));
    EXPECT_EQ(g.data, (std::vector<std::uint8_t>{7, 7, 7, 200, 200, 200}));
    const RgbImage p =
        decode_image(write_raw_png(2, 1, PNG_COLOR_TYPE_PALETTE, {1, 0}, {{0, 0, 0}, {9, 8, 7}}));
    EXPECT_EQ(p.data, (std::vector<std::uint8_t>{9, 8, 7, 0, 0, 0}));
}

TEST(Decode, PngRoundTrip) {
    std::mt19937_64 rng(1);
    RgbImage img(13, 7);
    for (auto &v : img.data) {
        v = static_cast<std::uint8_t>(rng());
    }
    EXPECT_EQ(decode_image(encode_png(img)), img);
}

TEST(Decode, JpegRoundTripOfGradient) {
    RgbImage img(64, 48);
    for (std::size_t y = 0; y < img.height; ++y) {
        for (std::size_t x = 0; x < img.width; ++x) {
            img.set(y * img.width + x, {static_cast<std::uint8_t>(x * 4), static_cast<std::uint8_t>(y * 5),
                                        static_cast<std::uint8_t>(128)});
        }
    }
    const Bytes jpg = encode_jpeg(img, 95);
    EXPECT_EQ(sniff_format(jpg), ImageFormat::jpeg);
    const RgbImage back = decode_image(jpg);
    ASSERT_EQ(back.width, img.width);
    ASSERT_EQ(back.height, img.height);
    int worst = 0;
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        worst = std::max(worst, std::abs(int(img.data[i]) - int(back.data[i])));
    }
    EXPECT_LE(worst, 3);
}

TEST(Decode, MalformedInputReportsOffset) {
    EXPECT_THROW((void)decode_image(Bytes{1, 2, 3}), DecodeError);
    Bytes png = encode_png(RgbImage(8, 8));
    png.resize(png.size() / 2);
    try {
        (void)decode_image(png);
        FAIL() << "truncated PNG decoded";
    } catch (const DecodeError &e) {
        ASSERT_TRUE(e.offset().has_value());
        EXPECT_LE(*e.offset(), png.size());
    }
    Bytes jpg = encode_jpeg(RgbImage(16, 16));
    jpg.resize(20);
    EXPECT_THROW((void)decode_image(jpg), DecodeError);
    Bytes bad_sig = encode_png(RgbImage(2, 2));
    bad_sig[1] = 'X';
    try {
        (void)decode_image(bad_sig, ImageFormat::png);
        FAIL();
    } catch (const DecodeError &e) {
        EXPECT_EQ(e.offset(), std::optional<std::size_t>(0));
    }
}

TEST(Gray, LumaCoefficients) {
    RgbImage img(3, 1);
    img.set(0, {255, 255, 255});
    img.set(1, {0, 0, 0});
    img.set(2, {0, 255, 0});
    const GrayImage g = to_gray(img);
    EXPECT_NEAR(g.data[0], 1.0, 1e-12);
    EXPECT_LE(g.data[0], 1.0);
    EXPECT_EQ(g.data[1], 0.0);
    EXPECT_NEAR(g.data[2], 0.7154, 1e-12);
}

TEST(Mask, AllZeroIsBackground) {
    const GroundTruthMask m = load_mask(write_raw_png(3, 2, PNG_COLOR_TYPE_GRAY, std::vector<std::uint8_t>(6, 0)));
    EXPECT_EQ(m.width, 3u);
    EXPECT_EQ(m.values, std::vector<std::uint8_t>(6, mask_value::background));
}

TEST(Mask, RingOf255IsVoid) {
    std::vector<std::uint8_t> v(25, 0);
    for (std::size_t y = 0; y < 5; ++y) {
        for (std::size_t x = 0; x < 5; ++x) {
            const bool ring = x == 1 || x == 3 || y == 1 || y == 3;
            const bool inside = x == 2 && y == 2;
            if (x >= 1 && x <= 3 && y >= 1 && y <= 3) {
                v[y * 5 + x] = inside ? 1 : (ring ? 255 : 0);
            }
        }
    }
    const GroundTruthMask m = load_mask(write_raw_png(5, 5, PNG_COLOR_TYPE_GRAY, v));
    EXPECT_EQ(m.values, v);
    EXPECT_EQ(std::count(m.values.begin(), m.values.end(), mask_value::void_pixel), 8);
}

TEST(Mask, PalettedClassesCollapse) {
    const Bytes png = write_raw_png(3, 1, PNG_COLOR_TYPE_PALETTE, {0, 7, 255}, gray_palette());
    const GroundTruthMask m = load_mask(png);
    EXPECT_EQ(m.values, (std::vector<std::uint8_t>{mask_value::background, mask_value::foreground,
                                                   mask_value::void_pixel}));
    // Re-read after writing back with the raw convention.
    EXPECT_EQ(load_mask(encode_mask_png(m)), m);
}

TEST(Mask, OutOfConventionValuesListed) {
    const Bytes png = write_raw_png(4, 1, PNG_COLOR_TYPE_GRAY, {0, 1, 128, 7});
    try {
        (void)load_mask(png);
        FAIL();
    } catch (const FormatError &e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("7"), std::string::npos);
        EXPECT_NE(msg.find("128"), std::string::npos);
    }
    EXPECT_THROW((void)load_mask(encode_png(RgbImage(2, 2))), FormatError);
    EXPECT_THROW((void)load_mask(Bytes{0, 1, 2}), DecodeError);
}

TEST(Render, ConstantMapIsOneColor) {
    LabelMap lm(6, 4);
    std::fill(lm.labels.begin(), lm.labels.end(), 5);
    const RgbImage img = decode_image(render_labelmap(lm));
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        EXPECT_EQ(img.at(i), label_palette()[5]);
    }
}

TEST(Render, RoundTrip) {
    std::mt19937_64 rng(2);
    LabelMap lm(31, 17);
    for (auto &l : lm.labels) {
        l = static_cast<std::uint8_t>(rng() % 8);
    }
    EXPECT_EQ(parse_labelmap(render_labelmap(lm)), lm);
}

TEST(Render, TestCardHasEightColors) {
    LabelMap lm(8, 1);
    for (std::uint8_t i = 0; i < 8; ++i) {
        lm.labels[i] = i;
    }
    const RgbImage img = decode_image(render_labelmap(lm));
    std::set<Rgb8> colors;
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        colors.insert(img.at(i));
    }
    EXPECT_EQ(colors.size(), 8u);
}

TEST(Render, RejectsUnknownLabelsAndColors) {
    LabelMap lm(2, 1);
    lm.labels[1] = 8;
    EXPECT_THROW((void)render_labelmap(lm), InputError);
    RgbImage img(1, 1);
    img.set(0, {1, 2, 3});
    EXPECT_THROW((void)parse_labelmap(encode_png(img)), FormatError);
}

TEST(Files, ReadWriteAndMissing) {
    const auto dir = std::filesystem::temp_directory_path() / "qseg_test_imageio";
    std::filesystem::create_directories(dir);
    const Bytes data{1, 2, 3, 250};
    write_file(dir / "x.bin", data);
    EXPECT_EQ(read_file(dir / "x.bin"), data);
    EXPECT_THROW((void)read_file(dir / "missing.bin"), std::runtime_error);
    std::filesystem::remove_all(dir);
}
