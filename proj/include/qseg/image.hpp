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

/**
 * @file
 * Raster containers shared by every module: 8-bit RGB images, normalized
 * grayscale images, segment label maps and ground-truth masks. All are
 * row-major with the pixel at (x, y) stored at index y * width + x.
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qseg/error.hpp"

namespace qseg {

using Rgb8 = std::array<std::uint8_t, 3>;

struct RgbImage {
    std::size_t width = 0;
    std::size_t height = 0;
    /// Interleaved R, G, B; size 3 * width * height.
    std::vector<std::uint8_t> data;

    RgbImage() = default;
    RgbImage(std::size_t w, std::size_t h) : width(w), height(h), data(3 * w * h, 0) {}

    [[nodiscard]] std::size_t pixel_count() const noexcept { return width * height; }
    [[nodiscard]] bool empty() const noexcept { return pixel_count() == 0; }

    [[nodiscard]] Rgb8 at(std::size_t i) const noexcept {
        return {data[3 * i], data[3 * i + 1], data[3 * i + 2]};
    }
    void set(std::size_t i, Rgb8 px) noexcept {
        data[3 * i] = px[0];
        data[3 * i + 1] = px[1];
        data[3 * i + 2] = px[2];
    }

    bool operator==(const RgbImage &) const = default;
};

struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    /// Intensities in [0, 1].
    std::vector<double> data;

    GrayImage() = default;
    GrayImage(std::size_t w, std::size_t h) : width(w), height(h), data(w * h, 0.0) {}

    [[nodiscard]] std::size_t pixel_count() const noexcept { return width * height; }
    [[nodiscard]] bool empty() const noexcept { return pixel_count() == 0; }

    bool operator==(const GrayImage &) const = default;
};

/// Per-pixel segment labels. RGB segmentation yields 0..7, grayscale 0..1,
/// k-means 0..k-1.
struct LabelMap {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> labels;

    LabelMap() = default;
    LabelMap(std::size_t w, std::size_t h) : width(w), height(h), labels(w * h, 0) {}

    [[nodiscard]] std::size_t pixel_count() const noexcept { return width * height; }

    bool operator==(const LabelMap &) const = default;
};

namespace mask_value {
inline constexpr std::uint8_t background = 0;
inline constexpr std::uint8_t foreground = 1;
inline constexpr std::uint8_t void_pixel = 255;
} // namespace mask_value

/// Binary ground truth with void pixels. Only the three `mask_value` sentinels occur.
struct GroundTruthMask {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> values;

    GroundTruthMask() = default;
    GroundTruthMask(std::size_t w, std::size_t h)
        : width(w), height(h), values(w * h, mask_value::background) {}

    [[nodiscard]] std::size_t pixel_count() const noexcept { return width * height; }

    bool operator==(const GroundTruthMask &) const = default;
};

} // namespace qseg
