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
 * PNG/JPEG decoding and encoding, grayscale conversion, ground-truth mask
 * ingestion and label-map rendering.
 *
 * Mask files are 8-bit single-channel PNGs holding 0 (background),
 * 1 (foreground) and 255 (void). Paletted masks in the VOC style are
 * collapsed on load: index 0 is background, 255 is void, anything else is
 * foreground.
 *
 * Label maps render through a fixed palette, label i -> label_palette()[i]:
 *
 *   0 (0, 0, 0)        4 (0, 130, 200)
 *   1 (230, 25, 75)    5 (245, 130, 48)
 *   2 (60, 180, 75)    6 (145, 30, 180)
 *   3 (255, 225, 25)   7 (70, 240, 240)
 */

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "qseg/image.hpp"

namespace qseg {

using Bytes = std::vector<std::uint8_t>;

enum class ImageFormat { png, jpeg };

/// Identifies PNG/JPEG from the leading magic bytes.
[[nodiscard]] std::optional<ImageFormat> sniff_format(std::span<const std::uint8_t> bytes) noexcept;

/// Decodes to 8-bit RGB; gray, paletted, 16-bit and alpha sources are
/// converted. Throws DecodeError on malformed input.
[[nodiscard]] RgbImage decode_image(std::span<const std::uint8_t> bytes);
[[nodiscard]] RgbImage decode_image(std::span<const std::uint8_t> bytes, ImageFormat format);

[[nodiscard]] Bytes encode_png(const RgbImage &image);
[[nodiscard]] Bytes encode_jpeg(const RgbImage &image, int quality = 95);

/// Y = 0.2125 R + 0.7154 G + 0.0721 B on channels scaled to [0, 1], clamped to [0, 1].
[[nodiscard]] GrayImage to_gray(const RgbImage &image);

/// Throws DecodeError for a broken stream and FormatError for values outside
/// the mask conventions (the message lists the offending values).
[[nodiscard]] GroundTruthMask load_mask(std::span<const std::uint8_t> bytes);

/// Single-channel 8-bit PNG with the raw 0/1/255 values.
[[nodiscard]] Bytes encode_mask_png(const GroundTruthMask &mask);

[[nodiscard]] const std::array<Rgb8, 8> &label_palette() noexcept;

/// Labels must be < 8. Throws InputError otherwise.
[[nodiscard]] RgbImage colorize_labelmap(const LabelMap &labels);
[[nodiscard]] Bytes render_labelmap(const LabelMap &labels);

/// Inverse of render_labelmap. Throws FormatError on a non-palette color.
[[nodiscard]] LabelMap parse_labelmap(std::span<const std::uint8_t> png_bytes);

/// Throws std::runtime_error if the file cannot be read or written.
[[nodiscard]] Bytes read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes);

} // namespace qseg
