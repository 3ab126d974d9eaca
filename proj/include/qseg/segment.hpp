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
 * Whole-image segmentation. The kernels here split rows across OpenMP
 * threads; `qseg::reference` keeps a plain serial loop over the checked
 * per-pixel API for testing. Every pixel is an independent pure function
 * call, so both paths produce bit-identical label maps.
 */

#pragma once

#include <vector>

#include "qseg/grayscale.hpp"
#include "qseg/image.hpp"
#include "qseg/iqft.hpp"

namespace qseg {

struct SegmentationResult {
    LabelMap labels;
    /// Probability of the winning class at each pixel.
    std::vector<double> confidence;
};

/// Labels 0..7 per pixel. With `normalize` off the raw 0..255 channel values
/// multiply theta directly. Throws InputError for an empty image or invalid params.
[[nodiscard]] SegmentationResult segment_rgb_detailed(const RgbImage &image,
                                                      const AngleParams &params,
                                                      bool normalize = true);

[[nodiscard]] LabelMap segment_rgb(const RgbImage &image, const AngleParams &params,
                                   bool normalize = true);

/// Labels 0..1 per pixel. Throws InputError for an empty image, theta <= 0
/// or intensities outside [0, 1].
[[nodiscard]] SegmentationResult segment_gray_detailed(const GrayImage &image, double theta);

[[nodiscard]] LabelMap segment_gray(const GrayImage &image, double theta);

/// Number of OpenMP threads the kernels will use; 1 when built without OpenMP.
[[nodiscard]] int max_threads() noexcept;

/// Sets the OpenMP thread count for subsequent kernel calls (n >= 1).
void set_num_threads(int n) noexcept;

namespace reference {

[[nodiscard]] LabelMap segment_rgb_serial(const RgbImage &image, const AngleParams &params,
                                          bool normalize = true);

[[nodiscard]] LabelMap segment_gray_serial(const GrayImage &image, double theta);

} // namespace reference

} // namespace qseg
