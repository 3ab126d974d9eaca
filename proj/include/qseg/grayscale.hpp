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
 * Single-qubit variant for grayscale images and the threshold algebra it
 * implies. With gamma = I*theta the two class probabilities reduce to
 * (1 + cos(I*theta)) / 2 and (1 - cos(I*theta)) / 2, so the class boundary
 * sits wherever cos(I*theta) = 0, i.e. at I = m*pi / (2*theta) for odd m.
 */

#pragma once

#include <vector>

#include "qseg/iqft.hpp"

namespace qseg {

/// |cos(I*theta)| at or below this is treated as exactly on a class boundary.
inline constexpr double kBoundaryTolerance = 1e-12;

struct GrayProbabilities {
    double class0 = 1.0;
    double class1 = 0.0;
};

/// Sorted, strictly increasing thresholds in (0, 1].
struct ThresholdSet {
    std::vector<double> thresholds;

    [[nodiscard]] bool empty() const noexcept { return thresholds.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return thresholds.size(); }
};

/// Throws InputError for I outside [0, 1] or non-positive / non-finite theta.
[[nodiscard]] GrayProbabilities gray_probabilities(double intensity, double theta);

/// Class 0 iff cos(I*theta) >= 0; the boundary itself belongs to class 0.
[[nodiscard]] SegmentLabel classify_gray_pixel(double intensity, double theta);

/// Unchecked kernel used by segment_gray.
[[nodiscard]] Classification classify_gray_unchecked(double intensity, double theta) noexcept;

/// Every I_th = (4k +- 1) * pi / (2*theta) with 0 < I_th < 1, ascending.
/// A boundary exactly on I = 1 is listed only when it is the first one
/// (theta = pi/2). Empty for theta < pi/2. Throws InputError for theta <= 0 or non-finite.
[[nodiscard]] ThresholdSet thresholds_from_theta(double theta);

/// theta = pi / (2 * i_th); i_th becomes the smallest threshold of that theta.
/// Throws InputError unless 0 < i_th <= 1.
[[nodiscard]] double theta_from_threshold(double i_th);

} // namespace qseg
