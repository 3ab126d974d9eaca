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
 * Comparison segmenters: global Otsu thresholding on a 256-level histogram
 * and k-means clustering of RGB vectors (greedy k-means++ seeding followed by
 * Lloyd iterations).
 */

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qseg/image.hpp"

namespace qseg {

/// Counts over 256 gray levels; intensity I falls in bin round(255 * I),
/// whose center is bin / 255.
struct Histogram256 {
    std::array<std::uint64_t, 256> counts{};

    [[nodiscard]] std::uint64_t total() const noexcept;
};

[[nodiscard]] Histogram256 histogram256(const GrayImage &image);

/// Bin-center threshold t maximizing the between-class variance when bins
/// with center <= t form the background. Ties resolve to the lower t.
/// Throws InputError if fewer than two bins are populated.
[[nodiscard]] double otsu_threshold(const Histogram256 &hist);

/// 1 where intensity > t, else 0.
[[nodiscard]] LabelMap threshold_segment(const GrayImage &image, double t);

using Point3 = std::array<double, 3>;

struct KMeansOptions {
    int max_iterations = 300;
    /// Stop once no centroid moves farther than this (Euclidean).
    double tolerance = 1e-4;
};

struct KMeansResult {
    std::vector<std::uint8_t> labels;
    std::vector<Point3> centroids;
    int iterations = 0;
    double inertia = 0.0;
    /// Inertia after every assignment step, in order.
    std::vector<double> inertia_history;
};

/// Deterministic for a fixed seed. Requires 1 <= k <= 255 and k <= pixel count,
/// otherwise throws InputError.
[[nodiscard]] KMeansResult kmeans_segment(std::span<const Point3> pixels, int k,
                                          std::uint64_t seed, const KMeansOptions &options = {});

/// Clusters the normalized RGB vectors of an image; labels come back as a map.
[[nodiscard]] LabelMap kmeans_segment_image(const RgbImage &image, int k, std::uint64_t seed,
                                            const KMeansOptions &options = {});

} // namespace qseg
