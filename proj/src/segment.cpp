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

#include "qseg/segment.hpp"

#include <cmath>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qseg/error.hpp"

namespace qseg {

namespace {

void check_nonempty(std::size_t w, std::size_t h) {
    if (w == 0 || h == 0) {
        throw InputError("image is empty");
    }
}

NormalizedRgb channels(const RgbImage &image, std::size_t i, bool normalize) noexcept {
    const double scale = normalize ? 1.0 / 255.0 : 1.0;
    return {.r = image.data[3 * i] * scale,
            .g = image.data[3 * i + 1] * scale,
            .b = image.data[3 * i + 2] * scale};
}

} // namespace

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_num_threads(int n) noexcept {
#ifdef _OPENMP
    omp_set_num_threads(n < 1 ? 1 : n);
#else
    (void)n;
#endif
}

SegmentationResult segment_rgb_detailed(const RgbImage &image, const AngleParams &params,
                                        bool normalize) {
    check_nonempty(image.width, image.height);
    params.validate();

    SegmentationResult out{LabelMap(image.width, image.height),
                           std::vector<double>(image.pixel_count())};
    const auto n = static_cast<std::int64_t>(image.pixel_count());
    std::uint8_t *labels = out.labels.labels.data();
    double *confidence = out.confidence.data();

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const Classification c =
            classify_phases(phase_encode_unchecked(channels(image, idx, normalize), params));
        labels[idx] = c.label.value;
        confidence[idx] = c.probability;
    }
    return out;
}

LabelMap segment_rgb(const RgbImage &image, const AngleParams &params, bool normalize) {
    return segment_rgb_detailed(image, params, normalize).labels;
}

SegmentationResult segment_gray_detailed(const GrayImage &image, double theta) {
    check_nonempty(image.width, image.height);
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw InputError("theta must be finite and positive");
    }
    for (double v : image.data) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InputError("gray intensities must lie in [0, 1]");
        }
    }

    SegmentationResult out{LabelMap(image.width, image.height),
                           std::vector<double>(image.pixel_count())};
    const auto n = static_cast<std::int64_t>(image.pixel_count());
    const double *src = image.data.data();
    std::uint8_t *labels = out.labels.labels.data();
    double *confidence = out.confidence.data();

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const Classification c = classify_gray_unchecked(src[i], theta);
        labels[i] = c.label.value;
        confidence[i] = c.probability;
    }
    return out;
}

LabelMap segment_gray(const GrayImage &image, double theta) {
    return segment_gray_detailed(image, theta).labels;
}

namespace reference {

LabelMap segment_rgb_serial(const RgbImage &image, const AngleParams &params, bool normalize) {
    check_nonempty(image.width, image.height);
    params.validate();
    LabelMap out(image.width, image.height);
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        const NormalizedRgb px = channels(image, i, normalize);
        out.labels[i] = normalize ? classify_rgb_pixel(px, params).value
                                  : classify_phases(phase_encode_unchecked(px, params)).label.value;
    }
    return out;
}

LabelMap segment_gray_serial(const GrayImage &image, double theta) {
    check_nonempty(image.width, image.height);
    LabelMap out(image.width, image.height);
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        out.labels[i] = classify_gray_pixel(image.data[i], theta).value;
    }
    return out;
}

} // namespace reference

} // namespace qseg
