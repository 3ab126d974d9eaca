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

#include "qseg/grayscale.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qseg/error.hpp"

namespace qseg {

namespace {

void check_gray_theta(double theta) {
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw InputError("theta must be finite and positive, got " + std::to_string(theta));
    }
}

void check_intensity(double intensity) {
    if (!(intensity >= 0.0 && intensity <= 1.0)) {
        throw InputError("intensity must be within [0, 1], got " + std::to_string(intensity));
    }
}

} // namespace

GrayProbabilities gray_probabilities(double intensity, double theta) {
    check_intensity(intensity);
    check_gray_theta(theta);
    const double c = std::cos(intensity * theta);
    return {.class0 = 0.5 * (1.0 + c), .class1 = 0.5 * (1.0 - c)};
}

Classification classify_gray_unchecked(double intensity, double theta) noexcept {
    const double c = std::cos(intensity * theta);
    if (c < -kBoundaryTolerance) {
        return {.label = SegmentLabel{1}, .probability = 0.5 * (1.0 - c)};
    }
    return {.label = SegmentLabel{0}, .probability = 0.5 * (1.0 + c)};
}

SegmentLabel classify_gray_pixel(double intensity, double theta) {
    check_intensity(intensity);
    check_gray_theta(theta);
    return classify_gray_unchecked(intensity, theta).label;
}

ThresholdSet thresholds_from_theta(double theta) {
    check_gray_theta(theta);
    ThresholdSet out;
    // 4k - 1 and 4k + 1 together enumerate every odd multiple of pi / (2*theta).
    const double step = kPi / (2.0 * theta);
    for (long odd = 1;; odd += 2) {
        const double t = static_cast<double>(odd) * step;
        if (t > 1.0 + kBoundaryTolerance) {
            break;
        }
        // A boundary on I = 1 splits off no interval; keep it only as the sole threshold.
        if (t >= 1.0 - kBoundaryTolerance && !out.empty()) {
            break;
        }
        out.thresholds.push_back(std::min(t, 1.0));
    }
    return out;
}

double theta_from_threshold(double i_th) {
    if (!(i_th > 0.0 && i_th <= 1.0)) {
        throw InputError("threshold must be within (0, 1], got " + std::to_string(i_th));
    }
    return kPi / (2.0 * i_th);
}

} // namespace qseg
