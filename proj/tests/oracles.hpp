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

// Independent reference computations used only by the tests. Nothing here
// calls into the code paths it checks.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qseg/image.hpp"

namespace qseg::testing {

inline constexpr double kTestPi = 3.14159265358979323846;

/// Naive 8-point inverse DFT of exp(i(alpha*a + beta*b + gamma*c)), built
/// with std::polar for every twiddle.
inline std::array<std::complex<double>, 8> naive_inverse_dft(double alpha, double beta,
                                                             double gamma) {
    std::array<std::complex<double>, 8> v{};
    for (int k = 0; k < 8; ++k) {
        const int a = (k >> 2) & 1;
        const int b = (k >> 1) & 1;
        const int c = k & 1;
        v[k] = std::polar(1.0, alpha * a + beta * b + gamma * c);
    }
    std::array<std::complex<double>, 8> out{};
    for (int j = 0; j < 8; ++j) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < 8; ++k) {
            acc += std::polar(1.0, -2.0 * kTestPi * j * k / 8.0) * v[k];
        }
        out[j] = acc / 8.0;
    }
    return out;
}

/// The input is a product state, so each probability factorizes into
/// cos^2 terms: |A_x|^2 = prod over qubits cos^2((phase - 2*pi*x*w/8) / 2)
/// with qubit weights w = 4, 2, 1 for alpha, beta, gamma.
inline std::array<double, 8> factorized_probs(double alpha, double beta, double gamma) {
    std::array<double, 8> p{};
    for (int x = 0; x < 8; ++x) {
        const double ca = std::cos(0.5 * (alpha - 2.0 * kTestPi * x * 4 / 8.0));
        const double cb = std::cos(0.5 * (beta - 2.0 * kTestPi * x * 2 / 8.0));
        const double cc = std::cos(0.5 * (gamma - 2.0 * kTestPi * x * 1 / 8.0));
        p[x] = ca * ca * cb * cb * cc * cc;
    }
    return p;
}

/// Grayscale class probabilities straight from the 2x2 amplitude form
/// [P, Q] = 1/2 [[1, 1], [1, -1]] [1, e^{i gamma}].
inline std::array<double, 2> gray_matrix_probs(double intensity, double theta) {
    const std::complex<double> e = std::polar(1.0, intensity * theta);
    const std::complex<double> p = 0.5 * (1.0 + e);
    const std::complex<double> q = 0.5 * (1.0 - e);
    return {std::norm(p), std::norm(q)};
}

/// ((1 +- cos)^2 + sin^2) / 4 as written out per class.
inline std::array<double, 2> gray_expanded_probs(double intensity, double theta) {
    const double c = std::cos(intensity * theta);
    const double s = std::sin(intensity * theta);
    return {((1 + c) * (1 + c) + s * s) / 4.0, ((1 - c) * (1 - c) + s * s) / 4.0};
}

/// Between-class variance of every split, computed from scratch per candidate.
/// Returns the first (lowest) maximizing bin.
inline int brute_force_otsu_bin(const std::array<std::uint64_t, 256> &counts) {
    int best = -1;
    double best_score = -1.0;
    for (int t = 0; t < 255; ++t) {
        std::uint64_t w0 = 0, w1 = 0, s0 = 0, s1 = 0;
        for (int i = 0; i < 256; ++i) {
            if (i <= t) {
                w0 += counts[i];
                s0 += counts[i] * static_cast<std::uint64_t>(i);
            } else {
                w1 += counts[i];
                s1 += counts[i] * static_cast<std::uint64_t>(i);
            }
        }
        if (w0 == 0 || w1 == 0) {
            continue;
        }
        const double d = static_cast<double>(s0) / static_cast<double>(w0) -
                         static_cast<double>(s1) / static_cast<double>(w1);
        const double score = static_cast<double>(w0) * static_cast<double>(w1) * d * d;
        if (score > best_score) {
            best_score = score;
            best = t;
        }
    }
    return best;
}

inline RgbImage random_rgb_image(std::size_t w, std::size_t h, std::mt19937_64 &rng) {
    RgbImage img(w, h);
    std::uniform_int_distribution<int> d(0, 255);
    for (auto &v : img.data) {
        v = static_cast<std::uint8_t>(d(rng));
    }
    return img;
}

/// Smooth blobs on a gradient plus small noise: closer to a photo than iid pixels.
inline RgbImage blob_rgb_image(std::size_t w, std::size_t h, std::mt19937_64 &rng) {
    RgbImage img(w, h);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 3.0);
    const double cx = u(rng) * w, cy = u(rng) * h, r = 0.2 * w + 0.3 * w * u(rng);
    const double fg[3] = {255 * u(rng), 255 * u(rng), 255 * u(rng)};
    const double bg0[3] = {255 * u(rng), 255 * u(rng), 255 * u(rng)};
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const bool in = (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r;
            for (int c = 0; c < 3; ++c) {
                const double base = in ? fg[c] : bg0[c] * (0.7 + 0.3 * x / double(w));
                const double v = std::clamp(std::round(base + noise(rng)), 0.0, 255.0);
                img.data[3 * (y * w + x) + c] = static_cast<std::uint8_t>(v);
            }
        }
    }
    return img;
}

} // namespace qseg::testing
