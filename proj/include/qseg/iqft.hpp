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
 * Phase-encoding pixel classifier built on the 3-qubit inverse quantum
 * Fourier transform.
 *
 * A normalized RGB pixel is turned into three relative phases
 * (gamma = R*theta1, beta = G*theta2, alpha = B*theta3). These phases define
 * the 8-entry unit-modulus vector v_j = exp(i(alpha*a + beta*b + gamma*c)),
 * j = (abc)_2 with a the most significant bit. The inverse 8-point DFT of v
 * gives amplitudes P..W over |000>..|111>, and the pixel is labelled with
 * the basis state of highest probability.
 */

#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace qseg {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Upper sanity bound on any angle parameter.
inline constexpr double kMaxTheta = 8.0 * kPi;

/// Probabilities within this distance of the maximum count as tied.
inline constexpr double kTieTolerance = 1e-12;

/// Phase-scaling parameters. theta1 scales red, theta2 green, theta3 blue.
/// Grayscale mode uses theta1 only.
struct AngleParams {
    double theta1 = kPi;
    double theta2 = kPi;
    double theta3 = kPi;

    /// Throws InputError unless every theta is finite and in [0, 8*pi].
    void validate() const;

    [[nodiscard]] static AngleParams uniform(double theta) noexcept {
        return {theta, theta, theta};
    }

    bool operator==(const AngleParams &) const = default;
};

struct PhaseTriple {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    bool operator==(const PhaseTriple &) const = default;
};

/// Normalized channel values, each expected in [0, 1].
struct NormalizedRgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

struct PhaseVector8 {
    std::array<Complex, 8> v{};
};

/// The constant 8x8 matrix M[j][k] = omega^(-(j*k mod 8)), omega = exp(i*2*pi/8).
/// Entries are exact on the axes (0 and +-1 rather than cos(pi/2) residue).
/// The applied operator is M / 8.
using BasisMatrix = std::array<std::array<Complex, 8>, 8>;

[[nodiscard]] const BasisMatrix &basis_matrix() noexcept;

/// Amplitudes P, Q, R, S, T, U, V, W (|000>..|111>) and their squared moduli.
struct AmplitudeDistribution {
    std::array<Complex, 8> amps{};
    std::array<double, 8> probs{};
};

struct SegmentLabel {
    std::uint8_t value = 0;

    auto operator<=>(const SegmentLabel &) const = default;
};

/// Label plus the probability of the winning basis state.
struct Classification {
    SegmentLabel label;
    double probability = 0.0;
};

/// gamma = R*theta1, beta = G*theta2, alpha = B*theta3.
/// Throws InputError for channels outside [0, 1] or invalid params.
[[nodiscard]] PhaseTriple phase_encode_rgb(NormalizedRgb pixel, const AngleParams &params);

/// Same mapping without domain checks; used for raw (0..255) intensities.
[[nodiscard]] PhaseTriple phase_encode_unchecked(NormalizedRgb pixel,
                                                 const AngleParams &params) noexcept;

/// [1, e^{i g}, e^{i b}, e^{i(b+g)}, e^{i a}, e^{i(a+g)}, e^{i(a+b)}, e^{i(a+b+g)}].
[[nodiscard]] PhaseVector8 phase_vector(const PhaseTriple &pt) noexcept;

/// amps = (M / 8) * v, probs = |amps|^2 clamped to [0, 1].
[[nodiscard]] AmplitudeDistribution iqft_amplitudes(const PhaseVector8 &v) noexcept;

/// Index of the largest probability. Entries within kTieTolerance of the
/// maximum are tied and the lowest index wins.
template <std::size_t N>
[[nodiscard]] constexpr std::size_t argmax_lowest(const std::array<double, N> &probs) noexcept {
    double best = probs[0];
    for (std::size_t i = 1; i < N; ++i) {
        if (probs[i] > best) {
            best = probs[i];
        }
    }
    for (std::size_t i = 0; i < N; ++i) {
        if (probs[i] >= best - kTieTolerance) {
            return i;
        }
    }
    return 0;
}

/// Full pipeline for one pixel from already-computed phases.
[[nodiscard]] Classification classify_phases(const PhaseTriple &pt) noexcept;

/// Throws InputError for channels outside [0, 1] or invalid params.
[[nodiscard]] SegmentLabel classify_rgb_pixel(NormalizedRgb pixel, const AngleParams &params);

} // namespace qseg
