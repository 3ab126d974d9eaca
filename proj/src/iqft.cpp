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

#include "qseg/iqft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qseg/error.hpp"

namespace qseg {

namespace {

void check_theta(double theta, const char *name) {
    if (!std::isfinite(theta) || theta < 0.0 || theta > kMaxTheta) {
        throw InputError(std::string(name) + " must be finite and within [0, 8*pi], got " +
                         std::to_string(theta));
    }
}

void check_channel(double value, const char *name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw InputError(std::string("channel ") + name + " must be within [0, 1], got " +
                         std::to_string(value));
    }
}

BasisMatrix make_basis_matrix() {
    // omega^(-m) for m = 0..7, exact on the axes.
    const double h = std::sqrt(0.5);
    const std::array<Complex, 8> inv_roots = {
        Complex{1.0, 0.0}, Complex{h, -h},  Complex{0.0, -1.0}, Complex{-h, -h},
        Complex{-1.0, 0.0}, Complex{-h, h}, Complex{0.0, 1.0},  Complex{h, h},
    };
    BasisMatrix m{};
    for (std::size_t j = 0; j < 8; ++j) {
        for (std::size_t k = 0; k < 8; ++k) {
            m[j][k] = inv_roots[(j * k) % 8];
        }
    }
    return m;
}

} // namespace

void AngleParams::validate() const {
    check_theta(theta1, "theta1");
    check_theta(theta2, "theta2");
    check_theta(theta3, "theta3");
}

const BasisMatrix &basis_matrix() noexcept {
    static const BasisMatrix m = make_basis_matrix();
    return m;
}

PhaseTriple phase_encode_unchecked(NormalizedRgb pixel, const AngleParams &params) noexcept {
    return {.alpha = pixel.b * params.theta3,
            .beta = pixel.g * params.theta2,
            .gamma = pixel.r * params.theta1};
}

PhaseTriple phase_encode_rgb(NormalizedRgb pixel, const AngleParams &params) {
    check_channel(pixel.r, "R");
    check_channel(pixel.g, "G");
    check_channel(pixel.b, "B");
    params.validate();
    return phase_encode_unchecked(pixel, params);
}

PhaseVector8 phase_vector(const PhaseTriple &pt) noexcept {
    PhaseVector8 out;
    out.v[0] = Complex{1.0, 0.0};
    for (unsigned j = 1; j < 8; ++j) {
        const double a = (j >> 2) & 1U;
        const double b = (j >> 1) & 1U;
        const double c = j & 1U;
        out.v[j] = std::polar(1.0, pt.alpha * a + pt.beta * b + pt.gamma * c);
    }
    return out;
}

AmplitudeDistribution iqft_amplitudes(const PhaseVector8 &v) noexcept {
    const BasisMatrix &m = basis_matrix();
    AmplitudeDistribution out;
    for (std::size_t j = 0; j < 8; ++j) {
        // Plain real arithmetic: operator* on std::complex pays for inf/nan recovery.
        double re = 0.0;
        double im = 0.0;
        for (std::size_t k = 0; k < 8; ++k) {
            const Complex &a = m[j][k];
            const Complex &b = v.v[k];
            re += a.real() * b.real() - a.imag() * b.imag();
            im += a.real() * b.imag() + a.imag() * b.real();
        }
        out.amps[j] = Complex{re / 8.0, im / 8.0};
        out.probs[j] = std::clamp(std::norm(out.amps[j]), 0.0, 1.0);
    }
    return out;
}

Classification classify_phases(const PhaseTriple &pt) noexcept {
    const AmplitudeDistribution dist = iqft_amplitudes(phase_vector(pt));
    const std::size_t idx = argmax_lowest(dist.probs);
    return {.label = SegmentLabel{static_cast<std::uint8_t>(idx)}, .probability = dist.probs[idx]};
}

SegmentLabel classify_rgb_pixel(NormalizedRgb pixel, const AngleParams &params) {
    return classify_phases(phase_encode_rgb(pixel, params)).label;
}

} // namespace qseg
