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

#include "qseg/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qseg/error.hpp"
#include "qseg/random.hpp"

namespace qseg {

std::uint64_t Histogram256::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram256 histogram256(const GrayImage &image) {
    Histogram256 h;
    for (double v : image.data) {
        const double level = std::clamp(v, 0.0, 1.0) * 255.0;
        ++h.counts[static_cast<std::size_t>(std::lround(level))];
    }
    return h;
}

double otsu_threshold(const Histogram256 &hist) {
    const auto populated =
        std::count_if(hist.counts.begin(), hist.counts.end(), [](auto c) { return c > 0; });
    if (populated < 2) {
        throw InputError("Otsu threshold undefined: image has a single gray level");
    }

    // Integer moments keep every candidate's score independent of summation order.
    std::uint64_t total_w = 0;
    std::uint64_t total_s = 0;
    for (std::size_t i = 0; i < 256; ++i) {
        total_w += hist.counts[i];
        total_s += hist.counts[i] * i;
    }

    std::uint64_t w0 = 0;
    std::uint64_t s0 = 0;
    double best_score = -1.0;
    std::size_t best_bin = 0;
    for (std::size_t i = 0; i < 255; ++i) {
        w0 += hist.counts[i];
        s0 += hist.counts[i] * i;
        const std::uint64_t w1 = total_w - w0;
        if (w0 == 0 || w1 == 0) {
            continue;
        }
        const double mean0 = static_cast<double>(s0) / static_cast<double>(w0);
        const double mean1 = static_cast<double>(total_s - s0) / static_cast<double>(w1);
        const double d = mean0 - mean1;
        const double score = static_cast<double>(w0) * static_cast<double>(w1) * d * d;
        if (score > best_score) {
            best_score = score;
            best_bin = i;
        }
    }
    return static_cast<double>(best_bin) / 255.0;
}

LabelMap threshold_segment(const GrayImage &image, double t) {
    LabelMap out(image.width, image.height);
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        out.labels[i] = image.data[i] > t ? 1 : 0;
    }
    return out;
}

namespace {

double sq_dist(const Point3 &a, const Point3 &b) noexcept {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
}

/// Nearest centroid (lowest index on ties) and its squared distance.
std::pair<std::size_t, double> nearest(const Point3 &p, const std::vector<Point3> &centroids) {
    std::size_t best = 0;
    double best_d = sq_dist(p, centroids[0]);
    for (std::size_t c = 1; c < centroids.size(); ++c) {
        const double d = sq_dist(p, centroids[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return {best, best_d};
}

std::vector<Point3> seed_plus_plus(std::span<const Point3> pixels, std::size_t k, Rng &rng) {
    const std::size_t n = pixels.size();
    const std::size_t local_trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));

    std::vector<Point3> centers;
    centers.reserve(k);
    centers.push_back(pixels[rng.below(n)]);

    std::vector<double> closest(n);
    for (std::size_t i = 0; i < n; ++i) {
        closest[i] = sq_dist(pixels[i], centers[0]);
    }
    double potential = std::accumulate(closest.begin(), closest.end(), 0.0);

    std::vector<double> cumulative(n);
    std::vector<double> trial(n);
    std::vector<double> best_trial(n);
    while (centers.size() < k) {
        std::partial_sum(closest.begin(), closest.end(), cumulative.begin());
        std::size_t best_candidate = 0;
        double best_potential = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < local_trials; ++t) {
            const double target = rng.uniform() * potential;
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
            std::size_t candidate = it == cumulative.end()
                                        ? n - 1
                                        : static_cast<std::size_t>(it - cumulative.begin());
            double pot = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                trial[i] = std::min(closest[i], sq_dist(pixels[i], pixels[candidate]));
                pot += trial[i];
            }
            if (pot < best_potential) {
                best_potential = pot;
                best_candidate = candidate;
                best_trial.swap(trial);
            }
        }
        centers.push_back(pixels[best_candidate]);
        closest.swap(best_trial);
        potential = best_potential;
    }
    return centers;
}

} // namespace

KMeansResult kmeans_segment(std::span<const Point3> pixels, int k, std::uint64_t seed,
                            const KMeansOptions &options) {
    if (k < 1 || k > 255) {
        throw InputError("k must be within [1, 255], got " + std::to_string(k));
    }
    const std::size_t n = pixels.size();
    const auto kk = static_cast<std::size_t>(k);
    if (n < kk) {
        throw InputError("k = " + std::to_string(k) + " exceeds the pixel count " +
                         std::to_string(n));
    }

    Rng rng(seed);
    KMeansResult result;
    result.centroids = seed_plus_plus(pixels, kk, rng);
    result.labels.assign(n, 0);

    auto assign = [&]() {
        bool changed = false;
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto [c, d] = nearest(pixels[i], result.centroids);
            changed |= result.labels[i] != c;
            result.labels[i] = static_cast<std::uint8_t>(c);
            inertia += d;
        }
        result.inertia = inertia;
        result.inertia_history.push_back(inertia);
        return changed;
    };

    assign();
    std::vector<Point3> sums(kk);
    std::vector<std::size_t> sizes(kk);
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        result.iterations = iter;
        std::fill(sums.begin(), sums.end(), Point3{0.0, 0.0, 0.0});
        std::fill(sizes.begin(), sizes.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto &s = sums[result.labels[i]];
            s[0] += pixels[i][0];
            s[1] += pixels[i][1];
            s[2] += pixels[i][2];
            ++sizes[result.labels[i]];
        }

        double max_shift = 0.0;
        for (std::size_t c = 0; c < kk; ++c) {
            Point3 next = result.centroids[c];
            if (sizes[c] > 0) {
                const double inv = 1.0 / static_cast<double>(sizes[c]);
                next = {sums[c][0] * inv, sums[c][1] * inv, sums[c][2] * inv};
            } else {
                // Empty cluster: move it onto the point worst served by its centroid.
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = sq_dist(pixels[i], result.centroids[result.labels[i]]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                next = pixels[far];
            }
            max_shift = std::max(max_shift, std::sqrt(sq_dist(next, result.centroids[c])));
            result.centroids[c] = next;
        }

        const bool changed = assign();
        if (!changed || max_shift < options.tolerance) {
            break;
        }
    }
    return result;
}

LabelMap kmeans_segment_image(const RgbImage &image, int k, std::uint64_t seed,
                              const KMeansOptions &options) {
    std::vector<Point3> pts(image.pixel_count());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i] = {image.data[3 * i] / 255.0, image.data[3 * i + 1] / 255.0,
                  image.data[3 * i + 2] / 255.0};
    }
    KMeansResult r = kmeans_segment(pts, k, seed, options);
    LabelMap out(image.width, image.height);
    out.labels = std::move(r.labels);
    return out;
}

} // namespace qseg
