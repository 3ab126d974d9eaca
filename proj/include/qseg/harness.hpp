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
 * Experiment drivers behind the `qseg` command line and the HTTP service:
 * single-image segmentation with a JSON sidecar, the random/grid segment
 * count experiment, theta sweeps, the normalization ablation and dataset
 * benchmarks against Otsu and k-means.
 */

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qseg/image.hpp"
#include "qseg/iqft.hpp"
#include "qseg/metrics.hpp"

namespace qseg::harness {

enum class ColorMode { rgb, gray };

[[nodiscard]] ColorMode parse_mode(const std::string &text);
[[nodiscard]] std::string to_string(ColorMode mode);

/// Angle parameters together with the text they were parsed from.
struct ThetaSpec {
    AngleParams params = AngleParams::uniform(kPi);
    std::array<std::string, 3> text{"pi", "pi", "pi"};

    /// Parses three angle strings. Throws InputError on bad syntax or range.
    [[nodiscard]] static ThetaSpec parse(const std::string &t1, const std::string &t2,
                                         const std::string &t3);
    [[nodiscard]] static ThetaSpec uniform(const std::string &t);
};

// ---------------------------------------------------------------------------
// segment

struct SegmentRequest {
    ColorMode mode = ColorMode::rgb;
    ThetaSpec theta;
    bool normalize = true;
};

struct SegmentOutcome {
    LabelMap labels;
    /// Mean winning-class probability per label present.
    std::array<double, 8> mean_confidence{};
    std::array<std::uint64_t, 8> histogram{};
    int segment_count = 0;
    double runtime_ms = 0.0;
};

/// The one segmentation entry point shared by the CLI and the service.
/// Gray mode converts the image and uses theta1 (> 0).
[[nodiscard]] SegmentOutcome segment_image(const RgbImage &image, const SegmentRequest &request);

/// {width, height, mode, normalize, theta, label_histogram, segment_count, runtime_ms}
[[nodiscard]] nlohmann::json segment_sidecar(const RgbImage &image, const SegmentRequest &request,
                                             const SegmentOutcome &outcome);

/// Decodes `input`, segments it and writes the rendered label map to `out`
/// plus the sidecar next to it (same stem, `.json`). Nothing is written if
/// decoding or segmentation fails.
SegmentOutcome run_segment(const std::filesystem::path &input, const SegmentRequest &request,
                           const std::filesystem::path &out);

[[nodiscard]] std::filesystem::path sidecar_path(const std::filesystem::path &out);

// ---------------------------------------------------------------------------
// table2: distinct labels reachable for each angle configuration

struct Table2Config {
    std::string name;
    AngleParams params;
    /// Maximum segment count the configuration is known to produce.
    int expected = 0;
};

[[nodiscard]] const std::vector<Table2Config> &table2_configs();

struct Table2Options {
    /// Lattice step in (0, 1); when set the lattice replaces random sampling.
    std::optional<double> grid_step;
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
};

struct Table2Row {
    Table2Config config;
    int count = 0;
    std::array<std::uint64_t, 8> histogram{};
};

/// Throws InputError for samples == 0 or a step outside (0, 1).
[[nodiscard]] std::vector<Table2Row> run_table2(const Table2Options &options);

/// Lattice coordinates for a grid step: 0, step, 2*step, ..., 1.
[[nodiscard]] std::vector<double> grid_axis(double step);

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
    double theta = 0.0;
    std::string text;
    int segment_count = 0;
    std::optional<EvaluationReport> evaluation;
};

struct SweepReport {
    /// Sorted by mIOU (descending, stable) when a mask was given, else input order.
    std::vector<SweepRow> rows;
    std::optional<std::size_t> best;
};

/// Segments `image` once per theta (theta1 = theta2 = theta3 in RGB mode).
/// Throws InputError for an empty theta list or image/mask size mismatch.
[[nodiscard]] SweepReport run_sweep(const RgbImage &image, const std::optional<GroundTruthMask> &mask,
                                    const std::vector<std::string> &thetas, ColorMode mode,
                                    bool normalize);

[[nodiscard]] nlohmann::json to_json(const SweepReport &report);

/// Splits a comma-separated theta list, dropping empty items.
[[nodiscard]] std::vector<std::string> split_list(const std::string &text);

// ---------------------------------------------------------------------------
// evaluation against ground truth

enum class Method { iqft, iqft_gray, otsu, kmeans };

[[nodiscard]] Method parse_method(const std::string &text);
[[nodiscard]] std::string to_string(Method method);

struct MethodParams {
    ThetaSpec theta;
    bool normalize = true;
    int k = 2;
    std::uint64_t seed = 0;
};

struct MethodOutcome {
    Method method = Method::iqft;
    EvaluationReport report;
    int segment_count = 0;
    LabelMap labels;
};

/// Runs one segmenter and scores it with best_binary_assignment; the
/// report's runtime covers segmentation only.
[[nodiscard]] MethodOutcome evaluate_method(const RgbImage &image, const GroundTruthMask &mask,
                                            Method method, const MethodParams &params);

[[nodiscard]] nlohmann::json to_json(const EvaluationReport &report);

// ---------------------------------------------------------------------------
// bench

struct ManifestEntry {
    std::string id;
    std::filesystem::path image;
    std::optional<std::filesystem::path> mask;
};

struct DatasetManifest {
    std::filesystem::path root;
    std::vector<ManifestEntry> entries;
};

/// Reads {root, entries: [{id, image, mask?}]}. A relative root resolves
/// against the manifest's directory. Throws FormatError on duplicate ids or
/// missing files.
[[nodiscard]] DatasetManifest load_manifest(const std::filesystem::path &path);

struct BenchRow {
    std::string id;
    Method method = Method::iqft;
    std::string theta;
    double miou = 0.0;
    double iou_fg = 0.0;
    double iou_bg = 0.0;
    double runtime_ms = 0.0;
    int segment_count = 0;
};

struct BenchAggregate {
    Method method = Method::iqft;
    std::size_t images = 0;
    double average_miou = 0.0;
    double total_runtime_ms = 0.0;
    /// Fraction of images where IQFT scores strictly higher; absent for IQFT itself
    /// or when IQFT was not run.
    std::optional<double> iqft_win_rate;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<BenchAggregate> aggregates;
    std::vector<std::string> warnings;
};

struct BenchOptions {
    std::vector<Method> methods{Method::iqft, Method::otsu, Method::kmeans};
    MethodParams params;
};

[[nodiscard]] BenchReport run_bench(const DatasetManifest &manifest, const BenchOptions &options);

/// Deterministic per-image table:
/// id,method,theta,miou,iou_fg,iou_bg,segment_count
[[nodiscard]] std::string bench_csv(const BenchReport &report);

/// Rows (with runtime), aggregates and warnings.
[[nodiscard]] nlohmann::json to_json(const BenchReport &report);

// ---------------------------------------------------------------------------
// normalization ablation

struct AblationRow {
    std::string id;
    double normalized_rate = 0.0;
    double raw_rate = 0.0;
};

[[nodiscard]] AblationRow run_ablation(const std::string &id, const RgbImage &image,
                                       const AngleParams &params);

// ---------------------------------------------------------------------------
// thresholds

/// Table of thresholds for an angle, e.g. "0.2857, 0.8571".
[[nodiscard]] std::string format_thresholds(double theta);

} // namespace qseg::harness
