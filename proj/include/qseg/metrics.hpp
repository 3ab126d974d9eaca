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
 * Binary segmentation scoring: confusion counts over non-void pixels,
 * foreground/background IOU and their mean, plus the search that maps a
 * multi-label prediction onto foreground/background.
 */

#pragma once

#include <array>
#include <cstdint>
#include <map>

#include "qseg/image.hpp"

namespace qseg {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    [[nodiscard]] std::uint64_t total() const noexcept { return tp + fp + fn + tn; }

    bool operator==(const ConfusionCounts &) const = default;
};

struct IouScores {
    double iou_fg = 0.0;
    double iou_bg = 0.0;
    double miou = 0.0;
};

enum class Region : std::uint8_t { background = 0, foreground = 1 };

struct EvaluationReport {
    double iou_fg = 0.0;
    double iou_bg = 0.0;
    double miou = 0.0;
    /// Predicted label -> region, for every label present in the prediction.
    std::map<std::uint8_t, Region> assignment;
    double runtime_ms = 0.0;
};

/// Counts over non-void pixels of a binary prediction (label 1 = foreground).
/// Throws InputError on size mismatch or a label other than 0/1.
[[nodiscard]] ConfusionCounts confusion(const LabelMap &pred, const GroundTruthMask &gt);

/// IOU_fg = tp/(tp+fp+fn), IOU_bg = tn/(tn+fn+fp); a class absent from both
/// prediction and ground truth scores 1. Throws MetricError when all counts are 0.
[[nodiscard]] IouScores miou(const ConfusionCounts &counts);

/// Tries every mapping of the (at most 8) labels present in `pred` to
/// foreground/background and reports the one with the highest mIOU. Ties go
/// to the lexicographically smallest assignment over ascending labels, with
/// background < foreground.
[[nodiscard]] EvaluationReport best_binary_assignment(const LabelMap &pred,
                                                      const GroundTruthMask &gt);

/// Prediction relabelled through `assignment` (foreground -> 1).
[[nodiscard]] LabelMap apply_assignment(const LabelMap &pred,
                                        const std::map<std::uint8_t, Region> &assignment);

/// Distinct label values present. Throws InputError for an empty map.
[[nodiscard]] int count_segments(const LabelMap &pred);

/// Pixels per label value 0..7; larger values are not counted.
[[nodiscard]] std::array<std::uint64_t, 8> label_histogram(const LabelMap &pred);

/// Fraction of horizontally adjacent pixel pairs whose labels differ; 0 when
/// the map is narrower than two pixels.
[[nodiscard]] double label_transition_rate(const LabelMap &pred);

} // namespace qseg
