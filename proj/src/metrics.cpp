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

#include "qseg/metrics.hpp"

#include <bitset>
#include <string>
#include <vector>

#include "qseg/error.hpp"

namespace qseg {

namespace {

void check_dims(const LabelMap &pred, const GroundTruthMask &gt) {
    if (pred.width != gt.width || pred.height != gt.height) {
        throw InputError("prediction is " + std::to_string(pred.width) + "x" +
                         std::to_string(pred.height) + " but mask is " +
                         std::to_string(gt.width) + "x" + std::to_string(gt.height));
    }
}

double ratio_or_one(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

} // namespace

ConfusionCounts confusion(const LabelMap &pred, const GroundTruthMask &gt) {
    check_dims(pred, gt);
    ConfusionCounts c;
    for (std::size_t i = 0; i < pred.pixel_count(); ++i) {
        const std::uint8_t truth = gt.values[i];
        if (truth == mask_value::void_pixel) {
            continue;
        }
        const std::uint8_t p = pred.labels[i];
        if (p > 1) {
            throw InputError("binary prediction expected, found label " + std::to_string(p));
        }
        const bool fg_true = truth == mask_value::foreground;
        const bool fg_pred = p == 1;
        if (fg_true && fg_pred) {
            ++c.tp;
        } else if (fg_pred) {
            ++c.fp;
        } else if (fg_true) {
            ++c.fn;
        } else {
            ++c.tn;
        }
    }
    return c;
}

IouScores miou(const ConfusionCounts &counts) {
    if (counts.total() == 0) {
        throw MetricError("mIOU undefined: no non-void pixels");
    }
    IouScores s;
    s.iou_fg = ratio_or_one(counts.tp, counts.tp + counts.fp + counts.fn);
    s.iou_bg = ratio_or_one(counts.tn, counts.tn + counts.fn + counts.fp);
    s.miou = 0.5 * (s.iou_fg + s.iou_bg);
    return s;
}

EvaluationReport best_binary_assignment(const LabelMap &pred, const GroundTruthMask &gt) {
    check_dims(pred, gt);

    // Per-label pixel counts split by ground-truth class.
    std::array<std::uint64_t, 256> fg_count{};
    std::array<std::uint64_t, 256> bg_count{};
    std::bitset<256> present;
    for (std::size_t i = 0; i < pred.pixel_count(); ++i) {
        const std::uint8_t p = pred.labels[i];
        present.set(p);
        const std::uint8_t truth = gt.values[i];
        if (truth == mask_value::foreground) {
            ++fg_count[p];
        } else if (truth == mask_value::background) {
            ++bg_count[p];
        }
    }
    std::vector<std::uint8_t> labels;
    for (std::size_t l = 0; l < 256; ++l) {
        if (present.test(l)) {
            labels.push_back(static_cast<std::uint8_t>(l));
        }
    }
    if (labels.size() > 8) {
        throw InputError("best assignment supports at most 8 labels, found " +
                         std::to_string(labels.size()));
    }

    const std::size_t n = labels.size();
    EvaluationReport best;
    bool have_best = false;
    std::uint32_t best_mask = 0;
    // Bit (n-1-i) of `mask` holds label i's region, so increasing masks walk
    // assignments in lexicographic order.
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        ConfusionCounts c;
        for (std::size_t i = 0; i < n; ++i) {
            const bool fg = (mask >> (n - 1 - i)) & 1U;
            const std::uint8_t l = labels[i];
            if (fg) {
                c.tp += fg_count[l];
                c.fp += bg_count[l];
            } else {
                c.fn += fg_count[l];
                c.tn += bg_count[l];
            }
        }
        const IouScores s = miou(c);
        if (!have_best || s.miou > best.miou) {
            have_best = true;
            best.iou_fg = s.iou_fg;
            best.iou_bg = s.iou_bg;
            best.miou = s.miou;
            best_mask = mask;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        best.assignment[labels[i]] =
            ((best_mask >> (n - 1 - i)) & 1U) ? Region::foreground : Region::background;
    }
    return best;
}

LabelMap apply_assignment(const LabelMap &pred, const std::map<std::uint8_t, Region> &assignment) {
    LabelMap out(pred.width, pred.height);
    for (std::size_t i = 0; i < pred.pixel_count(); ++i) {
        const auto it = assignment.find(pred.labels[i]);
        out.labels[i] = it != assignment.end() && it->second == Region::foreground ? 1 : 0;
    }
    return out;
}

int count_segments(const LabelMap &pred) {
    if (pred.pixel_count() == 0) {
        throw InputError("label map is empty");
    }
    std::bitset<256> seen;
    for (std::uint8_t l : pred.labels) {
        seen.set(l);
    }
    return static_cast<int>(seen.count());
}

std::array<std::uint64_t, 8> label_histogram(const LabelMap &pred) {
    std::array<std::uint64_t, 8> h{};
    for (std::uint8_t l : pred.labels) {
        if (l < 8) {
            ++h[l];
        }
    }
    return h;
}

double label_transition_rate(const LabelMap &pred) {
    if (pred.width < 2 || pred.height == 0) {
        return 0.0;
    }
    std::uint64_t changes = 0;
    for (std::size_t y = 0; y < pred.height; ++y) {
        const std::uint8_t *row = pred.labels.data() + y * pred.width;
        for (std::size_t x = 1; x < pred.width; ++x) {
            changes += row[x] != row[x - 1] ? 1 : 0;
        }
    }
    const auto pairs = static_cast<double>((pred.width - 1) * pred.height);
    return static_cast<double>(changes) / pairs;
}

} // namespace qseg
