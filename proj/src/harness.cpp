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

#include "qseg/harness.hpp"

#include <algorithm>
#include <bitset>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qseg/baselines.hpp"
#include "qseg/error.hpp"
#include "qseg/grayscale.hpp"
#include "qseg/imageio.hpp"
#include "qseg/random.hpp"
#include "qseg/segment.hpp"
#include "qseg/theta.hpp"

namespace qseg::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_same_size(const RgbImage &image, const GroundTruthMask &mask) {
    if (image.width != mask.width || image.height != mask.height) {
        throw InputError(fmt::format("image is {}x{} but mask is {}x{}", image.width,
                                     image.height, mask.width, mask.height));
    }
}

double gray_theta(const ThetaSpec &theta) {
    if (!(theta.params.theta1 > 0.0)) {
        throw InputError("grayscale mode needs theta > 0");
    }
    return theta.params.theta1;
}

} // namespace

ColorMode parse_mode(const std::string &text) {
    if (text == "rgb") {
        return ColorMode::rgb;
    }
    if (text == "gray" || text == "grey") {
        return ColorMode::gray;
    }
    throw InputError("mode must be rgb or gray, got '" + text + "'");
}

std::string to_string(ColorMode mode) { return mode == ColorMode::rgb ? "rgb" : "gray"; }

ThetaSpec ThetaSpec::parse(const std::string &t1, const std::string &t2, const std::string &t3) {
    ThetaSpec spec;
    spec.params = {parse_theta(t1), parse_theta(t2), parse_theta(t3)};
    spec.params.validate();
    spec.text = {t1, t2, t3};
    return spec;
}

ThetaSpec ThetaSpec::uniform(const std::string &t) { return parse(t, t, t); }

// ---------------------------------------------------------------------------
// segment

SegmentOutcome segment_image(const RgbImage &image, const SegmentRequest &request) {
    const auto start = Clock::now();
    SegmentationResult seg = request.mode == ColorMode::rgb
                                 ? segment_rgb_detailed(image, request.theta.params, request.normalize)
                                 : segment_gray_detailed(to_gray(image), gray_theta(request.theta));
    SegmentOutcome out;
    out.runtime_ms = elapsed_ms(start);

    std::array<double, 8> conf_sum{};
    for (std::size_t i = 0; i < seg.labels.pixel_count(); ++i) {
        const std::uint8_t l = seg.labels.labels[i];
        ++out.histogram[l];
        conf_sum[l] += seg.confidence[i];
    }
    for (std::size_t l = 0; l < 8; ++l) {
        if (out.histogram[l] > 0) {
            out.mean_confidence[l] = conf_sum[l] / static_cast<double>(out.histogram[l]);
            ++out.segment_count;
        }
    }
    out.labels = std::move(seg.labels);
    return out;
}

json segment_sidecar(const RgbImage &image, const SegmentRequest &request,
                     const SegmentOutcome &outcome) {
    json theta = {{"theta1", request.theta.params.theta1},
                  {"theta2", request.theta.params.theta2},
                  {"theta3", request.theta.params.theta3},
                  {"text", request.theta.text}};
    return {{"dimensions", {{"width", image.width}, {"height", image.height}}},
            {"mode", to_string(request.mode)},
            {"normalize", request.normalize},
            {"theta", theta},
            {"label_histogram", outcome.histogram},
            {"segment_count", outcome.segment_count},
            {"runtime_ms", outcome.runtime_ms}};
}

fs::path sidecar_path(const fs::path &out) {
    fs::path p = out;
    p.replace_extension(".json");
    return p;
}

SegmentOutcome run_segment(const fs::path &input, const SegmentRequest &request,
                           const fs::path &out) {
    const RgbImage image = decode_image(read_file(input));
    SegmentOutcome outcome = segment_image(image, request);
    const Bytes png = render_labelmap(outcome.labels);
    const std::string sidecar = segment_sidecar(image, request, outcome).dump(2) + "\n";

    write_file(out, png);
    const fs::path side = sidecar_path(out);
    try {
        write_file(side, std::span(reinterpret_cast<const std::uint8_t *>(sidecar.data()),
                                   sidecar.size()));
    } catch (...) {
        std::error_code ec;
        fs::remove(out, ec);
        throw;
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// table2

const std::vector<Table2Config> &table2_configs() {
    static const std::vector<Table2Config> configs = {
        {"theta1=theta2=theta3=pi/4", AngleParams::uniform(kPi / 4), 1},
        {"theta1=theta2=theta3=pi/2", AngleParams::uniform(kPi / 2), 3},
        {"theta1=theta2=theta3=3pi/4", AngleParams::uniform(3 * kPi / 4), 5},
        {"theta1=theta2=theta3=pi", AngleParams::uniform(kPi), 6},
        {"theta1=theta2=theta3=5pi/4", AngleParams::uniform(5 * kPi / 4), 8},
        {"theta1=theta2=theta3=3pi/2", AngleParams::uniform(3 * kPi / 2), 8},
        {"theta1=theta2=theta3=7pi/4", AngleParams::uniform(7 * kPi / 4), 8},
        {"theta1=theta2=theta3=2pi", AngleParams::uniform(2 * kPi), 8},
        {"theta1=pi/4,theta2=pi/2,theta3=pi", AngleParams{kPi / 4, kPi / 2, kPi}, 2},
    };
    return configs;
}

std::vector<double> grid_axis(double step) {
    if (!(step > 0.0 && step < 1.0)) {
        throw InputError("grid step must lie in (0, 1)");
    }
    std::vector<double> axis;
    const double inverse = 1.0 / step;
    const double divisions = std::round(inverse);
    if (std::abs(divisions - inverse) < 1e-9) {
        // Exact lattice i / n so that 0.01 yields 0, 1/100, ..., 1.
        const auto n = static_cast<std::size_t>(divisions);
        for (std::size_t i = 0; i <= n; ++i) {
            axis.push_back(static_cast<double>(i) / static_cast<double>(n));
        }
    } else {
        for (std::size_t i = 0;; ++i) {
            const double v = static_cast<double>(i) * step;
            if (v > 1.0) {
                break;
            }
            axis.push_back(v);
        }
        if (axis.back() < 1.0) {
            axis.push_back(1.0);
        }
    }
    return axis;
}

namespace {

std::array<std::uint64_t, 8> grid_histogram(const AngleParams &params,
                                            const std::vector<double> &axis) {
    std::array<std::uint64_t, 8> total{};
    const auto n = static_cast<std::int64_t>(axis.size());
#pragma omp parallel
    {
        std::array<std::uint64_t, 8> local{};
#pragma omp for schedule(static)
        for (std::int64_t ri = 0; ri < n; ++ri) {
            for (double g : axis) {
                for (double b : axis) {
                    const NormalizedRgb px{axis[static_cast<std::size_t>(ri)], g, b};
                    ++local[classify_phases(phase_encode_unchecked(px, params)).label.value];
                }
            }
        }
#pragma omp critical
        for (std::size_t l = 0; l < 8; ++l) {
            total[l] += local[l];
        }
    }
    return total;
}

std::array<std::uint64_t, 8> sampled_histogram(const AngleParams &params,
                                               const std::vector<NormalizedRgb> &samples) {
    std::array<std::uint64_t, 8> h{};
    for (const NormalizedRgb &px : samples) {
        ++h[classify_phases(phase_encode_unchecked(px, params)).label.value];
    }
    return h;
}

} // namespace

std::vector<Table2Row> run_table2(const Table2Options &options) {
    std::vector<double> axis;
    std::vector<NormalizedRgb> samples;
    if (options.grid_step) {
        axis = grid_axis(*options.grid_step);
    } else {
        if (options.samples == 0) {
            throw InputError("samples must be >= 1");
        }
        Rng rng(options.seed);
        samples.resize(options.samples);
        for (NormalizedRgb &px : samples) {
            px.r = rng.uniform();
            px.g = rng.uniform();
            px.b = rng.uniform();
        }
    }

    std::vector<Table2Row> rows;
    for (const Table2Config &config : table2_configs()) {
        Table2Row row{config, 0, {}};
        row.histogram = options.grid_step ? grid_histogram(config.params, axis)
                                          : sampled_histogram(config.params, samples);
        row.count = static_cast<int>(
            std::count_if(row.histogram.begin(), row.histogram.end(), [](auto c) { return c > 0; }));
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// sweep

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) {
            continue;
        }
        const auto last = item.find_last_not_of(" \t");
        out.push_back(item.substr(first, last - first + 1));
    }
    return out;
}

SweepReport run_sweep(const RgbImage &image, const std::optional<GroundTruthMask> &mask,
                      const std::vector<std::string> &thetas, ColorMode mode, bool normalize) {
    if (thetas.empty()) {
        throw InputError("sweep needs at least one theta");
    }
    if (mask) {
        check_same_size(image, *mask);
    }
    SweepReport report;
    for (const std::string &text : thetas) {
        const SegmentRequest request{mode, ThetaSpec::uniform(text), normalize};
        SegmentOutcome outcome = segment_image(image, request);
        SweepRow row;
        row.theta = request.theta.params.theta1;
        row.text = text;
        row.segment_count = outcome.segment_count;
        if (mask) {
            row.evaluation = best_binary_assignment(outcome.labels, *mask);
            row.evaluation->runtime_ms = outcome.runtime_ms;
        }
        report.rows.push_back(std::move(row));
    }
    if (mask) {
        std::stable_sort(report.rows.begin(), report.rows.end(),
                         [](const SweepRow &a, const SweepRow &b) {
                             return a.evaluation->miou > b.evaluation->miou;
                         });
        report.best = 0;
    }
    return report;
}

json to_json(const SweepReport &report) {
    json rows = json::array();
    for (const SweepRow &row : report.rows) {
        json r = {{"theta", row.theta}, {"text", row.text}, {"segment_count", row.segment_count}};
        if (row.evaluation) {
            r["miou"] = row.evaluation->miou;
            r["iou_fg"] = row.evaluation->iou_fg;
            r["iou_bg"] = row.evaluation->iou_bg;
        }
        rows.push_back(std::move(r));
    }
    json out = {{"rows", rows}};
    if (report.best) {
        out["best_theta"] = report.rows[*report.best].text;
    }
    return out;
}

// ---------------------------------------------------------------------------
// evaluation

Method parse_method(const std::string &text) {
    if (text == "iqft") {
        return Method::iqft;
    }
    if (text == "iqft-gray") {
        return Method::iqft_gray;
    }
    if (text == "otsu") {
        return Method::otsu;
    }
    if (text == "kmeans") {
        return Method::kmeans;
    }
    throw InputError("unknown method '" + text + "' (iqft, iqft-gray, otsu, kmeans)");
}

std::string to_string(Method method) {
    switch (method) {
    case Method::iqft:
        return "iqft";
    case Method::iqft_gray:
        return "iqft-gray";
    case Method::otsu:
        return "otsu";
    case Method::kmeans:
        return "kmeans";
    }
    return "unknown";
}

MethodOutcome evaluate_method(const RgbImage &image, const GroundTruthMask &mask, Method method,
                              const MethodParams &params) {
    check_same_size(image, mask);
    MethodOutcome out;
    out.method = method;
    const auto start = Clock::now();
    switch (method) {
    case Method::iqft:
        out.labels = segment_rgb(image, params.theta.params, params.normalize);
        break;
    case Method::iqft_gray:
        out.labels = segment_gray(to_gray(image), gray_theta(params.theta));
        break;
    case Method::otsu: {
        const GrayImage gray = to_gray(image);
        const Histogram256 hist = histogram256(gray);
        const auto populated =
            std::count_if(hist.counts.begin(), hist.counts.end(), [](auto c) { return c > 0; });
        // A single gray level has no threshold; everything stays background.
        out.labels = populated < 2 ? LabelMap(image.width, image.height)
                                   : threshold_segment(gray, otsu_threshold(hist));
        break;
    }
    case Method::kmeans:
        out.labels = kmeans_segment_image(image, params.k, params.seed);
        break;
    }
    const double runtime = elapsed_ms(start);
    out.report = best_binary_assignment(out.labels, mask);
    out.report.runtime_ms = runtime;
    out.segment_count = count_segments(out.labels);
    return out;
}

json to_json(const EvaluationReport &report) {
    json assignment = json::object();
    for (const auto &[label, region] : report.assignment) {
        assignment[std::to_string(label)] = region == Region::foreground ? "fg" : "bg";
    }
    return {{"iou_fg", report.iou_fg},
            {"iou_bg", report.iou_bg},
            {"miou", report.miou},
            {"assignment", assignment},
            {"runtime_ms", report.runtime_ms}};
}

// ---------------------------------------------------------------------------
// bench

DatasetManifest load_manifest(const fs::path &path) {
    json doc;
    {
        std::ifstream in(path);
        if (!in) {
            throw FormatError("cannot open manifest " + path.string());
        }
        try {
            in >> doc;
        } catch (const json::exception &e) {
            throw FormatError("manifest " + path.string() + " is not valid JSON: " + e.what());
        }
    }
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
        throw FormatError("manifest must be an object with an 'entries' array");
    }
    DatasetManifest m;
    const fs::path base = path.parent_path();
    const fs::path root = doc.value("root", std::string("."));
    m.root = root.is_absolute() ? root : base / root;

    std::set<std::string> ids;
    for (const json &e : doc["entries"]) {
        if (!e.is_object() || !e.contains("id") || !e.contains("image")) {
            throw FormatError("manifest entries need 'id' and 'image'");
        }
        ManifestEntry entry;
        entry.id = e["id"].get<std::string>();
        if (!ids.insert(entry.id).second) {
            throw FormatError("duplicate manifest id '" + entry.id + "'");
        }
        entry.image = m.root / e["image"].get<std::string>();
        if (!fs::exists(entry.image)) {
            throw FormatError("missing image for '" + entry.id + "': " + entry.image.string());
        }
        if (e.contains("mask") && !e["mask"].is_null()) {
            entry.mask = m.root / e["mask"].get<std::string>();
            if (!fs::exists(*entry.mask)) {
                throw FormatError("missing mask for '" + entry.id + "': " + entry.mask->string());
            }
        }
        m.entries.push_back(std::move(entry));
    }
    std::sort(m.entries.begin(), m.entries.end(),
              [](const ManifestEntry &a, const ManifestEntry &b) { return a.id < b.id; });
    return m;
}

namespace {

std::string method_params_text(Method method, const MethodParams &params) {
    switch (method) {
    case Method::iqft:
        return fmt::format("{};{};{}", format_theta(params.theta.params.theta1),
                           format_theta(params.theta.params.theta2),
                           format_theta(params.theta.params.theta3));
    case Method::iqft_gray:
        return format_theta(params.theta.params.theta1);
    case Method::otsu:
        return "-";
    case Method::kmeans:
        return fmt::format("k={}", params.k);
    }
    return "-";
}

} // namespace

BenchReport run_bench(const DatasetManifest &manifest, const BenchOptions &options) {
    BenchReport report;
    // id -> method -> miou, for win rates.
    std::map<std::string, std::map<Method, double>> scores;
    for (const ManifestEntry &entry : manifest.entries) {
        if (!entry.mask) {
            report.warnings.push_back("skipped '" + entry.id + "': no mask");
            continue;
        }
        const RgbImage image = decode_image(read_file(entry.image));
        const GroundTruthMask mask = load_mask(read_file(*entry.mask));
        for (Method method : options.methods) {
            const MethodOutcome outcome = evaluate_method(image, mask, method, options.params);
            report.rows.push_back({entry.id, method, method_params_text(method, options.params),
                                   outcome.report.miou, outcome.report.iou_fg,
                                   outcome.report.iou_bg, outcome.report.runtime_ms,
                                   outcome.segment_count});
            scores[entry.id][method] = outcome.report.miou;
        }
    }

    const bool has_iqft = std::find(options.methods.begin(), options.methods.end(),
                                    Method::iqft) != options.methods.end();
    for (Method method : options.methods) {
        BenchAggregate agg;
        agg.method = method;
        double sum = 0.0;
        std::size_t wins = 0;
        for (const BenchRow &row : report.rows) {
            if (row.method != method) {
                continue;
            }
            ++agg.images;
            sum += row.miou;
            agg.total_runtime_ms += row.runtime_ms;
            if (has_iqft && scores[row.id][Method::iqft] > row.miou) {
                ++wins;
            }
        }
        agg.average_miou = agg.images ? sum / static_cast<double>(agg.images) : 0.0;
        if (has_iqft && method != Method::iqft && agg.images > 0) {
            agg.iqft_win_rate = static_cast<double>(wins) / static_cast<double>(agg.images);
        }
        report.aggregates.push_back(agg);
    }
    return report;
}

std::string bench_csv(const BenchReport &report) {
    std::string out = "id,method,theta,miou,iou_fg,iou_bg,segment_count\n";
    for (const BenchRow &row : report.rows) {
        out += fmt::format("{},{},{},{:.10f},{:.10f},{:.10f},{}\n", row.id, to_string(row.method),
                           row.theta, row.miou, row.iou_fg, row.iou_bg, row.segment_count);
    }
    return out;
}

json to_json(const BenchReport &report) {
    json rows = json::array();
    for (const BenchRow &row : report.rows) {
        rows.push_back({{"id", row.id},
                        {"method", to_string(row.method)},
                        {"theta", row.theta},
                        {"miou", row.miou},
                        {"iou_fg", row.iou_fg},
                        {"iou_bg", row.iou_bg},
                        {"runtime_ms", row.runtime_ms},
                        {"segment_count", row.segment_count}});
    }
    json aggregates = json::array();
    for (const BenchAggregate &agg : report.aggregates) {
        json a = {{"method", to_string(agg.method)},
                  {"images", agg.images},
                  {"average_miou", agg.average_miou},
                  {"total_runtime_ms", agg.total_runtime_ms}};
        if (agg.iqft_win_rate) {
            a["iqft_win_rate"] = *agg.iqft_win_rate;
        }
        aggregates.push_back(std::move(a));
    }
    return {{"schema", "qseg-bench/1"},
            {"rows", rows},
            {"aggregates", aggregates},
            {"warnings", report.warnings}};
}

// ---------------------------------------------------------------------------
// ablation

AblationRow run_ablation(const std::string &id, const RgbImage &image, const AngleParams &params) {
    return {id, label_transition_rate(segment_rgb(image, params, true)),
            label_transition_rate(segment_rgb(image, params, false))};
}

// ---------------------------------------------------------------------------
// thresholds

std::string format_thresholds(double theta) {
    const ThresholdSet set = thresholds_from_theta(theta);
    if (set.empty()) {
        return "none (theta < pi/2 puts every threshold above 1)";
    }
    std::string out;
    for (double t : set.thresholds) {
        out += (out.empty() ? "" : ", ") + fmt::format("{:.4f}", t);
    }
    return out;
}

} // namespace qseg::harness
