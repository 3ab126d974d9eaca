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

// qseg: command-line front end.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <csignal>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qseg/error.hpp"
#include "qseg/grayscale.hpp"
#include "qseg/harness.hpp"
#include "qseg/imageio.hpp"
#include "qseg/segment.hpp"
#include "qseg/service.hpp"
#include "qseg/theta.hpp"

namespace fs = std::filesystem;
namespace h = qseg::harness;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

/// Usage problems detected after CLI11 parsing (bad theta text, conflicting flags).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ThetaFlags {
    std::string all;
    std::string t1 = "pi";
    std::string t2 = "pi";
    std::string t3 = "pi";

    void add_to(CLI::App *cmd) {
        cmd->add_option("--theta", all, "Set theta1 = theta2 = theta3 (radians or pi multiple)");
        cmd->add_option("--theta1", t1, "Red phase scale")->capture_default_str();
        cmd->add_option("--theta2", t2, "Green phase scale")->capture_default_str();
        cmd->add_option("--theta3", t3, "Blue phase scale")->capture_default_str();
    }

    [[nodiscard]] h::ThetaSpec resolve() const {
        try {
            return all.empty() ? h::ThetaSpec::parse(t1, t2, t3) : h::ThetaSpec::uniform(all);
        } catch (const qseg::InputError &e) {
            throw UsageError(e.what());
        }
    }
};

template <typename T, typename F> T as_usage(F &&f) {
    try {
        return f();
    } catch (const qseg::InputError &e) {
        throw UsageError(e.what());
    }
}

void write_text(const fs::path &path, const std::string &text) {
    qseg::write_file(path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

// ---------------------------------------------------------------------------

struct SegmentCmd {
    std::string input;
    std::string mode = "rgb";
    ThetaFlags theta;
    bool no_normalize = false;
    std::string out;

    int run() const {
        const h::SegmentRequest request{as_usage<h::ColorMode>([&] { return h::parse_mode(mode); }),
                                        theta.resolve(), !no_normalize};
        if (!fs::exists(input)) {
            std::cerr << "error: input not found: " << input << "\n";
            return kExitRuntime;
        }
        const h::SegmentOutcome outcome = h::run_segment(input, request, out);
        std::cout << fmt::format("wrote {} and {} ({} segments, {:.2f} ms)\n", out,
                                 h::sidecar_path(out).string(), outcome.segment_count,
                                 outcome.runtime_ms);
        return 0;
    }
};

struct Table2Cmd {
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    std::optional<double> grid;

    int run() const {
        h::Table2Options options{grid, samples, seed};
        const auto rows = as_usage<std::vector<h::Table2Row>>([&] { return h::run_table2(options); });
        std::cout << (grid ? fmt::format("grid mode, step {}\n", *grid)
                           : fmt::format("random mode, {} samples, seed {}\n", samples, seed));
        std::cout << fmt::format("{:<36} {:>8} {:>9}\n", "parameters", "segments", "expected");
        int mismatches = 0;
        for (const auto &row : rows) {
            const bool ok = row.count == row.config.expected;
            mismatches += ok ? 0 : 1;
            std::cout << fmt::format("{:<36} {:>8} {:>9}{}\n", row.config.name, row.count,
                                     row.config.expected, ok ? "" : "  (differs)");
        }
        return mismatches == 0 ? 0 : kExitRuntime;
    }
};

struct SweepCmd {
    std::string input;
    std::string thetas;
    std::string mask;
    std::string mode = "rgb";
    bool no_normalize = false;
    std::string out;

    int run() const {
        const auto list = h::split_list(thetas);
        if (list.empty()) {
            throw UsageError("--thetas needs at least one value");
        }
        const auto color = as_usage<h::ColorMode>([&] { return h::parse_mode(mode); });
        for (const auto &t : list) {
            as_usage<h::ThetaSpec>([&] { return h::ThetaSpec::uniform(t); });
        }
        const qseg::RgbImage image = qseg::decode_image(qseg::read_file(input));
        std::optional<qseg::GroundTruthMask> gt;
        if (!mask.empty()) {
            gt = qseg::load_mask(qseg::read_file(mask));
        }
        const h::SweepReport report = h::run_sweep(image, gt, list, color, !no_normalize);

        std::cout << fmt::format("{:<12} {:>8}{}\n", "theta", "segments", gt ? "       mIOU" : "");
        for (const auto &row : report.rows) {
            std::cout << fmt::format("{:<12} {:>8}", row.text, row.segment_count);
            if (row.evaluation) {
                std::cout << fmt::format(" {:>10.4f}", row.evaluation->miou);
            }
            std::cout << "\n";
        }
        if (report.best) {
            std::cout << "best theta: " << report.rows[*report.best].text << "\n";
        }
        if (!out.empty()) {
            write_text(out, h::to_json(report).dump(2) + "\n");
        }
        return 0;
    }
};

struct BenchCmd {
    std::string manifest;
    std::string methods = "iqft,otsu,kmeans";
    ThetaFlags theta;
    bool no_normalize = false;
    int k = 2;
    std::uint64_t seed = 0;
    std::string out;

    int run() const {
        h::BenchOptions options;
        options.methods.clear();
        for (const auto &m : h::split_list(methods)) {
            options.methods.push_back(as_usage<h::Method>([&] { return h::parse_method(m); }));
        }
        if (options.methods.empty()) {
            throw UsageError("--methods needs at least one method");
        }
        options.params.theta = theta.resolve();
        options.params.normalize = !no_normalize;
        options.params.k = k;
        options.params.seed = seed;

        const h::DatasetManifest m = h::load_manifest(manifest);
        const h::BenchReport report = h::run_bench(m, options);

        fs::create_directories(out);
        write_text(fs::path(out) / "report.csv", h::bench_csv(report));
        write_text(fs::path(out) / "report.json", h::to_json(report).dump(2) + "\n");

        std::cout << fmt::format("{:<10} {:>6} {:>12} {:>14} {:>10}\n", "method", "images",
                                 "mean mIOU", "runtime (ms)", "IQFT wins");
        for (const auto &agg : report.aggregates) {
            std::cout << fmt::format("{:<10} {:>6} {:>12.4f} {:>14.2f} {:>10}\n",
                                     h::to_string(agg.method), agg.images, agg.average_miou,
                                     agg.total_runtime_ms,
                                     agg.iqft_win_rate ? fmt::format("{:.2f}%", 100 * *agg.iqft_win_rate)
                                                       : std::string("-"));
        }
        for (const auto &w : report.warnings) {
            std::cerr << "warning: " << w << "\n";
        }
        if (!report.warnings.empty()) {
            std::cerr << report.warnings.size() << " warning(s)\n";
        }
        return 0;
    }
};

struct ThresholdsCmd {
    std::string theta;
    std::optional<double> ith;

    int run() const {
        if (theta.empty() == !ith.has_value()) {
            throw UsageError("give exactly one of --theta or --ith");
        }
        if (ith) {
            const double t = as_usage<double>([&] { return qseg::theta_from_threshold(*ith); });
            std::cout << fmt::format("I_th = {} -> theta = {} ({:.6f} rad)\n", *ith,
                                     qseg::format_theta(t), t);
            return 0;
        }
        const double t = as_usage<double>([&] { return qseg::parse_theta(theta); });
        const std::string set = as_usage<std::string>([&] { return h::format_thresholds(t); });
        std::cout << fmt::format("theta = {} -> thresholds: {}\n", qseg::format_theta(t), set);
        return 0;
    }
};

struct AblationCmd {
    std::string manifest;
    std::string input;
    ThetaFlags theta;

    int run() const {
        if (manifest.empty() == input.empty()) {
            throw UsageError("give exactly one of --manifest or --input");
        }
        const qseg::AngleParams params = theta.resolve().params;
        std::vector<std::pair<std::string, fs::path>> items;
        if (!input.empty()) {
            items.emplace_back(fs::path(input).stem().string(), input);
        } else {
            for (const auto &e : h::load_manifest(manifest).entries) {
                items.emplace_back(e.id, e.image);
            }
        }
        std::cout << fmt::format("{:<16} {:>12} {:>12}\n", "id", "normalized", "raw");
        for (const auto &[id, path] : items) {
            const auto row = h::run_ablation(id, qseg::decode_image(qseg::read_file(path)), params);
            std::cout << fmt::format("{:<16} {:>12.4f} {:>12.4f}\n", row.id, row.normalized_rate,
                                     row.raw_rate);
        }
        return 0;
    }
};

qseg::service::Server *g_server = nullptr;

void on_signal(int) {
    if (g_server != nullptr) {
        g_server->stop();
    }
}

struct ServeCmd {
    qseg::service::ServiceConfig config = qseg::service::config_from_env({});
    std::string static_dir;
    int kernel_threads = 0;

    int run() {
        if (!static_dir.empty()) {
            config.static_dir = static_dir;
        }
        if (kernel_threads > 0) {
            qseg::set_num_threads(kernel_threads);
        }
        qseg::service::Server server(config);
        const int port = server.bind();
        g_server = &server;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        std::cout << fmt::format("listening on {}:{}\n", config.host, port) << std::flush;
        server.listen();
        g_server = nullptr;
        return 0;
    }
};

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qseg: phase-encoding image segmentation and evaluation"};
    app.require_subcommand(1);

    SegmentCmd seg;
    auto *c_seg = app.add_subcommand("segment", "Segment one image and write a label map + JSON sidecar");
    c_seg->add_option("--input", seg.input, "PNG or JPEG image")->required();
    c_seg->add_option("--mode", seg.mode, "rgb or gray")->capture_default_str();
    seg.theta.add_to(c_seg);
    c_seg->add_flag("--no-normalize", seg.no_normalize, "Feed raw 0..255 intensities as phases");
    c_seg->add_option("--out", seg.out, "Output PNG path (sidecar written alongside)")->required();

    Table2Cmd t2;
    auto *c_t2 = app.add_subcommand("table2", "Count reachable segments per angle configuration");
    c_t2->add_option("--samples", t2.samples, "Random RGB triples")->capture_default_str();
    c_t2->add_option("--seed", t2.seed, "mt19937_64 seed")->capture_default_str();
    c_t2->add_option("--grid", t2.grid, "Lattice step in (0,1); replaces random sampling");

    SweepCmd sw;
    auto *c_sw = app.add_subcommand("sweep", "Segment one image at several theta values");
    c_sw->add_option("--input", sw.input, "PNG or JPEG image")->required();
    c_sw->add_option("--thetas", sw.thetas, "Comma-separated angles, e.g. 3pi/4,pi")->required();
    c_sw->add_option("--mask", sw.mask, "Ground-truth mask PNG");
    c_sw->add_option("--mode", sw.mode, "rgb or gray")->capture_default_str();
    c_sw->add_flag("--no-normalize", sw.no_normalize, "Feed raw 0..255 intensities as phases");
    c_sw->add_option("--out", sw.out, "Write the report as JSON");

    BenchCmd bench;
    auto *c_bench = app.add_subcommand("bench", "Score methods on a manifest of image/mask pairs");
    c_bench->add_option("--manifest", bench.manifest, "Manifest JSON")->required();
    c_bench->add_option("--methods", bench.methods, "iqft,iqft-gray,otsu,kmeans")->capture_default_str();
    bench.theta.add_to(c_bench);
    c_bench->add_flag("--no-normalize", bench.no_normalize, "Feed raw 0..255 intensities as phases");
    c_bench->add_option("-k,--k", bench.k, "k-means clusters")->capture_default_str();
    c_bench->add_option("--seed", bench.seed, "k-means seed")->capture_default_str();
    c_bench->add_option("--out", bench.out, "Output directory")->required();

    ThresholdsCmd th;
    auto *c_th = app.add_subcommand("thresholds", "Convert between theta and grayscale thresholds");
    c_th->add_option("--theta", th.theta, "Angle -> thresholds");
    c_th->add_option("--ith", th.ith, "Threshold -> angle");

    AblationCmd abl;
    auto *c_abl = app.add_subcommand("ablation", "Label-transition rate with and without normalization");
    c_abl->add_option("--manifest", abl.manifest, "Manifest JSON (every entry)");
    c_abl->add_option("--input", abl.input, "Single PNG or JPEG image");
    abl.theta.add_to(c_abl);

    ServeCmd serve;
    auto *c_serve = app.add_subcommand("serve", "Run the HTTP API");
    c_serve->add_option("--host", serve.config.host)->capture_default_str();
    c_serve->add_option("--port", serve.config.port)->capture_default_str();
    c_serve->add_option("--max-body", serve.config.max_body_bytes, "Request size limit in bytes")
        ->capture_default_str();
    c_serve->add_option("--workers", serve.config.worker_threads, "HTTP worker threads");
    c_serve->add_option("--kernel-threads", serve.kernel_threads, "OpenMP threads per request");
    c_serve->add_option("--static", serve.static_dir, "Directory of static assets to serve at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*c_seg) {
            return seg.run();
        }
        if (*c_t2) {
            return t2.run();
        }
        if (*c_sw) {
            return sw.run();
        }
        if (*c_bench) {
            return bench.run();
        }
        if (*c_th) {
            return th.run();
        }
        if (*c_abl) {
            return abl.run();
        }
        if (*c_serve) {
            return serve.run();
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
