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

#include "qseg/service.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>

#include "qseg/error.hpp"
#include "qseg/grayscale.hpp"
#include "qseg/harness.hpp"
#include "qseg/imageio.hpp"
#include "qseg/theta.hpp"

namespace qseg::service {

using nlohmann::json;
namespace h = qseg::harness;

namespace {

using Clock = std::chrono::steady_clock;

const std::string *find(const ApiRequest &req, const std::string &key) {
    const auto it = req.fields.find(key);
    return it == req.fields.end() ? nullptr : &it->second;
}

std::string field_or(const ApiRequest &req, const std::string &key, const std::string &fallback) {
    const std::string *v = find(req, key);
    return v != nullptr && !v->empty() ? *v : fallback;
}

const std::string &require(const ApiRequest &req, const std::string &key) {
    const std::string *v = find(req, key);
    if (v == nullptr || v->empty()) {
        throw InputError("missing field '" + key + "'");
    }
    return *v;
}

bool parse_flag(const ApiRequest &req, const std::string &key, bool fallback) {
    const std::string *v = find(req, key);
    if (v == nullptr || v->empty()) {
        return fallback;
    }
    if (*v == "1" || *v == "true" || *v == "yes" || *v == "on") {
        return true;
    }
    if (*v == "0" || *v == "false" || *v == "no" || *v == "off") {
        return false;
    }
    throw InputError("field '" + key + "' must be a boolean, got '" + *v + "'");
}

long parse_int(const ApiRequest &req, const std::string &key, long fallback) {
    const std::string *v = find(req, key);
    if (v == nullptr || v->empty()) {
        return fallback;
    }
    try {
        std::size_t used = 0;
        const long out = std::stol(*v, &used);
        if (used == v->size()) {
            return out;
        }
    } catch (const std::exception &) {
    }
    throw InputError("field '" + key + "' must be an integer, got '" + *v + "'");
}

h::ThetaSpec parse_thetas(const ApiRequest &req) {
    if (const std::string *all = find(req, "theta"); all != nullptr && !all->empty()) {
        return h::ThetaSpec::uniform(*all);
    }
    return h::ThetaSpec::parse(field_or(req, "theta1", "pi"), field_or(req, "theta2", "pi"),
                               field_or(req, "theta3", "pi"));
}

RgbImage image_field(const ApiRequest &req) {
    const std::string &bytes = require(req, "image");
    return decode_image(std::span(reinterpret_cast<const std::uint8_t *>(bytes.data()), bytes.size()));
}

std::optional<GroundTruthMask> mask_field(const ApiRequest &req) {
    const std::string *bytes = find(req, "mask");
    if (bytes == nullptr || bytes->empty()) {
        return std::nullopt;
    }
    return load_mask(std::span(reinterpret_cast<const std::uint8_t *>(bytes->data()), bytes->size()));
}

ApiResponse json_response(int status, const json &body) {
    ApiResponse r;
    r.status = status;
    r.body = body.dump();
    return r;
}

ApiResponse error_response(int status, const std::string &message) {
    return json_response(status, json{{"error", message}});
}

/// Maps library exceptions onto HTTP statuses.
template <typename F> ApiResponse guarded(F &&handler) {
    try {
        return handler();
    } catch (const InputError &e) {
        return error_response(400, e.what());
    } catch (const DecodeError &e) {
        return error_response(400, e.what());
    } catch (const FormatError &e) {
        return error_response(400, e.what());
    } catch (const MetricError &e) {
        return error_response(400, e.what());
    } catch (const std::exception &e) {
        return error_response(500, e.what());
    }
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

} // namespace

json encode_rle(const LabelMap &labels) {
    json runs = json::array();
    const auto &v = labels.labels;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i + 1;
        while (j < v.size() && v[j] == v[i]) {
            ++j;
        }
        runs.push_back(json::array({v[i], j - i}));
        i = j;
    }
    return {{"encoding", "rle"}, {"runs", runs}};
}

LabelMap decode_rle(const json &labels, std::size_t width, std::size_t height) {
    if (!labels.is_object() || labels.value("encoding", "") != "rle" || !labels.contains("runs")) {
        throw FormatError("labels must be {\"encoding\": \"rle\", \"runs\": [...]}");
    }
    LabelMap out(width, height);
    std::size_t pos = 0;
    for (const json &run : labels["runs"]) {
        const auto label = run.at(0).get<unsigned>();
        const auto count = run.at(1).get<std::size_t>();
        if (label > 255 || count > out.labels.size() - pos) {
            throw FormatError("RLE stream overruns " + std::to_string(width) + "x" +
                              std::to_string(height));
        }
        std::fill_n(out.labels.begin() + static_cast<std::ptrdiff_t>(pos), count,
                    static_cast<std::uint8_t>(label));
        pos += count;
    }
    if (pos != out.labels.size()) {
        throw FormatError("RLE stream decodes to " + std::to_string(pos) + " labels, expected " +
                          std::to_string(out.labels.size()));
    }
    return out;
}

ApiResponse api_segment(const ApiRequest &req) {
    return guarded([&] {
        const auto start = Clock::now();
        const h::SegmentRequest request{h::parse_mode(field_or(req, "mode", "rgb")),
                                        parse_thetas(req), parse_flag(req, "normalize", true)};
        const RgbImage image = image_field(req);
        const h::SegmentOutcome outcome = h::segment_image(image, request);

        json summary = json::object();
        for (std::size_t l = 0; l < 8; ++l) {
            if (outcome.histogram[l] > 0) {
                summary[std::to_string(l)] = outcome.mean_confidence[l];
            }
        }
        json body = {{"width", image.width},
                     {"height", image.height},
                     {"mode", h::to_string(request.mode)},
                     {"normalize", request.normalize},
                     {"theta",
                      {{"theta1", request.theta.params.theta1},
                       {"theta2", request.theta.params.theta2},
                       {"theta3", request.theta.params.theta3}}},
                     {"labels", encode_rle(outcome.labels)},
                     {"label_histogram", outcome.histogram},
                     {"segment_count", outcome.segment_count},
                     {"probabilities_summary", summary}};
        if (parse_flag(req, "timing", false)) {
            body["runtime_ms"] = outcome.runtime_ms;
        }
        ApiResponse r = json_response(200, body);
        r.headers["X-Runtime-Ms"] = fmt::format("{:.3f}", ms_since(start));
        return r;
    });
}

ApiResponse api_evaluate(const ApiRequest &req) {
    return guarded([&] {
        const auto start = Clock::now();
        const h::Method method = h::parse_method(field_or(req, "method", "iqft"));
        h::MethodParams params;
        params.theta = parse_thetas(req);
        params.normalize = parse_flag(req, "normalize", true);
        params.k = static_cast<int>(parse_int(req, "k", 2));
        params.seed = static_cast<std::uint64_t>(parse_int(req, "seed", 0));
        const RgbImage image = image_field(req);
        const auto mask = mask_field(req);
        if (!mask) {
            throw InputError("missing field 'mask'");
        }
        const h::MethodOutcome outcome = h::evaluate_method(image, *mask, method, params);
        json body = h::to_json(outcome.report);
        body["method"] = h::to_string(method);
        body["segment_count"] = outcome.segment_count;
        if (!parse_flag(req, "timing", false)) {
            body.erase("runtime_ms");
        }
        ApiResponse r = json_response(200, body);
        r.headers["X-Runtime-Ms"] = fmt::format("{:.3f}", ms_since(start));
        return r;
    });
}

ApiResponse api_thresholds(const ApiRequest &req) {
    return guarded([&] {
        const std::string *theta_text = find(req, "theta");
        const std::string *ith_text = find(req, "ith");
        if ((theta_text == nullptr) == (ith_text == nullptr)) {
            throw InputError("give exactly one of 'theta' or 'ith'");
        }
        if (ith_text != nullptr) {
            double ith = 0.0;
            try {
                std::size_t used = 0;
                ith = std::stod(*ith_text, &used);
                if (used != ith_text->size()) {
                    throw InputError("bad ith");
                }
            } catch (const std::exception &) {
                throw InputError("cannot parse ith '" + *ith_text + "'");
            }
            const double theta = theta_from_threshold(ith);
            return json_response(200, json{{"ith", ith}, {"theta", theta}, {"text", format_theta(theta)}});
        }
        const double theta = parse_theta(*theta_text);
        const ThresholdSet set = thresholds_from_theta(theta);
        json body = {{"theta", theta}, {"text", format_theta(theta)}, {"thresholds", set.thresholds}};
        if (set.empty()) {
            body["note"] = "theta < pi/2 puts every threshold above 1";
        }
        return json_response(200, body);
    });
}

ApiResponse api_sweep(const ApiRequest &req) {
    return guarded([&] {
        const std::vector<std::string> thetas = h::split_list(field_or(req, "thetas", ""));
        if (thetas.empty()) {
            throw InputError("field 'thetas' must list at least one angle");
        }
        const RgbImage image = image_field(req);
        const h::SweepReport report =
            h::run_sweep(image, mask_field(req), thetas, h::parse_mode(field_or(req, "mode", "rgb")),
                         parse_flag(req, "normalize", true));
        return json_response(200, h::to_json(report));
    });
}

ServiceConfig config_from_env(ServiceConfig base) {
    if (const char *v = std::getenv("QSEG_HOST")) {
        base.host = v;
    }
    if (const char *v = std::getenv("QSEG_PORT")) {
        base.port = std::atoi(v);
    }
    if (const char *v = std::getenv("QSEG_MAX_BODY")) {
        base.max_body_bytes = static_cast<std::size_t>(std::strtoull(v, nullptr, 10));
    }
    if (const char *v = std::getenv("QSEG_WORKERS")) {
        base.worker_threads = std::atoi(v);
    }
    return base;
}

// ---------------------------------------------------------------------------
// httplib binding

namespace {

ApiRequest collect(const httplib::Request &req) {
    ApiRequest out;
    for (const auto &[key, value] : req.params) {
        out.fields[key] = value;
    }
    for (const auto &[key, file] : req.files) {
        out.fields[key] = file.content;
    }
    return out;
}

void reply(httplib::Response &res, const ApiResponse &api) {
    res.status = api.status;
    for (const auto &[k, v] : api.headers) {
        res.set_header(k, v);
    }
    res.set_content(api.body, api.content_type);
}

} // namespace

struct Server::Impl {
    ServiceConfig config;
    httplib::Server http;
    int port = 0;
};

Server::Server(ServiceConfig config) : impl_(std::make_unique<Impl>()) {
    impl_->config = std::move(config);
    auto &http = impl_->http;
    const int workers = impl_->config.worker_threads > 0
                            ? impl_->config.worker_threads
                            : static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));
    http.new_task_queue = [workers] { return new httplib::ThreadPool(static_cast<std::size_t>(workers)); };
    http.set_payload_max_length(impl_->config.max_body_bytes);

    auto bind_handler = [](ApiResponse (*handler)(const ApiRequest &)) {
        return [handler](const httplib::Request &req, httplib::Response &res) {
            reply(res, handler(collect(req)));
        };
    };
    http.Post("/api/segment", bind_handler(api_segment));
    http.Post("/api/evaluate", bind_handler(api_evaluate));
    http.Post("/api/sweep", bind_handler(api_sweep));
    http.Get("/api/sweep", [](const httplib::Request &, httplib::Response &res) {
        reply(res, error_response(405, "upload the image with POST multipart/form-data"));
    });
    http.Get("/api/thresholds", bind_handler(api_thresholds));
    http.Get("/healthz", [](const httplib::Request &, httplib::Response &res) {
        res.set_content("ok", "text/plain");
    });
    if (impl_->config.static_dir) {
        http.set_mount_point("/", impl_->config.static_dir->string());
    }
}

Server::~Server() { stop(); }

int Server::bind() {
    auto &cfg = impl_->config;
    if (cfg.port == 0) {
        impl_->port = impl_->http.bind_to_any_port(cfg.host);
    } else {
        impl_->port = impl_->http.bind_to_port(cfg.host, cfg.port) ? cfg.port : -1;
    }
    if (impl_->port < 0) {
        throw std::runtime_error(fmt::format("cannot bind {}:{}", cfg.host, cfg.port));
    }
    return impl_->port;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() {
    if (impl_ && impl_->http.is_running()) {
        impl_->http.stop();
    }
}

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

} // namespace qseg::service
