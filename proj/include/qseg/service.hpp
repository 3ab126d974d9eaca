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
 * Stateless HTTP facade. Every request carries its own image (multipart
 * upload), so handlers are pure functions of the request and safe to run
 * concurrently.
 *
 *   POST /api/segment     image, mode, theta|theta1..3, normalize, timing
 *   POST /api/evaluate    image, mask, method, theta|theta1..3, normalize, k, seed, timing
 *   GET  /api/thresholds  ?theta=... or ?ith=...
 *   POST /api/sweep       image, thetas, mask?, mode, normalize
 *   GET  /healthz         "ok"
 *
 * Label maps travel as run-length pairs: {"encoding": "rle", "runs": [[label, count], ...]}
 * in row-major order. Wall time is reported in the X-Runtime-Ms header; bodies
 * only include `runtime_ms` when the request sets `timing`, which keeps the
 * default responses byte-identical across repeats.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qseg/image.hpp"

namespace qseg::service {

/// Multipart fields and query parameters, by name. File parts hold raw bytes.
struct ApiRequest {
    std::map<std::string, std::string> fields;
};

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
    std::map<std::string, std::string> headers;
};

[[nodiscard]] ApiResponse api_segment(const ApiRequest &request);
[[nodiscard]] ApiResponse api_evaluate(const ApiRequest &request);
[[nodiscard]] ApiResponse api_thresholds(const ApiRequest &request);
[[nodiscard]] ApiResponse api_sweep(const ApiRequest &request);

[[nodiscard]] nlohmann::json encode_rle(const LabelMap &labels);

/// Expands runs back to labels; throws FormatError if the total differs from
/// width * height.
[[nodiscard]] LabelMap decode_rle(const nlohmann::json &labels, std::size_t width,
                                  std::size_t height);

inline constexpr std::size_t kDefaultMaxBody = 16u << 20;

struct ServiceConfig {
    std::string host = "0.0.0.0";
    /// 0 picks a free port at bind time.
    int port = 8080;
    std::size_t max_body_bytes = kDefaultMaxBody;
    /// HTTP worker threads; 0 uses the hardware concurrency.
    int worker_threads = 0;
    std::optional<std::filesystem::path> static_dir;
};

/// Overrides fields from QSEG_HOST, QSEG_PORT, QSEG_MAX_BODY and QSEG_WORKERS when set.
[[nodiscard]] ServiceConfig config_from_env(ServiceConfig base);

class Server {
  public:
    explicit Server(ServiceConfig config);
    ~Server();
    Server(const Server &) = delete;
    Server &operator=(const Server &) = delete;

    /// Binds the socket and returns the bound port. Throws std::runtime_error on failure.
    int bind();
    /// Serves until stop(); call after bind().
    void listen();
    void stop();
    void wait_until_ready() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace qseg::service
