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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace qseg {

/// Input outside the domain an operation accepts (bad channel value, bad θ, empty image).
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed PNG/JPEG stream. `offset()` is the byte position when the codec reports one.
class DecodeError : public std::runtime_error {
  public:
    explicit DecodeError(const std::string &what,
                         std::optional<std::size_t> offset = std::nullopt)
        : std::runtime_error(offset ? what + " (at byte " + std::to_string(*offset) + ")"
                                    : what),
          offset_(offset) {}

    [[nodiscard]] std::optional<std::size_t> offset() const noexcept { return offset_; }

  private:
    std::optional<std::size_t> offset_;
};

/// Well-formed image whose content violates a file-format contract (e.g. mask values).
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A metric with no defined value, e.g. mIOU over zero non-void pixels.
class MetricError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qseg
