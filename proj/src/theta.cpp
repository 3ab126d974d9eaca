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

#include "qseg/theta.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "qseg/error.hpp"
#include "qseg/iqft.hpp"

namespace qseg {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> parse_number(std::string_view s) {
    if (s.empty()) {
        return std::nullopt;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

[[noreturn]] void bad_theta(std::string_view text) {
    throw InputError("cannot parse angle '" + std::string(text) +
                     "' (expected radians or a pi multiple such as 3pi/4)");
}

} // namespace

double parse_theta(std::string_view text) {
    const std::string_view s = trim(text);
    std::size_t pi_pos = s.find("pi");
    std::size_t pi_len = 2;
    if (pi_pos == std::string_view::npos) {
        pi_pos = s.find("π");
        pi_len = std::string_view("π").size();
    }
    if (pi_pos == std::string_view::npos) {
        if (auto v = parse_number(s)) {
            return *v;
        }
        bad_theta(text);
    }

    std::string_view coef = trim(s.substr(0, pi_pos));
    if (!coef.empty() && coef.back() == '*') {
        coef = trim(coef.substr(0, coef.size() - 1));
        if (coef.empty()) {
            bad_theta(text);
        }
    }
    double multiplier = 1.0;
    if (coef == "-") {
        multiplier = -1.0;
    } else if (!coef.empty()) {
        auto v = parse_number(coef);
        if (!v) {
            bad_theta(text);
        }
        multiplier = *v;
    }

    std::string_view rest = trim(s.substr(pi_pos + pi_len));
    double divisor = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            bad_theta(text);
        }
        auto v = parse_number(trim(rest.substr(1)));
        if (!v || *v == 0.0) {
            bad_theta(text);
        }
        divisor = *v;
    }
    return multiplier * kPi / divisor;
}

std::string format_theta(double radians) {
    const double m = radians / kPi;
    if (m == 0.0) {
        return "0";
    }
    std::string coef = fmt::format("{:.4f}", m);
    while (coef.back() == '0') {
        coef.pop_back();
    }
    if (coef.back() == '.') {
        coef.pop_back();
    }
    if (coef == "1") {
        return "pi";
    }
    if (coef == "-1") {
        return "-pi";
    }
    return coef + "pi";
}

} // namespace qseg
