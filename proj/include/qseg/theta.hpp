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

#include <string>
#include <string_view>

namespace qseg {

/// Parses an angle written either as decimal radians ("3.14159") or as a
/// multiple of pi: "pi", "3pi/4", "1.1197pi", "pi/4", "0.5*pi", "π/2".
/// Throws InputError on anything else.
[[nodiscard]] double parse_theta(std::string_view text);

/// Renders an angle as a pi multiple with up to 4 significant decimals,
/// e.g. "pi", "0.75pi", "1.1198pi", "0".
[[nodiscard]] std::string format_theta(double radians);

} // namespace qseg
