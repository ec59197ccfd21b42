/*
   Copyright 2026 The rismac Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rismac/config.hpp"

namespace rismac {

// Config files are line-oriented `key = value unit` text; `#` starts a
// comment. Accepted units per key family:
//
//   powers          dBm | mW | W
//   gains, beta0    dB | lin
//   durations       s | ms | us
//   frequency       Hz | kHz | MHz | GHz
//   coordinates     (x,y) ... m
//
// Path-loss exponents, element count and access probabilities are unitless.
// See docs/config-format.md for the full key list.

NetworkConfig parse_config_text(std::string_view text);
NetworkConfig parse_config(const std::filesystem::path& path);

/// SI-unit rendering that re-parses to a bit-identical NetworkConfig.
std::string to_canonical_text(const NetworkConfig& cfg);

/// 64-bit FNV-1a of the canonical text, as 16 lowercase hex digits.
std::string config_hash(const NetworkConfig& cfg);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

}  // namespace rismac
