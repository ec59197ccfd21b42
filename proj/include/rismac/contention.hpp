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

#include <cstddef>
#include <span>

#include "rismac/config.hpp"
#include "rismac/philox.hpp"

namespace rismac {

struct ContentionOutcome {
    std::size_t winner = 0;
    double elapsed = 0.0;  // includes the closing RTS/CTS exchange
    std::size_t idle_slots = 0;
    std::size_t collisions = 0;
};

/// Probability that exactly one pair transmits an RTS in a slot. Throws
/// std::invalid_argument if it is zero.
double success_probability(std::span<const double> p);

/// Mean duration of a successful contention:
///   tau_M1 + P0 delta / ps + (1 - P0 - ps) tau_R / ps,  P0 = prod(1 - p_k).
double expected_contention_time(const NetworkConfig& cfg);

/// Plays slots until exactly one pair sends. Idle slots cost delta,
/// collisions cost tau_R, the success costs tau_M1.
ContentionOutcome simulate_contention(CounterRng& rng, const NetworkConfig& cfg);

}  // namespace rismac
