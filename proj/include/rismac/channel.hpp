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

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rismac/config.hpp"
#include "rismac/philox.hpp"

// Pair indices are zero-based throughout the library; files and CLI output
// present them one-based.

namespace rismac {

struct PairGeometry {
    double direct = 0.0;    // S_k -> D_k
    double to_ris = 0.0;    // S_k -> RIS
    double from_ris = 0.0;  // RIS -> D_k
};

/// Second moments of the per-pair channels, i.e. the variance of each
/// circularly-symmetric complex Gaussian coefficient.
struct PairChannel {
    double direct_power = 0.0;  // E|h|^2 = d^-alpha1
    double hop1_power = 0.0;    // E|f_m|^2 = d1^-alpha2
    double hop2_power = 0.0;    // E|g_m|^2 = d2^-alpha2
};

/// Mean and standard deviation of sum_m |f_m||g_m|.
struct CascadedMoments {
    double mu = 0.0;
    double sigma = 0.0;
};

/// What the winning destination has seen in one contention.
struct ChannelObservation {
    std::size_t pair_index = 0;
    double h_mag = 0.0;
    std::optional<std::vector<double>> cascaded;  // present only after a probe
};

/// rho_bar = Pt Gt Gr beta0 / N0.
double linear_budget(const NetworkConfig& cfg);

/// Throws std::out_of_range for a bad index and ConfigError for a zero
/// distance.
PairGeometry pair_geometry(const NetworkConfig& cfg, std::size_t k);

PairChannel pair_channel(const NetworkConfig& cfg, std::size_t k);

CascadedMoments cascaded_moments(const NetworkConfig& cfg, std::size_t k);
CascadedMoments cascaded_moments(const PairChannel& ch, std::size_t elements);

/// Rayleigh magnitude with E[h^2] = ch.direct_power, drawn by inverse CDF.
inline double draw_direct(CounterRng& rng, const PairChannel& ch) {
    return std::sqrt(-ch.direct_power * std::log(rng.uniform_open0()));
}
double draw_direct(CounterRng& rng, const NetworkConfig& cfg, std::size_t k);

/// Writes |f_m||g_m| for every element into `out`.
void draw_cascaded(CounterRng& rng, const PairChannel& ch, std::span<double> out);
std::vector<double> draw_cascaded(CounterRng& rng, const NetworkConfig& cfg, std::size_t k);

/// Sum of `elements` fresh |f_m||g_m| products without materializing them.
/// Consumes the same draws as draw_cascaded.
double draw_cascaded_sum(CounterRng& rng, const PairChannel& ch, std::size_t elements);

double rate_direct(double rho, double h_mag);
double rate_ris(double rho, double h_mag, std::span<const double> cascaded);
/// rate_ris with the cascaded magnitudes already summed.
double rate_ris_sum(double rho, double h_mag, double cascaded_sum);

}  // namespace rismac
