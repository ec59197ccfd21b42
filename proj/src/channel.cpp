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

#include "rismac/channel.hpp"

#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rismac {

namespace {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// |f_m||g_m| for one element: product of two Rayleigh magnitudes.
inline double draw_element(CounterRng& rng, double hop_product) {
    const double e1 = -std::log(rng.uniform_open0());
    const double e2 = -std::log(rng.uniform_open0());
    return std::sqrt(hop_product * e1 * e2);
}

}  // namespace

double linear_budget(const NetworkConfig& cfg) {
    return cfg.tx_power_w * cfg.tx_gain * cfg.rx_gain * cfg.ref_path_loss / cfg.noise_power_w;
}

PairGeometry pair_geometry(const NetworkConfig& cfg, std::size_t k) {
    if (k >= cfg.pair_count() || k >= cfg.destinations.size()) {
        throw std::out_of_range("pair index " + std::to_string(k) + " out of range");
    }
    PairGeometry g{distance(cfg.sources[k], cfg.destinations[k]),
                   distance(cfg.sources[k], cfg.ris), distance(cfg.ris, cfg.destinations[k])};
    if (!(g.direct > 0.0 && g.to_ris > 0.0 && g.from_ris > 0.0)) {
        throw ConfigError("pair " + std::to_string(k + 1) + " has a zero-length link",
                          "destination_positions");
    }
    return g;
}

PairChannel pair_channel(const NetworkConfig& cfg, std::size_t k) {
    const PairGeometry g = pair_geometry(cfg, k);
    return {std::pow(g.direct, -cfg.alpha_direct), std::pow(g.to_ris, -cfg.alpha_ris),
            std::pow(g.from_ris, -cfg.alpha_ris)};
}

CascadedMoments cascaded_moments(const PairChannel& ch, std::size_t elements) {
    using std::numbers::pi;
    const double m = static_cast<double>(elements);
    const double hop = ch.hop1_power * ch.hop2_power;
    return {m * pi / 4.0 * std::sqrt(hop), std::sqrt(m * (1.0 - pi * pi / 16.0) * hop)};
}

CascadedMoments cascaded_moments(const NetworkConfig& cfg, std::size_t k) {
    return cascaded_moments(pair_channel(cfg, k), cfg.ris_elements);
}

double draw_direct(CounterRng& rng, const NetworkConfig& cfg, std::size_t k) {
    return draw_direct(rng, pair_channel(cfg, k));
}

void draw_cascaded(CounterRng& rng, const PairChannel& ch, std::span<double> out) {
    const double hop = ch.hop1_power * ch.hop2_power;
    for (double& v : out) {
        v = draw_element(rng, hop);
    }
}

std::vector<double> draw_cascaded(CounterRng& rng, const NetworkConfig& cfg, std::size_t k) {
    std::vector<double> out(cfg.ris_elements);
    draw_cascaded(rng, pair_channel(cfg, k), out);
    return out;
}

double draw_cascaded_sum(CounterRng& rng, const PairChannel& ch, std::size_t elements) {
    const double hop = ch.hop1_power * ch.hop2_power;
    double sum = 0.0;
    for (std::size_t m = 0; m < elements; ++m) {
        sum += draw_element(rng, hop);
    }
    return sum;
}

double rate_direct(double rho, double h_mag) { return std::log2(1.0 + rho * h_mag * h_mag); }

double rate_ris_sum(double rho, double h_mag, double cascaded_sum) {
    const double amp = h_mag + cascaded_sum;
    return std::log2(1.0 + rho * amp * amp);
}

double rate_ris(double rho, double h_mag, std::span<const double> cascaded) {
    return rate_ris_sum(rho, h_mag, std::accumulate(cascaded.begin(), cascaded.end(), 0.0));
}

}  // namespace rismac
