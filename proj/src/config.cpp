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

#include "rismac/config.hpp"

#include <cmath>

namespace rismac {

namespace {

void require(bool ok, const std::string& what, const char* key) {
    if (!ok) {
        throw ConfigError(std::string(key) + ": " + what, key);
    }
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void validate(const NetworkConfig& cfg) {
    const std::size_t k = cfg.pair_count();
    require(k >= 1, "at least one source-destination pair is required", "source_positions");
    require(cfg.destinations.size() == k, "must list as many destinations as sources",
            "destination_positions");
    require(cfg.access_prob.size() == k, "must have one access probability per pair",
            "access_probability");
    for (double p : cfg.access_prob) {
        require(p > 0.0 && p <= 1.0, "each access probability must lie in (0,1]",
                "access_probability");
    }

    require(positive_finite(cfg.tx_power_w), "transmit power must be positive", "tx_power");
    require(positive_finite(cfg.noise_power_w), "noise power must be positive", "noise_power");
    require(positive_finite(cfg.ref_path_loss), "reference path loss must be positive",
            "ref_path_loss");
    require(std::isfinite(cfg.tx_gain) && cfg.tx_gain >= 0.0, "gain must be nonnegative",
            "tx_gain");
    require(std::isfinite(cfg.rx_gain) && cfg.rx_gain >= 0.0, "gain must be nonnegative",
            "rx_gain");
    require(positive_finite(cfg.alpha_direct), "path-loss exponent must be positive",
            "alpha_direct");
    require(positive_finite(cfg.alpha_ris), "path-loss exponent must be positive", "alpha_ris");
    require(std::isfinite(cfg.carrier_frequency_hz) && cfg.carrier_frequency_hz >= 0.0,
            "carrier frequency must be nonnegative", "carrier_frequency");

    require(positive_finite(cfg.coherence_time), "duration must be positive", "coherence_time");
    require(positive_finite(cfg.rts_time), "duration must be positive", "rts_time");
    require(positive_finite(cfg.cts_time), "duration must be positive", "cts_time");
    require(positive_finite(cfg.pilot_time), "duration must be positive", "pilot_time");
    require(positive_finite(cfg.slot_time), "duration must be positive", "slot_time");
    require(cfg.coherence_time > cfg.tau_m2(),
            "coherence time must exceed rts+cts+pilot+cts", "coherence_time");

    for (std::size_t i = 0; i < k; ++i) {
        const Point2& s = cfg.sources[i];
        const Point2& d = cfg.destinations[i];
        require(std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(d.x) &&
                    std::isfinite(d.y),
                "coordinates must be finite", "source_positions");
        require(!(s == d), "pair " + std::to_string(i + 1) + " has zero direct distance",
                "destination_positions");
        require(!(s == cfg.ris), "pair " + std::to_string(i + 1) + " source sits on the RIS",
                "ris_position");
        require(!(d == cfg.ris), "pair " + std::to_string(i + 1) + " destination sits on the RIS",
                "ris_position");
    }
}

NetworkConfig reference_network() {
    NetworkConfig cfg;
    constexpr std::size_t kPairs = 8;
    cfg.ris_elements = 32;
    cfg.tx_power_w = dbm_to_watts(30.0);
    cfg.tx_gain = db_to_linear(0.0);
    cfg.rx_gain = db_to_linear(0.0);
    cfg.ref_path_loss = db_to_linear(-30.0);
    cfg.noise_power_w = dbm_to_watts(-80.0);
    cfg.alpha_direct = 3.0;
    cfg.alpha_ris = 2.5;
    cfg.carrier_frequency_hz = 2e9;
    for (std::size_t i = 0; i < kPairs; ++i) {
        const double y = 10.0 * static_cast<double>(i);
        cfg.sources.push_back({0.0, y});
        cfg.destinations.push_back({150.0, y});
    }
    cfg.ris = {75.0, 100.0};
    cfg.coherence_time = 15e-3;
    cfg.rts_time = 50e-6;
    cfg.cts_time = 50e-6;
    cfg.pilot_time = 500e-6;
    cfg.slot_time = 25e-6;
    cfg.access_prob.assign(kPairs, 0.3);
    return cfg;
}

}  // namespace rismac
