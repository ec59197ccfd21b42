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
#include <stdexcept>
#include <string>
#include <vector>

namespace rismac {

/// Raised for any invalid or inconsistent network configuration. `key()`
/// names the offending configuration key when one is known.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, std::string key = {})
        : std::runtime_error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point2&, const Point2&) = default;
};

/// Static description of the network. All quantities are stored in linear
/// SI units (watts, seconds, meters); dB/dBm conversion happens at ingestion.
struct NetworkConfig {
    std::size_t ris_elements = 0;

    double tx_power_w = 0.0;
    double tx_gain = 1.0;
    double rx_gain = 1.0;
    double ref_path_loss = 0.0;  // beta0, linear gain at 1 m
    double noise_power_w = 0.0;
    double alpha_direct = 0.0;
    double alpha_ris = 0.0;
    double carrier_frequency_hz = 0.0;  // recorded only; no formula consumes it

    std::vector<Point2> sources;
    std::vector<Point2> destinations;
    Point2 ris;

    double coherence_time = 0.0;  // tau_d
    double rts_time = 0.0;        // tau_R
    double cts_time = 0.0;        // tau_C
    double pilot_time = 0.0;      // tau_p
    double slot_time = 0.0;       // delta

    std::vector<double> access_prob;  // p_k

    std::size_t pair_count() const noexcept { return sources.size(); }

    /// RTS/CTS exchange closing a successful contention.
    double tau_m1() const noexcept { return rts_time + cts_time; }
    /// Message exchange plus RIS pilot and the second CTS.
    double tau_m2() const noexcept { return tau_m1() + pilot_time + cts_time; }
    /// Extra time spent probing the cascaded link.
    double probe_time() const noexcept { return pilot_time + cts_time; }

    friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

/// Throws ConfigError when an invariant is violated.
void validate(const NetworkConfig& cfg);

double dbm_to_watts(double dbm);
double db_to_linear(double db);

/// Reference deployment: K=8 pairs on a 10 m grid, 32-element RIS at
/// (75,100), Pt=30 dBm, tau_d=15 ms.
NetworkConfig reference_network();

}  // namespace rismac
