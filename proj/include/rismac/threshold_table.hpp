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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rismac/config.hpp"
#include "rismac/solver.hpp"

namespace rismac {

struct PairThresholds {
    bool member = false;  // k in K*
    double zeta = 0.0;    // give-up amplitude, meaningful only for members
    double eta = 0.0;     // direct-stop amplitude, meaningful only for members
    friend bool operator==(const PairThresholds&, const PairThresholds&) = default;
};

/// Offline state of the pure-threshold policy: everything the online
/// decision needs, plus provenance.
struct ThresholdTable {
    std::string config_hash;
    double lambda_star = 0.0;
    double residual = 0.0;
    double tau_o = 0.0;
    double rho = 0.0;
    std::vector<PairThresholds> pairs;

    bool is_member(std::size_t k) const { return k < pairs.size() && pairs[k].member; }
    std::vector<std::size_t> kstar() const;

    friend bool operator==(const ThresholdTable&, const ThresholdTable&) = default;
};

/// lambda*, K*, and (zeta_k, eta_k) for every k in K*.
ThresholdTable build_threshold_table(const NetworkConfig& cfg, const FixedPointOptions& opts = {});

// Table files are `key = value` lines (see docs/threshold-table.md):
//
//   format = rismac-thresholds/1
//   config_hash = 16 hex digits
//   lambda_star, residual, tau_o, rho = shortest round-trip decimals
//   pairs = K
//   pair.<k>.member = 0|1          (k is one-based)
//   pair.<k>.zeta, pair.<k>.eta    (members only)

void write_table(std::ostream& out, const ThresholdTable& table);
ThresholdTable read_table(std::istream& in);

void save_table(const std::filesystem::path& path, const ThresholdTable& table);
ThresholdTable load_table(const std::filesystem::path& path);

/// Throws std::invalid_argument when the table was not solved for `cfg`.
void check_table_matches(const ThresholdTable& table, const NetworkConfig& cfg);

}  // namespace rismac
