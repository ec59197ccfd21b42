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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rismac/config.hpp"
#include "rismac/philox.hpp"
#include "rismac/strategies.hpp"

namespace rismac {

/// One round from the first contention to the data transmission.
struct RoundLedger {
    std::vector<Decision> path;  // every decision taken, in order
    double contention_time = 0.0;  // sum of contention durations, RTS/CTS included
    double probe_time = 0.0;       // (tau_p + tau_C) per probe, terminal one excluded
    double bits = 0.0;
    double total_time = 0.0;  // contention_time + probe_time + (tau_d - tau_M1)
    Decision terminal = Decision::StopDirect;
    std::size_t contentions = 0;
    std::size_t probes = 0;  // includes the terminal probe of a StopRIS round
    std::size_t last_winner = 0;
};

/// Per-pair channel statistics the round engine samples from.
struct ChannelSet {
    std::vector<PairChannel> pairs;
    double rho = 0.0;

    static ChannelSet from_config(const NetworkConfig& cfg);
};

/// Plays one round using `rng`. Throws std::runtime_error if the round has
/// not stopped after `max_contentions` contentions.
RoundLedger run_round(CounterRng& rng, const NetworkConfig& cfg, const ChannelSet& channels,
                      const Strategy& strategy, std::size_t max_contentions = 10'000'000);

/// Round `round` of a campaign seeded with `seed` (stream = round index).
RoundLedger run_round(std::uint64_t seed, std::uint64_t round, const NetworkConfig& cfg,
                      const ChannelSet& channels, const Strategy& strategy);

struct ThroughputEstimate {
    double mean = 0.0;          // sum(bits) / sum(time)
    double ci_halfwidth = 0.0;  // 95 %, batch means; +inf below two batches
    std::size_t n_rounds = 0;
    double mean_contentions = 0.0;
    double mean_probes = 0.0;
};

struct CampaignResult {
    ThroughputEstimate estimate;
    std::vector<double> bits;  // per round
    std::vector<double> time;  // per round
    std::vector<std::uint32_t> contentions;
    std::vector<std::uint32_t> probes;
};

inline constexpr std::size_t kBatchCount = 100;

/// Ratio estimator with a batch-means confidence interval over
/// min(kBatchCount, n) contiguous batches.
ThroughputEstimate estimate_throughput(std::span<const double> bits, std::span<const double> time);

/// Worker count: RISMAC_THREADS if set and positive, capped by the OpenMP
/// maximum.
int resolve_threads();

/// Rounds 0..n-1 fanned out over `threads` workers (0: resolve_threads()).
/// Bit-identical to run_campaign_serial for any worker count.
CampaignResult run_campaign(std::uint64_t seed, const NetworkConfig& cfg, const Strategy& strategy,
                            std::size_t n_rounds, int threads = 0);
CampaignResult run_campaign_serial(std::uint64_t seed, const NetworkConfig& cfg,
                                   const Strategy& strategy, std::size_t n_rounds);

/// Tab-separated per-round dump for debugging, one line per round.
void write_round_header(std::ostream& out);
void write_round(std::ostream& out, std::uint64_t round, const RoundLedger& ledger);

}  // namespace rismac
