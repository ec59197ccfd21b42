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

#include "rismac/simulator.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "rismac/channel.hpp"
#include "rismac/contention.hpp"
#include "rismac/numerics.hpp"

namespace rismac {

ChannelSet ChannelSet::from_config(const NetworkConfig& cfg) {
    ChannelSet set;
    set.rho = linear_budget(cfg);
    set.pairs.reserve(cfg.pair_count());
    for (std::size_t k = 0; k < cfg.pair_count(); ++k) {
        set.pairs.push_back(pair_channel(cfg, k));
    }
    return set;
}

RoundLedger run_round(CounterRng& rng, const NetworkConfig& cfg, const ChannelSet& channels,
                      const Strategy& strategy, std::size_t max_contentions) {
    if (strategy.kind() == PolicyKind::Proposed &&
        strategy.table()->pairs.size() != channels.pairs.size()) {
        throw std::invalid_argument("threshold table does not match the pair count");
    }
    const double window = cfg.coherence_time - cfg.tau_m1();
    const double probe_cost = cfg.probe_time();

    RoundLedger r;
    while (r.contentions < max_contentions) {
        const ContentionOutcome c = simulate_contention(rng, cfg);
        ++r.contentions;
        r.contention_time += c.elapsed;
        r.last_winner = c.winner;
        const PairChannel& ch = channels.pairs[c.winner];
        const double h = draw_direct(rng, ch);

        const Decision d1 = strategy.level1(c.winner, h);
        r.path.push_back(d1);
        if (d1 == Decision::StopDirect) {
            r.terminal = Decision::StopDirect;
            r.bits = window * rate_direct(channels.rho, h);
            r.total_time = r.contention_time + r.probe_time + window;
            return r;
        }
        if (d1 == Decision::Continue) {
            continue;
        }

        ++r.probes;
        const double sum = draw_cascaded_sum(rng, ch, cfg.ris_elements);
        const double rate = rate_ris_sum(channels.rho, h, sum);
        const Decision d2 = strategy.level2(rate);
        r.path.push_back(d2);
        if (d2 == Decision::StopRIS) {
            r.terminal = Decision::StopRIS;
            r.bits = (cfg.coherence_time - cfg.tau_m2()) * rate;
            r.total_time = r.contention_time + r.probe_time + window;
            return r;
        }
        r.probe_time += probe_cost;
    }
    throw std::runtime_error("round did not stop after " + std::to_string(max_contentions) +
                             " contentions");
}

RoundLedger run_round(std::uint64_t seed, std::uint64_t round, const NetworkConfig& cfg,
                      const ChannelSet& channels, const Strategy& strategy) {
    CounterRng rng(seed, round);
    return run_round(rng, cfg, channels, strategy);
}

ThroughputEstimate estimate_throughput(std::span<const double> bits, std::span<const double> time) {
    if (bits.size() != time.size()) {
        throw std::invalid_argument("bits and time differ in length");
    }
    ThroughputEstimate e;
    e.n_rounds = bits.size();
    if (bits.empty()) {
        e.ci_halfwidth = std::numeric_limits<double>::infinity();
        return e;
    }
    e.mean = pairwise_sum(bits) / pairwise_sum(time);

    const std::size_t n = bits.size();
    const std::size_t batches = std::min(kBatchCount, n);
    if (batches < 2) {
        e.ci_halfwidth = std::numeric_limits<double>::infinity();
        return e;
    }
    std::vector<double> ratios(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t lo = b * n / batches;
        const std::size_t hi = (b + 1) * n / batches;
        ratios[b] = pairwise_sum(bits.subspan(lo, hi - lo)) / pairwise_sum(time.subspan(lo, hi - lo));
    }
    const double m = pairwise_sum(ratios) / static_cast<double>(batches);
    double ss = 0.0;
    for (double r : ratios) {
        ss += (r - m) * (r - m);
    }
    const double sd = std::sqrt(ss / static_cast<double>(batches - 1));
    const boost::math::students_t dist(static_cast<double>(batches - 1));
    const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
    e.ci_halfwidth = t * sd / std::sqrt(static_cast<double>(batches));
    return e;
}

int resolve_threads() {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("RISMAC_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            n = static_cast<int>(std::min<long>(v, n));
        }
    }
    return std::max(n, 1);
}

namespace {

CampaignResult allocate(std::size_t n) {
    CampaignResult out;
    out.bits.resize(n);
    out.time.resize(n);
    out.contentions.resize(n);
    out.probes.resize(n);
    return out;
}

void record(CampaignResult& out, std::size_t i, const RoundLedger& r) {
    out.bits[i] = r.bits;
    out.time[i] = r.total_time;
    out.contentions[i] = static_cast<std::uint32_t>(r.contentions);
    out.probes[i] = static_cast<std::uint32_t>(r.probes);
}

void summarize(CampaignResult& out) {
    out.estimate = estimate_throughput(out.bits, out.time);
    const std::size_t n = out.bits.size();
    if (n == 0) {
        return;
    }
    std::uint64_t c = 0;
    std::uint64_t p = 0;
    for (std::size_t i = 0; i < n; ++i) {
        c += out.contentions[i];
        p += out.probes[i];
    }
    out.estimate.mean_contentions = static_cast<double>(c) / static_cast<double>(n);
    out.estimate.mean_probes = static_cast<double>(p) / static_cast<double>(n);
}

}  // namespace

CampaignResult run_campaign(std::uint64_t seed, const NetworkConfig& cfg, const Strategy& strategy,
                            std::size_t n_rounds, int threads) {
    if (n_rounds == 0) {
        throw std::invalid_argument("campaign needs at least one round");
    }
    const ChannelSet channels = ChannelSet::from_config(cfg);
    CampaignResult out = allocate(n_rounds);
    const int workers = threads > 0 ? threads : resolve_threads();
    const auto n = static_cast<std::ptrdiff_t>(n_rounds);

    // Exceptions may not cross the parallel region.
    std::string failure;
#pragma omp parallel for num_threads(workers) schedule(static, 256)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            record(out, static_cast<std::size_t>(i),
                   run_round(seed, static_cast<std::uint64_t>(i), cfg, channels, strategy));
        } catch (const std::exception& ex) {
#pragma omp critical(rismac_campaign_failure)
            if (failure.empty()) {
                failure = ex.what();
            }
        }
    }
    if (!failure.empty()) {
        throw std::runtime_error(failure);
    }
    summarize(out);
    return out;
}

CampaignResult run_campaign_serial(std::uint64_t seed, const NetworkConfig& cfg,
                                   const Strategy& strategy, std::size_t n_rounds) {
    if (n_rounds == 0) {
        throw std::invalid_argument("campaign needs at least one round");
    }
    const ChannelSet channels = ChannelSet::from_config(cfg);
    CampaignResult out = allocate(n_rounds);
    for (std::size_t i = 0; i < n_rounds; ++i) {
        record(out, i, run_round(seed, i, cfg, channels, strategy));
    }
    summarize(out);
    return out;
}

void write_round_header(std::ostream& out) {
    out << "round\tcontentions\tprobes\tcontention_time\tprobe_time\ttotal_time\tbits\tterminal\tpath\n";
}

void write_round(std::ostream& out, std::uint64_t round, const RoundLedger& r) {
    out << round << '\t' << r.contentions << '\t' << r.probes << '\t' << r.contention_time << '\t'
        << r.probe_time << '\t' << r.total_time << '\t' << r.bits << '\t'
        << decision_name(r.terminal) << '\t';
    for (std::size_t i = 0; i < r.path.size(); ++i) {
        out << (i ? "," : "") << decision_name(r.path[i]);
    }
    out << '\n';
}

}  // namespace rismac
