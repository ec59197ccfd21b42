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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "rismac/channel.hpp"
#include "rismac/contention.hpp"
#include "rismac/harness.hpp"
#include "rismac/simulator.hpp"

namespace {

using namespace rismac;

struct Fixture {
    NetworkConfig cfg = reference_network();
    OfflineModel model = OfflineModel::from_config(cfg);
    ChannelSet channels = ChannelSet::from_config(cfg);
    ThresholdTable table = build_threshold_table(cfg);
    double lambda_b = solve_lambda_b(model).lambda;

    std::vector<Strategy> all() const {
        return {Strategy::proposed(table), Strategy::optimal_ris_stop(lambda_b),
                Strategy::no_wait_ris(), Strategy::no_wait_direct()};
    }
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}

TEST(Simulator, NoWaitDirectRoundReplays) {
    const Fixture& f = fx();
    for (std::uint64_t round = 0; round < 50; ++round) {
        const RoundLedger r = run_round(3, round, f.cfg, f.channels, Strategy::no_wait_direct());
        CounterRng replay(3, round);
        const ContentionOutcome c = simulate_contention(replay, f.cfg);
        const double h = draw_direct(replay, f.channels.pairs[c.winner]);
        const double window = f.cfg.coherence_time - f.cfg.tau_m1();
        ASSERT_EQ(r.path, std::vector<Decision>{Decision::StopDirect});
        EXPECT_EQ(r.contentions, 1u);
        EXPECT_EQ(r.probes, 0u);
        EXPECT_EQ(r.last_winner, c.winner);
        EXPECT_EQ(r.contention_time, c.elapsed);
        EXPECT_EQ(r.total_time, c.elapsed + window);
        EXPECT_EQ(r.bits, window * rate_direct(f.channels.rho, h));
    }
}

TEST(Simulator, NoWaitRisChargesOnlyTheWindowAfterContention) {
    const Fixture& f = fx();
    for (std::uint64_t round = 0; round < 50; ++round) {
        const RoundLedger r = run_round(8, round, f.cfg, f.channels, Strategy::no_wait_ris());
        ASSERT_EQ(r.path, (std::vector<Decision>{Decision::AssistRIS, Decision::StopRIS}));
        EXPECT_EQ(r.probes, 1u);
        EXPECT_EQ(r.probe_time, 0.0);
        EXPECT_EQ(r.total_time, r.contention_time + (f.cfg.coherence_time - f.cfg.tau_m1()));
        EXPECT_GT(r.bits, 0.0);
    }
}

TEST(Simulator, LedgerIdentityHoldsOnEveryRound) {
    const Fixture& f = fx();
    const double window = f.cfg.coherence_time - f.cfg.tau_m1();
    for (const Strategy& s : f.all()) {
        for (std::uint64_t round = 0; round < 20000; ++round) {
            const RoundLedger r = run_round(12, round, f.cfg, f.channels, s);
            ASSERT_EQ(r.total_time, r.contention_time + r.probe_time + window);
            ASSERT_GE(r.bits, 0.0);
            ASSERT_FALSE(r.path.empty());
            ASSERT_EQ(r.path.back(), r.terminal);
            ASSERT_TRUE(r.terminal == Decision::StopDirect || r.terminal == Decision::StopRIS);
            std::size_t level1 = 0;
            std::size_t assists = 0;
            for (std::size_t i = 0; i < r.path.size(); ++i) {
                if (r.path[i] == Decision::AssistRIS) {
                    ++assists;
                    ASSERT_LT(i + 1, r.path.size());
                    ASSERT_TRUE(r.path[i + 1] == Decision::StopRIS ||
                                r.path[i + 1] == Decision::Continue);
                }
                const bool second = i > 0 && r.path[i - 1] == Decision::AssistRIS;
                level1 += !second;
            }
            ASSERT_EQ(level1, r.contentions);
            ASSERT_EQ(assists, r.probes);
            const std::size_t charged = r.probes - (r.terminal == Decision::StopRIS ? 1 : 0);
            ASSERT_NEAR(r.probe_time, charged * f.cfg.probe_time(), 1e-12);
        }
    }
}

TEST(Simulator, StrongFirstObservationStopsImmediately) {
    const Fixture& f = fx();
    const Strategy s = Strategy::proposed(f.table);
    int seen = 0;
    for (std::uint64_t round = 0; round < 600000; ++round) {
        CounterRng replay(4, round);
        const ContentionOutcome c = simulate_contention(replay, f.cfg);
        const double h = draw_direct(replay, f.channels.pairs[c.winner]);
        if (h >= f.table.pairs[c.winner].eta) {
            const RoundLedger r = run_round(4, round, f.cfg, f.channels, s);
            EXPECT_EQ(r.contentions, 1u);
            EXPECT_EQ(r.terminal, Decision::StopDirect);
            ++seen;
        }
    }
    EXPECT_GT(seen, 50);
}

TEST(Simulator, RoundsThatNeverStopAreCapped) {
    const Fixture& f = fx();
    CounterRng rng(1, 1);
    EXPECT_THROW(run_round(rng, f.cfg, f.channels, Strategy::optimal_ris_stop(1e9), 100),
                 std::runtime_error);
}

TEST(Simulator, TableForAnotherNetworkIsRejected) {
    const Fixture& f = fx();
    ThresholdTable small = f.table;
    small.pairs.resize(3);
    CounterRng rng(1, 1);
    EXPECT_THROW(run_round(rng, f.cfg, f.channels, Strategy::proposed(small)), std::invalid_argument);
}

TEST(Simulator, CampaignIsIndependentOfWorkerCount) {
    const Fixture& f = fx();
    for (const Strategy& s : f.all()) {
        const CampaignResult ref = run_campaign_serial(31, f.cfg, s, 3000);
        for (int t : {1, 2, 3, 8}) {
            const CampaignResult par = run_campaign(31, f.cfg, s, 3000, t);
            ASSERT_EQ(par.bits, ref.bits);
            ASSERT_EQ(par.time, ref.time);
            ASSERT_EQ(par.contentions, ref.contentions);
            EXPECT_EQ(par.estimate.mean, ref.estimate.mean);
            EXPECT_EQ(par.estimate.ci_halfwidth, ref.estimate.ci_halfwidth);
        }
    }
}

TEST(Simulator, ThreadCapFromEnvironment) {
    ::setenv("RISMAC_THREADS", "1", 1);
    EXPECT_EQ(resolve_threads(), 1);
    ::setenv("RISMAC_THREADS", "lots", 1);
    EXPECT_GE(resolve_threads(), 1);
    ::setenv("RISMAC_THREADS", "0", 1);
    EXPECT_GE(resolve_threads(), 1);
    ::unsetenv("RISMAC_THREADS");
}

TEST(Simulator, ThroughputEstimator) {
    const std::vector<double> bits{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> time{1.0, 1.0, 1.0, 1.0};
    const ThroughputEstimate e = estimate_throughput(bits, time);
    EXPECT_DOUBLE_EQ(e.mean, 2.5);
    EXPECT_EQ(e.n_rounds, 4u);
    EXPECT_GT(e.ci_halfwidth, 0.0);
    const std::vector<double> one{1.0};
    EXPECT_TRUE(std::isinf(estimate_throughput(one, one).ci_halfwidth));
    EXPECT_THROW(estimate_throughput(bits, one), std::invalid_argument);
    EXPECT_THROW(run_campaign(1, fx().cfg, Strategy::no_wait_direct(), 0), std::invalid_argument);
}

TEST(Simulator, FourTimesTheRoundsHalvesTheInterval) {
    const Fixture& f = fx();
    const Strategy s = Strategy::proposed(f.table);
    const double a = run_campaign(5, f.cfg, s, 25000).estimate.ci_halfwidth;
    const double b = run_campaign(5, f.cfg, s, 100000).estimate.ci_halfwidth;
    EXPECT_NEAR(a / b, 2.0, 0.5);
}

TEST(Simulator, NoWaitDirectMatchesRenewalReward) {
    const Fixture& f = fx();
    const double closed = analytic_no_wait_direct(f.model);
    const double sim = run_campaign(6, f.cfg, Strategy::no_wait_direct(), 200000).estimate.mean;
    EXPECT_NEAR(sim / closed, 1.0, 0.01);
}

TEST(Simulator, NoWaitRisMatchesRenewalReward) {
    const Fixture& f = fx();
    const double closed = analytic_no_wait_ris(f.model, 100000, 77);
    const double sim = run_campaign(6, f.cfg, Strategy::no_wait_ris(), 200000).estimate.mean;
    EXPECT_NEAR(sim / closed, 1.0, 0.01);
}

TEST(Simulator, ProposedPolicyApproachesLambdaStar) {
    const Fixture& f = fx();
    const ThroughputEstimate e =
        run_campaign(7, f.cfg, Strategy::proposed(f.table), 100000).estimate;
    EXPECT_NEAR(e.mean / f.table.lambda_star, 1.0, 0.03);
}

// P(a contention ends the round) under the threshold policy, by Monte Carlo
// over the decision regions with an unrelated generator.
double stop_probability_oracle(const Fixture& f, std::size_t per_pair) {
    std::mt19937_64 gen(2024);
    std::exponential_distribution<double> expo(1.0);
    double total = 0.0;
    for (std::size_t k = 0; k < f.cfg.pair_count(); ++k) {
        const PairChannel& ch = f.channels.pairs[k];
        const PairThresholds& t = f.table.pairs[k];
        std::size_t stops = 0;
        for (std::size_t i = 0; i < per_pair; ++i) {
            const double h = std::sqrt(ch.direct_power * expo(gen));
            if (h >= t.eta) {
                ++stops;
            } else if (h > t.zeta) {
                double s = 0.0;
                for (std::size_t m = 0; m < f.cfg.ris_elements; ++m) {
                    s += std::abs(oracle::complex_gaussian(gen, ch.hop1_power)) *
                         std::abs(oracle::complex_gaussian(gen, ch.hop2_power));
                }
                stops += rate_ris_sum(f.channels.rho, h, s) >= f.table.lambda_star;
            }
        }
        total += static_cast<double>(stops) / static_cast<double>(per_pair);
    }
    return total / static_cast<double>(f.cfg.pair_count());
}

TEST(Simulator, ContentionsPerRoundAreGeometric) {
    const Fixture& f = fx();
    const double p = stop_probability_oracle(f, 200000);
    const std::size_t n = 1000000;
    const CampaignResult res = run_campaign(9, f.cfg, Strategy::proposed(f.table), n);
    std::vector<double> freq(4, 0.0);
    for (std::uint32_t c : res.contentions) {
        if (c <= freq.size()) {
            freq[c - 1] += 1.0 / static_cast<double>(n);
        }
    }
    // Oracle uncertainty (8 x 2e5 draws) dominates the campaign's.
    const double sp = std::sqrt(p * (1 - p) / 1.6e6);
    for (std::size_t j = 0; j < freq.size(); ++j) {
        const double expect = p * std::pow(1.0 - p, static_cast<double>(j));
        const double tol = 6.0 * (std::sqrt(expect / n) + sp * (1.0 + j));
        EXPECT_NEAR(freq[j], expect, tol) << "contentions=" << j + 1;
    }
    EXPECT_NEAR(res.estimate.mean_contentions * p, 1.0, 0.01);
}

TEST(Simulator, RoundDump) {
    const Fixture& f = fx();
    std::ostringstream out;
    write_round_header(out);
    write_round(out, 0, run_round(2, 0, f.cfg, f.channels, Strategy::no_wait_ris()));
    const std::string s = out.str();
    EXPECT_EQ(s.rfind("round\tcontentions", 0), 0u);
    EXPECT_NE(s.find("\tstop-ris\tassist-ris,stop-ris\n"), std::string::npos);
}

}  // namespace
