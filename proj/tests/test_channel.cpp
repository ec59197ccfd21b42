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
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rismac/channel.hpp"
#include "rismac/config.hpp"

namespace {

using namespace rismac;

TEST(Channel, GeometryOfReferencePairs) {
    const NetworkConfig cfg = reference_network();
    const PairGeometry g1 = pair_geometry(cfg, 0);
    EXPECT_DOUBLE_EQ(g1.direct, 150.0);
    EXPECT_DOUBLE_EQ(g1.to_ris, 125.0);
    EXPECT_DOUBLE_EQ(g1.from_ris, 125.0);
    const PairGeometry g8 = pair_geometry(cfg, 7);
    EXPECT_NEAR(g8.to_ris, std::sqrt(75.0 * 75.0 + 30.0 * 30.0), 1e-12);
    EXPECT_NEAR(g8.to_ris, 80.777, 1e-3);
    EXPECT_THROW(pair_geometry(cfg, 8), std::out_of_range);
}

TEST(Channel, PowersFollowPathLoss) {
    const NetworkConfig cfg = reference_network();
    const PairChannel ch = pair_channel(cfg, 0);
    EXPECT_NEAR(ch.direct_power, 1.0 / (150.0 * 150.0 * 150.0), 1e-20);
    EXPECT_NEAR(ch.hop1_power, std::pow(125.0, -2.5), 1e-20);
    EXPECT_NEAR(ch.hop2_power, std::pow(125.0, -2.5), 1e-20);
}

TEST(Channel, CascadedMomentsOfReferencePairs) {
    const NetworkConfig cfg = reference_network();
    const CascadedMoments m1 = cascaded_moments(cfg, 0);
    EXPECT_NEAR(m1.mu / 1.43868e-4, 1.0, 2e-5);
    EXPECT_NEAR(m1.sigma / 2.00440e-5, 1.0, 2e-5);
    const CascadedMoments m8 = cascaded_moments(cfg, 7);
    EXPECT_NEAR(m8.mu / 4.2856e-4, 1.0, 5e-5);
    EXPECT_NEAR(m8.sigma / 5.9708e-5, 1.0, 5e-5);

    const CascadedMoments none = cascaded_moments(pair_channel(cfg, 0), 0);
    EXPECT_EQ(none.mu, 0.0);
    EXPECT_EQ(none.sigma, 0.0);
}

TEST(Channel, DirectAmplitudeIsRayleigh) {
    const NetworkConfig cfg = reference_network();
    const PairChannel ch = pair_channel(cfg, 3);
    CounterRng rng(5, 0);
    const std::size_t n = 20000;
    std::vector<double> h(n);
    double power = 0.0;
    for (double& x : h) {
        x = draw_direct(rng, ch);
        power += x * x;
    }
    EXPECT_NEAR(power / n / ch.direct_power, 1.0, 0.03);
    const double d = oracle::ks_statistic(
        h, [&](double x) { return oracle::rayleigh_cdf(x, ch.direct_power); });
    // 1% critical value of the one-sample KS statistic.
    EXPECT_LT(d, 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST(Channel, CascadedSumMatchesMomentsAndComplexGaussianOracle) {
    const NetworkConfig cfg = reference_network();
    const PairChannel ch = pair_channel(cfg, 0);
    const CascadedMoments m = cascaded_moments(ch, cfg.ris_elements);
    const std::size_t n = 100000;
    CounterRng rng(11, 0);
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = draw_cascaded_sum(rng, ch, cfg.ris_elements);
        s1 += s;
        s2 += s * s;
    }
    const double mean = s1 / n;
    const double sd = std::sqrt(s2 / n - mean * mean);
    EXPECT_NEAR(mean, m.mu, 5.0 * m.sigma / std::sqrt(static_cast<double>(n)));
    EXPECT_NEAR(sd / m.sigma, 1.0, 0.02);

    // Same quantity from complex Gaussian draws with an unrelated generator.
    std::mt19937_64 gen(3);
    double o1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t e = 0; e < cfg.ris_elements; ++e) {
            s += std::abs(oracle::complex_gaussian(gen, ch.hop1_power)) *
                 std::abs(oracle::complex_gaussian(gen, ch.hop2_power));
        }
        o1 += s;
    }
    EXPECT_NEAR(mean, o1 / n, 7.0 * m.sigma / std::sqrt(static_cast<double>(n)));
}

TEST(Channel, VectorAndSumDrawsConsumeTheSameStream) {
    const NetworkConfig cfg = reference_network();
    CounterRng a(7, 1);
    CounterRng b(7, 1);
    const std::vector<double> v = draw_cascaded(a, cfg, 2);
    ASSERT_EQ(v.size(), cfg.ris_elements);
    double s = 0.0;
    for (double x : v) {
        EXPECT_GT(x, 0.0);
        s += x;
    }
    EXPECT_DOUBLE_EQ(draw_cascaded_sum(b, pair_channel(cfg, 2), cfg.ris_elements), s);
    EXPECT_EQ(a(), b());
}

TEST(Channel, Rates) {
    EXPECT_DOUBLE_EQ(rate_direct(1e8, 1e-4), 0.0 + std::log2(2.0));
    EXPECT_EQ(rate_direct(0.0, 5.0), 0.0);
    const std::vector<double> casc{1e-4, 2e-4};
    EXPECT_DOUBLE_EQ(rate_ris(1e8, 0.0, casc), std::log2(1.0 + 1e8 * 9e-8));
    EXPECT_DOUBLE_EQ(rate_ris(1e8, 1e-4, casc), rate_ris_sum(1e8, 1e-4, 3e-4));
    // Assisted rate never falls below the direct rate.
    EXPECT_GE(rate_ris(1e8, 1e-3, casc), rate_direct(1e8, 1e-3));
}

}  // namespace
