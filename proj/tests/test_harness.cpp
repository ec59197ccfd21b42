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
#include <sstream>
#include <string>

#include <boost/math/special_functions/expint.hpp>

#include "rismac/config_io.hpp"
#include "rismac/harness.hpp"

namespace {

using namespace rismac;

const PointSolution& reference_point() {
    static const PointSolution p = solve_point(reference_network(), 1);
    return p;
}

TEST(Harness, ExpectedDirectRateMatchesExponentialIntegral) {
    // E[ln(1 + s X)] = e^{1/s} E1(1/s) for X ~ Exp(1).
    for (double snr : {0.1, 1.0, 29.6, 1e3, 1e6}) {
        const double ref = std::exp(1.0 / snr) * boost::math::expint(1, 1.0 / snr) / std::numbers::ln2;
        EXPECT_NEAR(expected_direct_rate(snr, 1.0), ref, 1e-9 * std::max(1.0, ref)) << snr;
    }
    EXPECT_EQ(expected_direct_rate(0.0, 1.0), 0.0);
}

TEST(Harness, PointSolutionOrdering) {
    const PointSolution& p = reference_point();
    EXPECT_GT(p.analytic(PolicyKind::Proposed), p.analytic(PolicyKind::OptimalRISStop));
    EXPECT_GT(p.analytic(PolicyKind::OptimalRISStop), p.analytic(PolicyKind::NoWaitRIS));
    EXPECT_GT(p.analytic(PolicyKind::NoWaitRIS), p.analytic(PolicyKind::NoWaitDirect));
    EXPECT_NEAR(p.no_wait_direct, 4.163, 2e-3);
    EXPECT_NEAR(p.no_wait_ris, 5.347, 5e-3);
}

TEST(Harness, ProposedNeedsATable) {
    EXPECT_THROW(make_strategy(PolicyKind::Proposed, nullptr, 0.0), std::invalid_argument);
    EXPECT_EQ(make_strategy(PolicyKind::NoWaitRIS, nullptr, 0.0).kind(), PolicyKind::NoWaitRIS);
    EXPECT_EQ(make_strategy(PolicyKind::OptimalRISStop, nullptr, 4.0).rate_threshold(), 4.0);
}

TEST(Harness, AxisHandling) {
    EXPECT_EQ(parse_axis("pt"), SweepAxis::TxPower);
    EXPECT_EQ(parse_axis("tau_d"), SweepAxis::CoherenceTime);
    EXPECT_EQ(parse_axis("Pt"), std::nullopt);
    EXPECT_EQ(axis_name(SweepAxis::CoherenceTime), "tau_d");

    const NetworkConfig base = reference_network();
    EXPECT_DOUBLE_EQ(apply_axis(base, SweepAxis::TxPower, 20.0).tx_power_w, 0.1);
    EXPECT_DOUBLE_EQ(apply_axis(base, SweepAxis::CoherenceTime, 5.0).coherence_time, 5e-3);
    EXPECT_THROW(apply_axis(base, SweepAxis::CoherenceTime, 0.5), ConfigError);
}

TEST(Harness, SweepSpecValidation) {
    SweepSpec s;
    EXPECT_THROW(validate_sweep(s), ConfigError);
    s.values = {20, 22, 22};
    EXPECT_THROW(validate_sweep(s), ConfigError);
    s.values = {22, 20};
    EXPECT_THROW(validate_sweep(s), ConfigError);
    s.values = {20, 22};
    EXPECT_NO_THROW(validate_sweep(s));
    s.n_rounds = 0;
    EXPECT_THROW(validate_sweep(s), ConfigError);
}

TEST(Harness, CsvLayout) {
    ResultRow r;
    r.axis = "pt";
    r.axis_value = 26;
    r.policy = PolicyKind::NoWaitRIS;
    r.analytic_lambda = 4.5;
    r.simulated_mean = 4.25;
    r.ci_halfwidth = 0.125;
    r.n_rounds = 1000;
    r.seed = 9;
    std::ostringstream out;
    write_csv(out, {r});
    EXPECT_EQ(out.str(),
              "axis,axis_value,policy,analytic_lambda,simulated_mean,ci_halfwidth,n_rounds,seed\n"
              "pt,26,no-wait-ris,4.5,4.25,0.125,1000,9\n");
}

TEST(Harness, SinglePointSweepReducesToSimulate) {
    SweepSpec spec;
    spec.axis = SweepAxis::TxPower;
    spec.values = {30.0};
    spec.n_rounds = 3000;
    spec.seed = 4;
    const std::vector<ResultRow> rows = run_sweep(reference_network(), spec);
    ASSERT_EQ(rows.size(), 4u);
    const PointSolution point = solve_point(reference_network(), 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].policy, kAllPolicies[i]);
        const ResultRow single = simulate_point(reference_network(), point,
                                                rows[i].policy, 3000, 4);
        EXPECT_EQ(rows[i].simulated_mean, single.simulated_mean);
        EXPECT_EQ(rows[i].ci_halfwidth, single.ci_halfwidth);
        EXPECT_EQ(rows[i].analytic_lambda, single.analytic_lambda);
        EXPECT_EQ(rows[i].axis_value, single.axis_value);
        EXPECT_EQ(rows[i].axis, single.axis);
    }
}

TEST(Harness, SweepIsDeterministicAndOrdered) {
    SweepSpec spec;
    spec.axis = SweepAxis::CoherenceTime;
    spec.values = {5.0, 10.0};
    spec.policies = {PolicyKind::NoWaitDirect, PolicyKind::Proposed};
    spec.n_rounds = 2000;
    spec.seed = 11;
    std::ostringstream a;
    std::ostringstream b;
    const auto rows = run_sweep(reference_network(), spec);
    write_csv(a, rows);
    write_csv(b, run_sweep(reference_network(), spec));
    EXPECT_EQ(a.str(), b.str());
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].axis_value, 5.0);
    EXPECT_EQ(rows[0].policy, PolicyKind::NoWaitDirect);
    EXPECT_EQ(rows[1].policy, PolicyKind::Proposed);
    EXPECT_EQ(rows[3].axis_value, 10.0);
    EXPECT_EQ(rows[3].axis, "tau_d");
}

TEST(Harness, ToleranceViolations) {
    ResultRow ok;
    ok.analytic_lambda = 6.0;
    ok.simulated_mean = 6.1;
    ResultRow bad = ok;
    bad.simulated_mean = 5.0;
    EXPECT_TRUE(tolerance_violations({ok}).empty());
    EXPECT_EQ(tolerance_violations({ok, bad}).size(), 1u);
    ResultRow zero;
    EXPECT_TRUE(tolerance_violations({zero}).empty());
}

TEST(Harness, GnuplotCompanionReferencesTheCsv) {
    std::ostringstream out;
    write_gnuplot(out, "fig.csv", SweepAxis::TxPower);
    EXPECT_NE(out.str().find("'fig.csv'"), std::string::npos);
    EXPECT_NE(out.str().find("separator ','"), std::string::npos);
}

TEST(Harness, OperatingGridAndGap) {
    const OfflineModel model = OfflineModel::from_config(reference_network());
    const auto grid = operating_grid(model, 0, 6.0);
    ASSERT_EQ(grid.size(), 25u);
    EXPECT_DOUBLE_EQ(grid.front().lambda, 3.6);
    EXPECT_DOUBLE_EQ(grid.back().lambda, 6.0 * 1.4);
    const double v = model.channels[0].direct_power;
    EXPECT_NEAR(-std::expm1(-grid[2].h * grid[2].h / v), 0.5, 1e-12);
    EXPECT_NEAR(probe_reward_gap(1.0, 1.1, 2.0, 0.01), 0.1 / 1.1, 1e-15);
    EXPECT_DOUBLE_EQ(probe_reward_gap(0.001, 0.0, 2.0, 0.01), 0.001 / 0.02);
}

TEST(Harness, GaussianMonteCarloOfOmega) {
    const OfflineModel model = OfflineModel::from_config(reference_network());
    const CascadedMoments m = model.moments[0];
    const double closed = omega(6.0, 8e-4, m.mu, m.sigma, model.rho);
    EXPECT_NEAR(omega_mc(6.0, 8e-4, m.mu, m.sigma, model.rho, 1'000'000, 3) / closed, 1.0, 3e-3);
    EXPECT_EQ(omega_mc(6.0, 8e-4, m.mu, m.sigma, model.rho, 1000, 3),
              omega_mc(6.0, 8e-4, m.mu, m.sigma, model.rho, 1000, 3));
}

ValidationOptions quick() {
    ValidationOptions o;
    o.omega_draws = 200'000;
    o.lambda_draws = 50'000;
    o.contentions = 200'000;
    o.equivalence_draws = 5'000;
    o.rounds = 50'000;
    return o;
}

TEST(Harness, ValidationPassesOnReference) {
    const ValidationReport r = run_validation(reference_network(), quick());
    std::ostringstream out;
    write_report(out, r);
    EXPECT_TRUE(r.ok()) << out.str();
    EXPECT_GE(r.checks.size(), 8u);
}

TEST(Harness, ValidationWithoutRisSkipsThresholds) {
    NetworkConfig cfg = reference_network();
    cfg.ris_elements = 0;
    const ValidationReport r = run_validation(cfg, quick());
    std::ostringstream out;
    write_report(out, r);
    EXPECT_TRUE(r.ok()) << out.str();
    EXPECT_NE(out.str().find("K* = {}"), std::string::npos);
    EXPECT_NE(out.str().find("skipped"), std::string::npos);
}

TEST(Harness, ValidationCatchesACorruptedTable) {
    ThresholdTable t = reference_point().table;
    t.pairs[2].zeta *= 1.2;
    const ValidationReport r = run_validation(reference_network(), quick(), &t);
    EXPECT_FALSE(r.ok());
    bool equivalence_failed = false;
    for (const Check& c : r.checks) {
        equivalence_failed |= c.name == "threshold policy vs reward comparison" && !c.passed;
    }
    EXPECT_TRUE(equivalence_failed);
}

TEST(Harness, ValidationRejectsATableForAnotherConfig) {
    NetworkConfig cfg = reference_network();
    cfg.coherence_time = 10e-3;
    const ValidationReport r = run_validation(cfg, quick(), &reference_point().table);
    ASSERT_EQ(r.checks.size(), 1u);
    EXPECT_FALSE(r.ok());
}

}  // namespace
