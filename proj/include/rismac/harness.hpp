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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rismac/config.hpp"
#include "rismac/simulator.hpp"
#include "rismac/solver.hpp"
#include "rismac/strategies.hpp"
#include "rismac/threshold_table.hpp"

namespace rismac {

// ---- analytic throughput of each policy -----------------------------------

/// E[log2(1 + rho |h|^2)] for Rayleigh |h| with E|h|^2 = mean_power.
double expected_direct_rate(double rho, double mean_power);

/// Renewal-reward throughput of always transmitting on the direct link.
double analytic_no_wait_direct(const OfflineModel& model);

/// Renewal-reward throughput of always probing and transmitting on the RIS
/// link; E[R_r] is estimated with `samples` draws per pair.
double analytic_no_wait_ris(const OfflineModel& model, std::size_t samples, std::uint64_t seed);

/// Everything a sweep point needs before simulating.
struct PointSolution {
    ThresholdTable table;
    double lambda_b = 0.0;
    double no_wait_direct = 0.0;
    double no_wait_ris = 0.0;

    double analytic(PolicyKind kind) const;
};

inline constexpr std::size_t kNoWaitRisSamples = 200'000;

PointSolution solve_point(const NetworkConfig& cfg, std::uint64_t seed,
                          const FixedPointOptions& opts = {});

/// Throws std::invalid_argument (pointing at `rismac solve`) when a
/// Proposed strategy is requested without a table.
Strategy make_strategy(PolicyKind kind, const ThresholdTable* table, double lambda_b);

// ---- sweeps ----------------------------------------------------------------

enum class SweepAxis : std::uint8_t { TxPower, CoherenceTime };

std::string_view axis_name(SweepAxis axis);  // "pt" or "tau_d"
std::optional<SweepAxis> parse_axis(std::string_view name);

/// Axis values are in dBm for TxPower and milliseconds for CoherenceTime.
struct SweepSpec {
    SweepAxis axis = SweepAxis::TxPower;
    std::vector<double> values;
    std::vector<PolicyKind> policies{kAllPolicies.begin(), kAllPolicies.end()};
    std::size_t n_rounds = 100'000;
    std::uint64_t seed = 1;
};

/// Throws ConfigError when values are not strictly increasing or empty.
void validate_sweep(const SweepSpec& spec);

/// `cfg` with the axis parameter replaced; validated.
NetworkConfig apply_axis(const NetworkConfig& cfg, SweepAxis axis, double value);

struct ResultRow {
    std::string axis;
    double axis_value = 0.0;
    PolicyKind policy = PolicyKind::Proposed;
    double analytic_lambda = 0.0;
    double simulated_mean = 0.0;
    double ci_halfwidth = 0.0;
    std::size_t n_rounds = 0;
    std::uint64_t seed = 0;
};

/// One campaign of `kind`, reported against its analytic throughput.
ResultRow simulate_point(const NetworkConfig& cfg, const PointSolution& point, PolicyKind kind,
                         std::size_t n_rounds, std::uint64_t seed);

/// Re-solves every point, then runs every policy with the same seed so the
/// curves share their random numbers. Rows are ordered by (value, policy).
std::vector<ResultRow> run_sweep(const NetworkConfig& cfg, const SweepSpec& spec,
                                 const FixedPointOptions& opts = {});

inline constexpr std::string_view kCsvHeader =
    "axis,axis_value,policy,analytic_lambda,simulated_mean,ci_halfwidth,n_rounds,seed";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// gnuplot script plotting the CSV written next to it.
void write_gnuplot(std::ostream& out, const std::string& csv_name, SweepAxis axis);

inline constexpr double kCampaignTolerance = 0.03;

/// Rows whose simulated mean is more than `rel_tol` away from the analytic value.
std::vector<std::string> tolerance_violations(const std::vector<ResultRow>& rows,
                                              double rel_tol = kCampaignTolerance);

// ---- cross-checks ---------------------------------------------------------

/// Price and amplitude grid around the operating point of pair k:
/// lambda in lambda* x {0.6, 0.8, 1, 1.2, 1.4}, |h_k| at Rayleigh quantiles
/// {0.1, 0.3, 0.5, 0.7, 0.9}.
struct GridPoint {
    double lambda = 0.0;
    double h = 0.0;
};
std::vector<GridPoint> operating_grid(const OfflineModel& model, std::size_t k, double lambda_star);

/// Monte-Carlo E[max{rho (h + X)^2, 2^lambda - 1}] with X ~ N(mu, sigma^2).
double omega_mc(double lambda, double h, double mu, double sigma, double rho, std::size_t n,
                std::uint64_t seed);

/// |closed - mc| / max(|mc|, lambda (tau_p + tau_C)).
double probe_reward_gap(double closed, double mc, double lambda, double probe);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<Check> checks;
    bool ok() const;
};

struct ValidationOptions {
    std::size_t omega_draws = 1'000'000;
    std::size_t lambda_draws = 200'000;
    std::size_t contentions = 1'000'000;
    std::size_t equivalence_draws = 100'000;
    std::size_t rounds = 200'000;
    std::uint64_t seed = 1;
};

/// Runs the cross-oracle suite. With `table` set, the threshold checks use
/// it instead of a fresh solve.
ValidationReport run_validation(const NetworkConfig& cfg, const ValidationOptions& opts,
                                const ThresholdTable* table = nullptr);

void write_report(std::ostream& out, const ValidationReport& report);

}  // namespace rismac
