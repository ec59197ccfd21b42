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
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rismac/channel.hpp"
#include "rismac/config.hpp"

namespace rismac {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything the offline solver needs, precomputed once from a config.
struct OfflineModel {
    double rho = 0.0;
    double tau_d = 0.0;
    double tau_m1 = 0.0;
    double tau_m2 = 0.0;
    double probe = 0.0;  // tau_p + tau_C
    double tau_o = 0.0;
    std::size_t elements = 0;
    std::vector<PairChannel> channels;
    std::vector<CascadedMoments> moments;

    static OfflineModel from_config(const NetworkConfig& cfg);

    std::size_t pairs() const noexcept { return channels.size(); }
    double direct_window() const noexcept { return tau_d - tau_m1; }
    double ris_window() const noexcept { return tau_d - tau_m2; }
};

/// E[max{rho (h + X)^2, 2^lambda - 1}] for X ~ N(mu, sigma^2) restricted to
/// X >= 0, in closed form. Falls back to the pointwise max when sigma or
/// rho is zero.
double omega(double lambda, double h, double mu, double sigma, double rho);

/// Direct-link stop reward (log2(1 + rho h^2) - lambda)(tau_d - tau_M1).
double direct_reward(const OfflineModel& model, double lambda, double h);

/// Closed-form expected reward of probing the RIS link for pair k:
///   (tau_d - tau_M2) log2(1 + Omega) - lambda (tau_d - tau_M1).
double lambda_bar(const OfflineModel& model, std::size_t k, double lambda, double h);
double lambda_bar(double lambda, double h, std::size_t k, const NetworkConfig& cfg);

/// Amplitude at which the direct rate equals lambda: sqrt((2^lambda - 1)/rho).
double direct_break_even(const OfflineModel& model, double lambda);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Monte-Carlo probe reward over exact cascaded draws:
///   E[max{(tau_d - tau_M2) R_r - lambda (tau_d - tau_M1), -lambda (tau_p + tau_C)}].
/// Sample i uses stream (seed, i); OpenMP-parallel, deterministic.
McEstimate lambda_mc(const OfflineModel& model, std::size_t k, double lambda, double h,
                     std::size_t n_samples, std::uint64_t seed);
/// Single-threaded reference for lambda_mc; bit-identical results.
McEstimate lambda_mc_serial(const OfflineModel& model, std::size_t k, double lambda, double h,
                            std::size_t n_samples, std::uint64_t seed);
/// Same estimator over caller-supplied sums of |f_m||g_m|.
McEstimate lambda_mc_from_sums(const OfflineModel& model, double lambda, double h,
                               std::span<const double> cascaded_sums);

struct BellmanValue {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

/// Per-pair integral of max{direct_reward, lambda_bar, 0} against the
/// Rayleigh density of |h_k|.
BellmanValue bellman_pair(const OfflineModel& model, std::size_t k, double lambda);
/// Pair average of bellman_pair; the left-hand side of the throughput
/// fixed-point equation.
BellmanValue bellman_lhs(const OfflineModel& model, double lambda);
double bellman_lhs(double lambda, const NetworkConfig& cfg);

/// bellman_lhs(lambda) - lambda tau_o. Strictly decreasing; root is lambda*.
double bellman_residual(const OfflineModel& model, double lambda);

/// Pair average of the integral of lambda_bar alone: the probe-every-time
/// counterpart of bellman_lhs.
BellmanValue probe_always_lhs(const OfflineModel& model, double lambda);

struct StepBand {
    double lo = 0.0;
    double hi = 0.0;
};

/// Admissible step sizes eps <= alpha <= (2 - eps)/(tau_o + tau_d - tau_M1),
/// taken literally with durations in seconds.
StepBand admissible_step_band(const OfflineModel& model, double eps);

inline constexpr double kDefaultBandMargin = 0.5;

struct FixedPointOptions {
    double alpha = std::numeric_limits<double>::quiet_NaN();  // NaN: 1/(tau_o + tau_d - tau_M1)
    double epsilon = kDefaultBandMargin;
    double tol = 1e-9;
    double lambda0 = 0.0;
    int max_iter = 200000;
};

struct FixedPointResult {
    double lambda = 0.0;
    double residual = 0.0;
    int iterations = 0;
    double alpha = 0.0;
};

/// Iterates lambda <- max(0, lambda + alpha * residual(lambda)) until
/// |residual| < tol. Throws SolverError when alpha is outside the band or
/// the iteration cap is hit.
FixedPointResult iterate_fixed_point(const std::function<double(double)>& residual,
                                     const StepBand& band, const FixedPointOptions& opts);

FixedPointResult solve_lambda_star(const OfflineModel& model, const FixedPointOptions& opts = {});

/// Bisection on bellman_residual; needs no step size.
double solve_lambda_star_bisection(const OfflineModel& model, double xtol = 1e-12);

/// Pairs for which probing the RIS can be optimal:
///   { k : lambda_bar(lambda*, direct_break_even(lambda*)) > 0 }.
std::vector<std::size_t> pair_set_kstar(const OfflineModel& model, double lambda_star);

/// Largest amplitude with lambda_bar(lambda*, h) < 0. Returns 0 when
/// lambda_bar is already nonnegative at h = 0. Throws std::invalid_argument
/// for k outside K*.
double solve_zeta(const OfflineModel& model, std::size_t k, double lambda_star);

/// Smallest amplitude with direct_reward >= lambda_bar. Throws
/// std::invalid_argument for k outside K*, SolverError on bracket failure.
double solve_eta(const OfflineModel& model, std::size_t k, double lambda_star);

}  // namespace rismac
