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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "rismac/channel.hpp"
#include "rismac/solver.hpp"
#include "rismac/threshold_table.hpp"

namespace rismac {

/// Outcome of one decision level. StopDirect and StopRIS end the round;
/// AssistRIS is always followed by a second-level StopRIS or Continue.
enum class Decision : std::uint8_t { StopDirect, Continue, AssistRIS, StopRIS };

enum class PolicyKind : std::uint8_t { Proposed, NoWaitDirect, NoWaitRIS, OptimalRISStop };

inline constexpr std::array<PolicyKind, 4> kAllPolicies = {
    PolicyKind::Proposed, PolicyKind::OptimalRISStop, PolicyKind::NoWaitRIS,
    PolicyKind::NoWaitDirect};

std::string_view policy_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy(std::string_view name);
std::string_view decision_name(Decision d);

/// Expected reward of probing the RIS link for (pair, price, amplitude).
using ProbeRewardFn = std::function<double(std::size_t k, double lambda, double h)>;

ProbeRewardFn closed_form_probe_reward(const OfflineModel& model);
/// Monte-Carlo evaluator; slow, for validation only.
ProbeRewardFn monte_carlo_probe_reward(const OfflineModel& model, std::size_t samples,
                                       std::uint64_t seed);

/// Reference first-level rule evaluated straight from the reward
/// comparison: StopDirect iff (tau_d - tau_M1)(R_d - lambda*) >= max{Lambda, 0},
/// Continue iff both are negative, AssistRIS otherwise.
Decision theorem1_decide_level1(const ChannelObservation& obs, double lambda_star,
                                const OfflineModel& model, const ProbeRewardFn& probe_reward);

/// StopRIS iff R_r >= lambda*. Requires obs.cascaded.
Decision theorem1_decide_level2(const ChannelObservation& obs, double rho, double lambda_star);

/// Pure-threshold first level: two comparisons for k in K*, one otherwise.
Decision algorithm1_decide(double h_mag, std::size_t k, const ThresholdTable& table);
Decision algorithm1_decide_ris(double rate_ris, double lambda_star);

Decision baseline_no_wait_direct(const ChannelObservation& obs);
/// AssistRIS until the cascaded link is known, then StopRIS unconditionally.
Decision baseline_no_wait_ris(const ChannelObservation& obs);
/// Always probes; then StopRIS iff R_r >= lambda_b.
Decision baseline_optimal_ris_stop(const ChannelObservation& obs, double rho, double lambda_b);

/// Throughput fixed point of the probe-every-contention stopping rule:
/// probe_always_lhs(lambda_b) = lambda_b tau_o.
FixedPointResult solve_lambda_b(const OfflineModel& model, const FixedPointOptions& opts = {});

/// Online dispatcher the simulator drives: first-level decision on the
/// direct amplitude, second-level decision on the RIS-assisted rate.
class Strategy {
public:
    static Strategy proposed(ThresholdTable table);
    static Strategy no_wait_direct();
    static Strategy no_wait_ris();
    static Strategy optimal_ris_stop(double lambda_b);

    PolicyKind kind() const noexcept { return kind_; }
    /// Rate threshold used at the second level (lambda* or lambda_b).
    double rate_threshold() const noexcept { return threshold_; }
    const ThresholdTable* table() const noexcept { return kind_ == PolicyKind::Proposed ? &table_ : nullptr; }

    Decision level1(std::size_t k, double h_mag) const;
    Decision level2(double rate_ris) const;

private:
    explicit Strategy(PolicyKind kind) : kind_(kind) {}

    PolicyKind kind_;
    ThresholdTable table_;
    double threshold_ = 0.0;
};

}  // namespace rismac
