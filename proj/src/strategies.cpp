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

#include "rismac/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rismac {

std::string_view policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Proposed:
            return "proposed";
        case PolicyKind::NoWaitDirect:
            return "no-wait-direct";
        case PolicyKind::NoWaitRIS:
            return "no-wait-ris";
        case PolicyKind::OptimalRISStop:
            return "optimal-ris-stop";
    }
    return "?";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
    for (PolicyKind k : kAllPolicies) {
        if (policy_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::string_view decision_name(Decision d) {
    switch (d) {
        case Decision::StopDirect:
            return "stop-direct";
        case Decision::Continue:
            return "continue";
        case Decision::AssistRIS:
            return "assist-ris";
        case Decision::StopRIS:
            return "stop-ris";
    }
    return "?";
}

ProbeRewardFn closed_form_probe_reward(const OfflineModel& model) {
    return [&model](std::size_t k, double lambda, double h) {
        return lambda_bar(model, k, lambda, h);
    };
}

ProbeRewardFn monte_carlo_probe_reward(const OfflineModel& model, std::size_t samples,
                                       std::uint64_t seed) {
    return [&model, samples, seed](std::size_t k, double lambda, double h) {
        return lambda_mc(model, k, lambda, h, samples, seed).mean;
    };
}

Decision theorem1_decide_level1(const ChannelObservation& obs, double lambda_star,
                                const OfflineModel& model, const ProbeRewardFn& probe_reward) {
    const double direct = direct_reward(model, lambda_star, obs.h_mag);
    const double probe = probe_reward(obs.pair_index, lambda_star, obs.h_mag);
    if (direct >= std::max(probe, 0.0)) {
        return Decision::StopDirect;
    }
    if (std::max(direct, probe) < 0.0) {
        return Decision::Continue;
    }
    return Decision::AssistRIS;
}

Decision theorem1_decide_level2(const ChannelObservation& obs, double rho, double lambda_star) {
    if (!obs.cascaded) {
        throw std::invalid_argument("second-level decision needs the cascaded channel");
    }
    return rate_ris(rho, obs.h_mag, *obs.cascaded) >= lambda_star ? Decision::StopRIS
                                                                  : Decision::Continue;
}

Decision algorithm1_decide(double h_mag, std::size_t k, const ThresholdTable& table) {
    if (table.is_member(k)) {
        const PairThresholds& t = table.pairs[k];
        if (h_mag >= t.eta) {
            return Decision::StopDirect;
        }
        if (h_mag <= t.zeta) {
            return Decision::Continue;
        }
        return Decision::AssistRIS;
    }
    return rate_direct(table.rho, h_mag) >= table.lambda_star ? Decision::StopDirect
                                                              : Decision::Continue;
}

Decision algorithm1_decide_ris(double rate_ris, double lambda_star) {
    return rate_ris >= lambda_star ? Decision::StopRIS : Decision::Continue;
}

Decision baseline_no_wait_direct(const ChannelObservation& /*obs*/) { return Decision::StopDirect; }

Decision baseline_no_wait_ris(const ChannelObservation& obs) {
    return obs.cascaded ? Decision::StopRIS : Decision::AssistRIS;
}

Decision baseline_optimal_ris_stop(const ChannelObservation& obs, double rho, double lambda_b) {
    if (!obs.cascaded) {
        return Decision::AssistRIS;
    }
    return algorithm1_decide_ris(rate_ris(rho, obs.h_mag, *obs.cascaded), lambda_b);
}

FixedPointResult solve_lambda_b(const OfflineModel& model, const FixedPointOptions& opts) {
    if (!(model.rho > 0.0)) {
        return {};
    }
    FixedPointOptions o = opts;
    if (std::isnan(o.alpha)) {
        o.alpha = 1.0 / (model.tau_o + model.direct_window());
    }
    return iterate_fixed_point(
        [&](double l) { return probe_always_lhs(model, l).value - l * model.tau_o; },
        admissible_step_band(model, o.epsilon), o);
}

Strategy Strategy::proposed(ThresholdTable table) {
    Strategy s(PolicyKind::Proposed);
    s.threshold_ = table.lambda_star;
    s.table_ = std::move(table);
    return s;
}

Strategy Strategy::no_wait_direct() { return Strategy(PolicyKind::NoWaitDirect); }

Strategy Strategy::no_wait_ris() { return Strategy(PolicyKind::NoWaitRIS); }

Strategy Strategy::optimal_ris_stop(double lambda_b) {
    Strategy s(PolicyKind::OptimalRISStop);
    s.threshold_ = lambda_b;
    return s;
}

Decision Strategy::level1(std::size_t k, double h_mag) const {
    switch (kind_) {
        case PolicyKind::Proposed:
            return algorithm1_decide(h_mag, k, table_);
        case PolicyKind::NoWaitDirect:
            return Decision::StopDirect;
        case PolicyKind::NoWaitRIS:
        case PolicyKind::OptimalRISStop:
            return Decision::AssistRIS;
    }
    return Decision::Continue;
}

Decision Strategy::level2(double rate_ris) const {
    if (kind_ == PolicyKind::NoWaitRIS) {
        return Decision::StopRIS;
    }
    return algorithm1_decide_ris(rate_ris, threshold_);
}

}  // namespace rismac
