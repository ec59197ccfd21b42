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

#include "rismac/contention.hpp"

#include <stdexcept>

namespace rismac {

double success_probability(std::span<const double> p) {
    double ps = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        double term = p[k];
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i != k) {
                term *= 1.0 - p[i];
            }
        }
        ps += term;
    }
    if (!(ps > 0.0)) {
        throw std::invalid_argument("contention can never succeed: success probability is zero");
    }
    return ps;
}

double expected_contention_time(const NetworkConfig& cfg) {
    const double ps = success_probability(cfg.access_prob);
    double idle = 1.0;
    for (double p : cfg.access_prob) {
        idle *= 1.0 - p;
    }
    return cfg.tau_m1() + idle * cfg.slot_time / ps + (1.0 - idle - ps) * cfg.rts_time / ps;
}

ContentionOutcome simulate_contention(CounterRng& rng, const NetworkConfig& cfg) {
    (void)success_probability(cfg.access_prob);  // throws if no slot can ever succeed
    ContentionOutcome out;
    const std::size_t pairs = cfg.access_prob.size();
    double waited = 0.0;
    for (;;) {
        std::size_t senders = 0;
        std::size_t last = 0;
        for (std::size_t k = 0; k < pairs; ++k) {
            if (rng.uniform() < cfg.access_prob[k]) {
                ++senders;
                last = k;
            }
        }
        if (senders == 1) {
            out.winner = last;
            out.elapsed = waited + cfg.tau_m1();
            return out;
        }
        if (senders == 0) {
            ++out.idle_slots;
            waited += cfg.slot_time;
        } else {
            ++out.collisions;
            waited += cfg.rts_time;
        }
    }
}

}  // namespace rismac
