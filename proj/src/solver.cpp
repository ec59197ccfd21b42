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

#include "rismac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rismac/contention.hpp"
#include "rismac/numerics.hpp"
#include "rismac/special.hpp"

namespace rismac {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Rayleigh quantile cut for the outer integral: P(|h| > h_max) = 1e-10.
constexpr double kTailLog = 23.025850929940457;  // -ln(1e-10)
constexpr double kQuadTol = 1e-12;

// a - b where a = erf(x), b = erf(y), evaluated through erfc when both
// arguments are positive so near-1 values do not cancel.
double erf_diff(double x, double y) {
    if (x > 0.0 && y > 0.0) {
        return erfc(y) - erfc(x);
    }
    if (x < 0.0 && y < 0.0) {
        return erfc(-x) - erfc(-y);
    }
    return erf(x) - erf(y);
}

// Omega with 2^lambda - 1 already evaluated.
double omega_core(double c, double h, double mu, double sigma, double rho) {
    const double m = h + mu;
    if (!(sigma > 0.0) || !(rho > 0.0)) {
        return std::max(rho * m * m, c);
    }
    const double s = std::sqrt(c / rho);  // amplitude where the two branches meet
    // Below X = L the max is clipped to c; L >= 0 keeps X < 0 out.
    const double lower = std::max(s - h, 0.0);
    const double z = (lower - mu) * kInvSqrt2 / sigma;
    const double clipped =
        lower > 0.0 ? 0.5 * c * erf_diff(mu * kInvSqrt2 / sigma, (mu - lower) * kInvSqrt2 / sigma) : 0.0;
    const double partial = rho * sigma * (m + h + lower) * std::exp(-z * z) * kInvSqrt2Pi;
    const double upper = 0.5 * rho * (m * m + sigma * sigma) * erfc(z);
    return clipped + partial + upper;
}

struct PriceTerms {
    double lambda;
    double c;  // 2^lambda - 1
};

PriceTerms price(double lambda) { return {lambda, std::exp2(lambda) - 1.0}; }

double lambda_bar_core(const OfflineModel& model, std::size_t k, const PriceTerms& p, double h) {
    const CascadedMoments& mom = model.moments[k];
    const double om = omega_core(p.c, h, mom.mu, mom.sigma, model.rho);
    return model.ris_window() * std::log2(1.0 + om) - p.lambda * model.direct_window();
}

double direct_reward_core(const OfflineModel& model, const PriceTerms& p, double h) {
    return (std::log2(1.0 + model.rho * h * h) - p.lambda) * model.direct_window();
}

double rayleigh_pdf(double h, double power) { return 2.0 * h / power * std::exp(-h * h / power); }

double tail_cut(const PairChannel& ch) { return std::sqrt(ch.direct_power * kTailLog); }

// Integrates f(h) * pdf(h) over [0, h_max] split at the given interior
// break points.
template <class F>
BellmanValue integrate_over_direct(const PairChannel& ch, F&& f, std::vector<double> breaks) {
    const double h_max = tail_cut(ch);
    breaks.push_back(0.0);
    breaks.push_back(h_max);
    std::sort(breaks.begin(), breaks.end());
    auto integrand = [&](double h) { return f(h) * rayleigh_pdf(h, ch.direct_power); };
    BellmanValue out;
    const double tol = kQuadTol / static_cast<double>(breaks.size() - 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = std::clamp(breaks[i], 0.0, h_max);
        const double b = std::clamp(breaks[i + 1], 0.0, h_max);
        if (!(b > a)) {
            continue;
        }
        const QuadratureResult q = integrate_adaptive(integrand, a, b, tol);
        out.value += q.value;
        out.error_estimate += q.error;
        out.evaluations += q.evaluations;
        out.converged = out.converged && q.converged;
    }
    // Beyond h_max the integrand is bounded by its value at 2 h_max times the
    // remaining 1e-10 of probability (the density decays far faster than the
    // log reward grows).
    out.error_estimate += std::abs(f(2.0 * h_max)) * 1e-10;
    return out;
}

BellmanValue average_over_pairs(const OfflineModel& model,
                                const std::function<BellmanValue(std::size_t)>& per_pair) {
    BellmanValue out;
    const double inv_k = 1.0 / static_cast<double>(model.pairs());
    for (std::size_t k = 0; k < model.pairs(); ++k) {
        const BellmanValue v = per_pair(k);
        out.value += v.value * inv_k;
        out.error_estimate += v.error_estimate * inv_k;
        out.evaluations += v.evaluations;
        out.converged = out.converged && v.converged;
    }
    return out;
}

void require_member(const OfflineModel& model, std::size_t k, double lambda_star) {
    const auto kstar = pair_set_kstar(model, lambda_star);
    if (std::find(kstar.begin(), kstar.end(), k) == kstar.end()) {
        throw std::invalid_argument("pair " + std::to_string(k + 1) +
                                    " is not in K*; its thresholds are undefined");
    }
}

}  // namespace

OfflineModel OfflineModel::from_config(const NetworkConfig& cfg) {
    validate(cfg);
    OfflineModel m;
    m.rho = linear_budget(cfg);
    m.tau_d = cfg.coherence_time;
    m.tau_m1 = cfg.tau_m1();
    m.tau_m2 = cfg.tau_m2();
    m.probe = cfg.probe_time();
    m.tau_o = expected_contention_time(cfg);
    m.elements = cfg.ris_elements;
    for (std::size_t k = 0; k < cfg.pair_count(); ++k) {
        m.channels.push_back(pair_channel(cfg, k));
        m.moments.push_back(cascaded_moments(m.channels.back(), cfg.ris_elements));
    }
    return m;
}

double omega(double lambda, double h, double mu, double sigma, double rho) {
    return omega_core(std::exp2(lambda) - 1.0, h, mu, sigma, rho);
}

double direct_reward(const OfflineModel& model, double lambda, double h) {
    return direct_reward_core(model, price(lambda), h);
}

double lambda_bar(const OfflineModel& model, std::size_t k, double lambda, double h) {
    return lambda_bar_core(model, k, price(lambda), h);
}

double lambda_bar(double lambda, double h, std::size_t k, const NetworkConfig& cfg) {
    const OfflineModel model = OfflineModel::from_config(cfg);
    if (k >= model.pairs()) {
        throw std::out_of_range("pair index out of range");
    }
    return lambda_bar(model, k, lambda, h);
}

double direct_break_even(const OfflineModel& model, double lambda) {
    return std::sqrt((std::exp2(lambda) - 1.0) / model.rho);
}

McEstimate lambda_mc_from_sums(const OfflineModel& model, double lambda, double h,
                               std::span<const double> cascaded_sums) {
    const std::size_t n = cascaded_sums.size();
    std::vector<double> values(n);
    std::vector<double> squares(n);
    const double floor = -lambda * model.probe;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rate_ris_sum(model.rho, h, cascaded_sums[i]);
        values[i] = std::max(model.ris_window() * r - lambda * model.direct_window(), floor);
        squares[i] = values[i] * values[i];
    }
    McEstimate out;
    out.samples = n;
    if (n == 0) {
        return out;
    }
    const double dn = static_cast<double>(n);
    out.mean = pairwise_sum(values) / dn;
    if (n > 1) {
        const double var = std::max(0.0, (pairwise_sum(squares) / dn - out.mean * out.mean)) *
                           dn / (dn - 1.0);
        out.std_error = std::sqrt(var / dn);
    }
    return out;
}

McEstimate lambda_mc(const OfflineModel& model, std::size_t k, double lambda, double h,
                     std::size_t n_samples, std::uint64_t seed) {
    if (k >= model.pairs()) {
        throw std::out_of_range("pair index out of range");
    }
    std::vector<double> sums(n_samples);
    const auto n = static_cast<std::int64_t>(n_samples);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        sums[static_cast<std::size_t>(i)] = draw_cascaded_sum(rng, model.channels[k], model.elements);
    }
    return lambda_mc_from_sums(model, lambda, h, sums);
}

McEstimate lambda_mc_serial(const OfflineModel& model, std::size_t k, double lambda, double h,
                            std::size_t n_samples, std::uint64_t seed) {
    if (k >= model.pairs()) {
        throw std::out_of_range("pair index out of range");
    }
    std::vector<double> sums(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        CounterRng rng(seed, i);
        sums[i] = draw_cascaded_sum(rng, model.channels[k], model.elements);
    }
    return lambda_mc_from_sums(model, lambda, h, sums);
}

BellmanValue bellman_pair(const OfflineModel& model, std::size_t k, double lambda) {
    if (!(model.rho > 0.0)) {
        // Every rate is zero: both branches are <= 0, so the max is the 0 branch.
        return {};
    }
    const PriceTerms p = price(lambda);
    const PairChannel& ch = model.channels[k];
    const double h_max = tail_cut(ch);
    const double h0 = direct_break_even(model, lambda);

    auto probe = [&](double h) { return lambda_bar_core(model, k, p, h); };
    auto direct_minus_probe = [&](double h) { return direct_reward_core(model, p, h) - probe(h); };

    std::vector<double> breaks;
    const double lo_end = std::min(h0, h_max);
    if (lo_end > 0.0) {
        breaks.push_back(lo_end);
        // Give-up / probe boundary below the break-even amplitude.
        if (probe(0.0) < 0.0 && probe(lo_end) > 0.0) {
            breaks.push_back(
                bisect_boundary([&](double h) { return probe(h) >= 0.0; }, 0.0, lo_end, 80).second);
        }
    }
    if (h0 < h_max) {
        // Probe / direct-stop boundary above it.
        if (direct_minus_probe(h0) < 0.0 && direct_minus_probe(h_max) > 0.0) {
            breaks.push_back(bisect_boundary([&](double h) { return direct_minus_probe(h) >= 0.0; },
                                             h0, h_max, 80)
                                 .second);
        }
    }
    auto branch_max = [&](double h) {
        return std::max({direct_reward_core(model, p, h), probe(h), 0.0});
    };
    return integrate_over_direct(ch, branch_max, std::move(breaks));
}

BellmanValue bellman_lhs(const OfflineModel& model, double lambda) {
    return average_over_pairs(model, [&](std::size_t k) { return bellman_pair(model, k, lambda); });
}

double bellman_lhs(double lambda, const NetworkConfig& cfg) {
    return bellman_lhs(OfflineModel::from_config(cfg), lambda).value;
}

double bellman_residual(const OfflineModel& model, double lambda) {
    return bellman_lhs(model, lambda).value - lambda * model.tau_o;
}

BellmanValue probe_always_lhs(const OfflineModel& model, double lambda) {
    const PriceTerms p = price(lambda);
    return average_over_pairs(model, [&](std::size_t k) {
        auto probe = [&](double h) { return lambda_bar_core(model, k, p, h); };
        return integrate_over_direct(model.channels[k], probe, {});
    });
}

StepBand admissible_step_band(const OfflineModel& model, double eps) {
    return {eps, (2.0 - eps) / (model.tau_o + model.direct_window())};
}

FixedPointResult iterate_fixed_point(const std::function<double(double)>& residual,
                                     const StepBand& band, const FixedPointOptions& opts) {
    const double alpha = std::isnan(opts.alpha) ? 0.5 * (band.lo + band.hi) : opts.alpha;
    if (!(band.lo <= band.hi)) {
        throw SolverError("step-size band is empty");
    }
    if (!(alpha >= band.lo && alpha <= band.hi)) {
        std::ostringstream msg;
        msg << "step size " << alpha << " outside admissible band [" << band.lo << ", "
            << band.hi << "]";
        throw SolverError(msg.str());
    }
    FixedPointResult out;
    out.alpha = alpha;
    double lambda = std::max(0.0, opts.lambda0);
    for (int it = 0; it < opts.max_iter; ++it) {
        const double g = residual(lambda);
        out.lambda = lambda;
        out.residual = g;
        out.iterations = it;
        if (std::abs(g) < opts.tol) {
            return out;
        }
        lambda = std::max(0.0, lambda + alpha * g);
    }
    std::ostringstream msg;
    msg << "fixed point did not converge in " << opts.max_iter << " iterations (lambda "
        << out.lambda << ", residual " << out.residual << ")";
    throw SolverError(msg.str());
}

FixedPointResult solve_lambda_star(const OfflineModel& model, const FixedPointOptions& opts) {
    FixedPointOptions o = opts;
    if (std::isnan(o.alpha)) {
        o.alpha = 1.0 / (model.tau_o + model.direct_window());
    }
    return iterate_fixed_point([&](double l) { return bellman_residual(model, l); },
                               admissible_step_band(model, o.epsilon), o);
}

double solve_lambda_star_bisection(const OfflineModel& model, double xtol) {
    auto g = [&](double l) { return bellman_residual(model, l); };
    if (!(g(0.0) > 0.0)) {
        return 0.0;
    }
    double hi = 1.0;
    while (g(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e6) {
            throw SolverError("could not bracket the throughput fixed point");
        }
    }
    return bisect_root(g, 0.0, hi, xtol);
}

std::vector<std::size_t> pair_set_kstar(const OfflineModel& model, double lambda_star) {
    std::vector<std::size_t> out;
    if (!(model.rho > 0.0)) {
        return out;
    }
    const double h0 = direct_break_even(model, lambda_star);
    for (std::size_t k = 0; k < model.pairs(); ++k) {
        if (lambda_bar(model, k, lambda_star, h0) > 0.0) {
            out.push_back(k);
        }
    }
    return out;
}

double solve_zeta(const OfflineModel& model, std::size_t k, double lambda_star) {
    require_member(model, k, lambda_star);
    const PriceTerms p = price(lambda_star);
    auto nonneg = [&](double h) { return lambda_bar_core(model, k, p, h) >= 0.0; };
    if (nonneg(0.0)) {
        return 0.0;
    }
    return bisect_boundary(nonneg, 0.0, direct_break_even(model, lambda_star)).first;
}

double solve_eta(const OfflineModel& model, std::size_t k, double lambda_star) {
    require_member(model, k, lambda_star);
    const PriceTerms p = price(lambda_star);
    auto direct_wins = [&](double h) {
        return direct_reward_core(model, p, h) - lambda_bar_core(model, k, p, h) >= 0.0;
    };
    const double lo = direct_break_even(model, lambda_star);
    double hi = 2.0 * std::max(lo, tail_cut(model.channels[k]));
    for (int i = 0; i < 200 && !direct_wins(hi); ++i) {
        hi *= 2.0;
    }
    if (!direct_wins(hi)) {
        throw SolverError("eta bracket failure for pair " + std::to_string(k + 1));
    }
    return bisect_boundary(direct_wins, lo, hi).second;
}

}  // namespace rismac
