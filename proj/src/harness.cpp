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

#include "rismac/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "rismac/channel.hpp"
#include "rismac/config_io.hpp"
#include "rismac/contention.hpp"
#include "rismac/numerics.hpp"
#include "rismac/philox.hpp"

namespace rismac {

double expected_direct_rate(double rho, double mean_power) {
    if (!(rho > 0.0) || !(mean_power > 0.0)) {
        return 0.0;
    }
    // |h|^2 / mean_power is Exp(1); e^-60 makes the cut-off tail negligible.
    const double snr = rho * mean_power;
    const auto r = integrate_adaptive(
        [snr](double t) { return std::log2(1.0 + snr * t) * std::exp(-t); }, 0.0, 60.0, 1e-11);
    return r.value;
}

double analytic_no_wait_direct(const OfflineModel& model) {
    double sum = 0.0;
    for (const PairChannel& ch : model.channels) {
        sum += expected_direct_rate(model.rho, ch.direct_power);
    }
    const double w = model.direct_window();
    return sum / static_cast<double>(model.pairs()) * w / (model.tau_o + w);
}

double analytic_no_wait_ris(const OfflineModel& model, std::size_t samples, std::uint64_t seed) {
    const std::size_t pairs = model.pairs();
    std::vector<double> means(pairs);
    const auto n = static_cast<std::ptrdiff_t>(pairs);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const PairChannel& ch = model.channels[static_cast<std::size_t>(k)];
        CounterRng rng(seed, static_cast<std::uint64_t>(k));
        std::vector<double> rates(samples);
        for (double& r : rates) {
            const double h = draw_direct(rng, ch);
            r = rate_ris_sum(model.rho, h, draw_cascaded_sum(rng, ch, model.elements));
        }
        means[static_cast<std::size_t>(k)] =
            samples ? pairwise_sum(rates) / static_cast<double>(samples) : 0.0;
    }
    const double rate = pairwise_sum(means) / static_cast<double>(pairs);
    return model.ris_window() * rate / (model.tau_o + model.direct_window());
}

double PointSolution::analytic(PolicyKind kind) const {
    switch (kind) {
        case PolicyKind::Proposed:
            return table.lambda_star;
        case PolicyKind::OptimalRISStop:
            return lambda_b;
        case PolicyKind::NoWaitRIS:
            return no_wait_ris;
        case PolicyKind::NoWaitDirect:
            return no_wait_direct;
    }
    return 0.0;
}

PointSolution solve_point(const NetworkConfig& cfg, std::uint64_t seed,
                          const FixedPointOptions& opts) {
    PointSolution p;
    p.table = build_threshold_table(cfg, opts);
    const OfflineModel model = OfflineModel::from_config(cfg);
    p.lambda_b = solve_lambda_b(model, opts).lambda;
    p.no_wait_direct = analytic_no_wait_direct(model);
    p.no_wait_ris = analytic_no_wait_ris(model, kNoWaitRisSamples, seed);
    return p;
}

Strategy make_strategy(PolicyKind kind, const ThresholdTable* table, double lambda_b) {
    switch (kind) {
        case PolicyKind::Proposed:
            if (table == nullptr) {
                throw std::invalid_argument(
                    "the proposed policy needs a threshold table; run `rismac solve` first");
            }
            return Strategy::proposed(*table);
        case PolicyKind::OptimalRISStop:
            return Strategy::optimal_ris_stop(lambda_b);
        case PolicyKind::NoWaitRIS:
            return Strategy::no_wait_ris();
        case PolicyKind::NoWaitDirect:
            return Strategy::no_wait_direct();
    }
    throw std::invalid_argument("unknown policy");
}

std::string_view axis_name(SweepAxis axis) {
    return axis == SweepAxis::TxPower ? "pt" : "tau_d";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
    if (name == "pt") {
        return SweepAxis::TxPower;
    }
    if (name == "tau_d") {
        return SweepAxis::CoherenceTime;
    }
    return std::nullopt;
}

void validate_sweep(const SweepSpec& spec) {
    if (spec.values.empty()) {
        throw ConfigError("sweep needs at least one value", "values");
    }
    for (std::size_t i = 1; i < spec.values.size(); ++i) {
        if (!(spec.values[i] > spec.values[i - 1])) {
            throw ConfigError("sweep values must be strictly increasing", "values");
        }
    }
    if (spec.n_rounds == 0) {
        throw ConfigError("rounds must be at least 1", "rounds");
    }
    if (spec.policies.empty()) {
        throw ConfigError("sweep needs at least one policy", "policy");
    }
}

NetworkConfig apply_axis(const NetworkConfig& cfg, SweepAxis axis, double value) {
    NetworkConfig c = cfg;
    if (axis == SweepAxis::TxPower) {
        c.tx_power_w = dbm_to_watts(value);
    } else {
        c.coherence_time = value * 1e-3;
    }
    validate(c);
    return c;
}

ResultRow simulate_point(const NetworkConfig& cfg, const PointSolution& point, PolicyKind kind,
                         std::size_t n_rounds, std::uint64_t seed) {
    const Strategy strategy = make_strategy(kind, &point.table, point.lambda_b);
    const CampaignResult res = run_campaign(seed, cfg, strategy, n_rounds);
    ResultRow row;
    row.axis = std::string(axis_name(SweepAxis::TxPower));
    row.axis_value = 10.0 * std::log10(cfg.tx_power_w * 1e3);
    row.policy = kind;
    row.analytic_lambda = point.analytic(kind);
    row.simulated_mean = res.estimate.mean;
    row.ci_halfwidth = res.estimate.ci_halfwidth;
    row.n_rounds = res.estimate.n_rounds;
    row.seed = seed;
    return row;
}

std::vector<ResultRow> run_sweep(const NetworkConfig& cfg, const SweepSpec& spec,
                                 const FixedPointOptions& opts) {
    validate_sweep(spec);
    std::vector<ResultRow> rows;
    rows.reserve(spec.values.size() * spec.policies.size());
    // Points run one after another; each solve and campaign is parallel inside.
    for (double v : spec.values) {
        const NetworkConfig c = apply_axis(cfg, spec.axis, v);
        const PointSolution point = solve_point(c, spec.seed, opts);
        for (PolicyKind kind : spec.policies) {
            ResultRow row = simulate_point(c, point, kind, spec.n_rounds, spec.seed);
            row.axis = std::string(axis_name(spec.axis));
            row.axis_value = v;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kCsvHeader << '\n';
    for (const ResultRow& r : rows) {
        out << r.axis << ',' << format_double(r.axis_value) << ',' << policy_name(r.policy) << ','
            << format_double(r.analytic_lambda) << ',' << format_double(r.simulated_mean) << ','
            << format_double(r.ci_halfwidth) << ',' << r.n_rounds << ',' << r.seed << '\n';
    }
}

void write_gnuplot(std::ostream& out, const std::string& csv_name, SweepAxis axis) {
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set xlabel '" << (axis == SweepAxis::TxPower ? "P_t (dBm)" : "tau_d (ms)") << "'\n"
        << "set ylabel 'average throughput (bit/s/Hz)'\n"
        << "set grid\n"
        << "policies = 'proposed optimal-ris-stop no-wait-ris no-wait-direct'\n"
        << "plot for [p in policies] '" << csv_name
        << "' using 2:(strcol(3) eq p ? $5 : 1/0):6 with yerrorlines title p, \\\n"
        << "     '" << csv_name
        << "' using 2:(strcol(3) eq 'proposed' ? $4 : 1/0) with lines dt 2 title 'analytic'\n";
}

std::vector<std::string> tolerance_violations(const std::vector<ResultRow>& rows, double rel_tol) {
    std::vector<std::string> out;
    for (const ResultRow& r : rows) {
        const double scale = std::abs(r.analytic_lambda);
        const double diff = std::abs(r.simulated_mean - r.analytic_lambda);
        if (scale > 0.0 ? diff / scale > rel_tol : diff > 0.0) {
            std::ostringstream s;
            s << r.axis << '=' << format_double(r.axis_value) << ' ' << policy_name(r.policy)
              << ": simulated " << r.simulated_mean << " vs analytic " << r.analytic_lambda;
            out.push_back(s.str());
        }
    }
    return out;
}

std::vector<GridPoint> operating_grid(const OfflineModel& model, std::size_t k, double lambda_star) {
    static constexpr double kScales[] = {0.6, 0.8, 1.0, 1.2, 1.4};
    static constexpr double kQuantiles[] = {0.1, 0.3, 0.5, 0.7, 0.9};
    const double v = model.channels.at(k).direct_power;
    std::vector<GridPoint> grid;
    for (double s : kScales) {
        for (double q : kQuantiles) {
            grid.push_back({s * lambda_star, std::sqrt(-v * std::log1p(-q))});
        }
    }
    return grid;
}

double omega_mc(double lambda, double h, double mu, double sigma, double rho, std::size_t n,
                std::uint64_t seed) {
    constexpr std::size_t kChunk = std::size_t{1} << 16;
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    const double floor = std::exp2(lambda) - 1.0;
    std::vector<double> sums(chunks);
    const auto nc = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < nc; ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t len = std::min(kChunk, n - lo);
        CounterRng rng(seed, static_cast<std::uint64_t>(c));
        std::vector<double> v(len);
        for (std::size_t i = 0; i < len; i += 2) {
            // Box-Muller, both outputs used.
            const double r = std::sqrt(-2.0 * std::log(rng.uniform_open0()));
            const double a = 2.0 * std::numbers::pi * rng.uniform();
            const double x0 = mu + sigma * r * std::cos(a);
            const double x1 = mu + sigma * r * std::sin(a);
            v[i] = std::max(rho * (h + x0) * (h + x0), floor);
            if (i + 1 < len) {
                v[i + 1] = std::max(rho * (h + x1) * (h + x1), floor);
            }
        }
        sums[static_cast<std::size_t>(c)] = pairwise_sum(v);
    }
    return n ? pairwise_sum(sums) / static_cast<double>(n) : 0.0;
}

double probe_reward_gap(double closed, double mc, double lambda, double probe) {
    const double scale = std::max(std::abs(mc), lambda * probe);
    const double diff = std::abs(closed - mc);
    return scale > 0.0 ? diff / scale : diff;
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

Check check_omega(const OfflineModel& model, double lambda_star, const ValidationOptions& o) {
    Check c{"omega closed form vs Gaussian Monte Carlo", true, {}};
    const CascadedMoments& m = model.moments.front();
    double worst = 0.0;
    std::uint64_t stream = 0;
    for (const GridPoint& g : operating_grid(model, 0, lambda_star)) {
        const double closed = omega(g.lambda, g.h, m.mu, m.sigma, model.rho);
        const double mc = omega_mc(g.lambda, g.h, m.mu, m.sigma, model.rho, o.omega_draws,
                                   o.seed + (++stream << 20));
        const double rel = mc != 0.0 ? std::abs(closed - mc) / std::abs(mc) : std::abs(closed);
        worst = std::max(worst, rel);
    }
    c.passed = worst < 3e-3;
    c.detail = "max relative error " + fmt(worst) + " (limit 0.003)";
    return c;
}

Check check_probe_reward(const OfflineModel& model, double lambda_star, const ValidationOptions& o) {
    Check c{"probe reward closed form vs exact channel", true, {}};
    double worst = 0.0;
    std::uint64_t stream = 0;
    for (const GridPoint& g : operating_grid(model, 0, lambda_star)) {
        const double closed = lambda_bar(model, 0, g.lambda, g.h);
        const double mc =
            lambda_mc(model, 0, g.lambda, g.h, o.lambda_draws, o.seed + (++stream << 24)).mean;
        worst = std::max(worst, probe_reward_gap(closed, mc, g.lambda, model.probe));
    }
    c.passed = worst < 0.03;
    c.detail = "pair 1, max relative gap " + fmt(worst) + " (limit 0.03)";
    return c;
}

std::vector<Check> check_contention(const NetworkConfig& cfg, const OfflineModel& model,
                                    const ValidationOptions& o) {
    const std::size_t pairs = cfg.pair_count();
    std::vector<double> elapsed(o.contentions);
    std::vector<std::size_t> wins(pairs, 0);
    CounterRng rng(o.seed, 0xC0117E5710ULL);
    for (double& e : elapsed) {
        const ContentionOutcome out = simulate_contention(rng, cfg);
        e = out.elapsed;
        ++wins[out.winner];
    }
    const double mean = o.contentions ? pairwise_sum(elapsed) / static_cast<double>(o.contentions) : 0.0;
    const double rel = std::abs(mean - model.tau_o) / model.tau_o;
    Check time{"mean contention time", rel < 5e-3,
               "simulated " + fmt(mean * 1e6) + " us vs " + fmt(model.tau_o * 1e6) +
                   " us, relative error " + fmt(rel) + " (limit 0.005)"};

    // P(k wins | exactly one sender) = p_k prod_{j != k} (1 - p_j) / p_s.
    const double ps = success_probability(cfg.access_prob);
    double chi2 = 0.0;
    for (std::size_t k = 0; k < pairs; ++k) {
        double pk = cfg.access_prob[k];
        for (std::size_t j = 0; j < pairs; ++j) {
            if (j != k) {
                pk *= 1.0 - cfg.access_prob[j];
            }
        }
        const double expect = pk / ps * static_cast<double>(o.contentions);
        if (expect > 0.0) {
            const double d = static_cast<double>(wins[k]) - expect;
            chi2 += d * d / expect;
        }
    }
    Check winners{"winner distribution", true, "single pair"};
    if (pairs > 1) {
        const boost::math::chi_squared dist(static_cast<double>(pairs - 1));
        const double crit = boost::math::quantile(boost::math::complement(dist, 0.01));
        winners.passed = chi2 < crit;
        winners.detail = "chi-square " + fmt(chi2) + " (1% critical value " + fmt(crit) + ")";
    }
    return {time, winners};
}

std::vector<Check> check_thresholds(const NetworkConfig& cfg, const OfflineModel& model,
                                    const ThresholdTable& table, const ValidationOptions& o) {
    std::vector<Check> out;
    const auto kstar = table.kstar();
    std::string members;
    for (std::size_t k : kstar) {
        members += (members.empty() ? "" : ",") + std::to_string(k + 1);
    }
    out.push_back({"probing set", true, "K* = {" + members + "}"});

    if (kstar.empty()) {
        out.push_back({"threshold ordering", true, "skipped, K* is empty"});
    } else {
        const double h0 = direct_break_even(model, table.lambda_star);
        std::size_t bad = 0;
        for (std::size_t k : kstar) {
            const PairThresholds& t = table.pairs[k];
            bad += !(t.zeta < h0 && h0 < t.eta);
        }
        out.push_back({"threshold ordering", bad == 0,
                       std::to_string(bad) + " pairs violate zeta < h0 < eta"});
    }

    const ProbeRewardFn closed = closed_form_probe_reward(model);
    std::size_t disagreements = 0;
    std::size_t total = 0;
    for (std::size_t k = 0; k < cfg.pair_count(); ++k) {
        CounterRng rng(o.seed, 0xE9 + k);
        for (std::size_t i = 0; i < o.equivalence_draws; ++i) {
            const double h = draw_direct(rng, model.channels[k]);
            const ChannelObservation obs{k, h, std::nullopt};
            const Decision a = algorithm1_decide(h, k, table);
            const Decision b = theorem1_decide_level1(obs, table.lambda_star, model, closed);
            disagreements += a != b;
            ++total;
        }
    }
    out.push_back({"threshold policy vs reward comparison", disagreements == 0,
                   std::to_string(disagreements) + " disagreements in " + std::to_string(total) +
                       " draws"});
    return out;
}

}  // namespace

ValidationReport run_validation(const NetworkConfig& cfg, const ValidationOptions& opts,
                                const ThresholdTable* table) {
    ValidationReport report;
    const OfflineModel model = OfflineModel::from_config(cfg);

    ThresholdTable solved;
    if (table == nullptr) {
        try {
            solved = build_threshold_table(cfg);
        } catch (const SolverError& e) {
            report.checks.push_back({"fixed point", false, e.what()});
            return report;
        }
        table = &solved;
    } else {
        try {
            check_table_matches(*table, cfg);
        } catch (const std::invalid_argument& e) {
            report.checks.push_back({"threshold table", false, e.what()});
            return report;
        }
    }
    const double lambda_star = table->lambda_star;
    const double residual = bellman_residual(model, lambda_star);
    report.checks.push_back({"fixed point", std::abs(residual) < 1e-6,
                             "lambda* = " + fmt(lambda_star) + ", residual " + fmt(residual)});

    report.checks.push_back(check_omega(model, lambda_star, opts));
    report.checks.push_back(check_probe_reward(model, lambda_star, opts));
    for (Check& c : check_contention(cfg, model, opts)) {
        report.checks.push_back(std::move(c));
    }
    for (Check& c : check_thresholds(cfg, model, *table, opts)) {
        report.checks.push_back(std::move(c));
    }

    const CampaignResult sim = run_campaign(opts.seed, cfg, Strategy::proposed(*table), opts.rounds);
    const double diff = std::abs(sim.estimate.mean - lambda_star);
    const double rel = lambda_star > 0.0 ? diff / lambda_star : diff;
    report.checks.push_back({"simulated throughput vs lambda*", rel < kCampaignTolerance,
                             "simulated " + fmt(sim.estimate.mean) + " +- " +
                                 fmt(sim.estimate.ci_halfwidth) + ", relative error " + fmt(rel) +
                                 " (limit 0.03)"});
    return report;
}

void write_report(std::ostream& out, const ValidationReport& report) {
    for (const Check& c : report.checks) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << ": " << c.detail << '\n';
    }
    out << (report.ok() ? "all checks passed" : "validation FAILED") << '\n';
}

}  // namespace rismac
