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

// rismac: offline solve, simulation campaigns, sweeps and validation.
//
// Exit codes: 0 ok, 2 usage or config error, 3 solver did not converge,
// 4 validation or tolerance failure, 1 anything else.

#include <omp.h>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rismac/config_io.hpp"
#include "rismac/harness.hpp"
#include "rismac/simulator.hpp"
#include "rismac/solver.hpp"
#include "rismac/strategies.hpp"
#include "rismac/threshold_table.hpp"

namespace {

using namespace rismac;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitValidation = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config;
    std::string table;
    std::string policy;
    std::string axis = "pt";
    std::string values;
    std::string out;
    std::string dump_rounds;
    std::size_t rounds = 100'000;
    std::uint64_t seed = 1;
    bool strict = false;
};

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = item.find_first_not_of(' ');
        const auto b = item.find_last_not_of(' ');
        if (a == std::string::npos) {
            throw UsageError("--values: empty entry in '" + list + "'");
        }
        double v = 0.0;
        const char* first = item.data() + a;
        const char* last = item.data() + b + 1;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) {
            throw UsageError("--values: not a number: '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

PolicyKind require_policy(const std::string& name) {
    const auto kind = parse_policy(name);
    if (!kind) {
        throw UsageError("unknown policy '" + name +
                         "' (expected proposed, optimal-ris-stop, no-wait-ris, no-wait-direct)");
    }
    return *kind;
}

/// Writes to --out when given, stdout otherwise.
template <typename F>
void emit(const std::string& path, F&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    write(f);
}

void print_solve_report(std::ostream& out, const ThresholdTable& t, const FixedPointResult& fp) {
    out << "config        " << t.config_hash << '\n'
        << "lambda*       " << format_double(t.lambda_star) << " bit/s/Hz\n"
        << "residual      " << t.residual << " (" << fp.iterations << " iterations, alpha "
        << fp.alpha << ")\n"
        << "tau_o         " << t.tau_o * 1e6 << " us\n";
    for (std::size_t k = 0; k < t.pairs.size(); ++k) {
        const PairThresholds& p = t.pairs[k];
        out << "pair " << k + 1 << "  ";
        if (p.member) {
            out << "zeta " << p.zeta << "  eta " << p.eta << '\n';
        } else {
            out << "direct only\n";
        }
    }
}

int cmd_solve(const Options& o) {
    const NetworkConfig cfg = parse_config(o.config);
    const OfflineModel model = OfflineModel::from_config(cfg);
    const FixedPointResult fp = solve_lambda_star(model);
    const ThresholdTable table = build_threshold_table(cfg);
    const std::string path = !o.out.empty() ? o.out : o.table;
    if (path.empty()) {
        print_solve_report(std::cerr, table, fp);
        write_table(std::cout, table);
    } else {
        save_table(path, table);
        print_solve_report(std::cout, table, fp);
        std::cout << "wrote " << path << '\n';
    }
    return kExitOk;
}

int cmd_simulate(const Options& o) {
    const NetworkConfig cfg = parse_config(o.config);
    const PolicyKind kind = require_policy(o.policy.empty() ? "proposed" : o.policy);
    if (o.rounds == 0) {
        throw UsageError("--rounds must be at least 1");
    }
    const OfflineModel model = OfflineModel::from_config(cfg);

    PointSolution point;
    if (!o.table.empty()) {
        point.table = load_table(o.table);
        check_table_matches(point.table, cfg);
    } else if (kind == PolicyKind::Proposed) {
        throw std::invalid_argument(
            "the proposed policy needs --table; create one with `rismac solve --config " +
            o.config + " --out TABLE`");
    }
    switch (kind) {
        case PolicyKind::OptimalRISStop:
            point.lambda_b = solve_lambda_b(model).lambda;
            break;
        case PolicyKind::NoWaitRIS:
            point.no_wait_ris = analytic_no_wait_ris(model, kNoWaitRisSamples, o.seed);
            break;
        case PolicyKind::NoWaitDirect:
            point.no_wait_direct = analytic_no_wait_direct(model);
            break;
        case PolicyKind::Proposed:
            break;
    }

    const ResultRow row = simulate_point(cfg, point, kind, o.rounds, o.seed);
    emit(o.out, [&](std::ostream& out) { write_csv(out, {row}); });
    std::cerr << policy_name(kind) << ": " << row.simulated_mean << " +- " << row.ci_halfwidth
              << " bit/s/Hz (analytic " << row.analytic_lambda << ")\n";

    if (!o.dump_rounds.empty()) {
        const Strategy strategy = make_strategy(kind, &point.table, point.lambda_b);
        const ChannelSet channels = ChannelSet::from_config(cfg);
        emit(o.dump_rounds, [&](std::ostream& out) {
            write_round_header(out);
            for (std::size_t i = 0; i < o.rounds; ++i) {
                write_round(out, i, run_round(o.seed, i, cfg, channels, strategy));
            }
        });
    }

    if (o.strict) {
        const auto bad = tolerance_violations({row});
        for (const auto& msg : bad) {
            std::cerr << "tolerance exceeded: " << msg << '\n';
        }
        return bad.empty() ? kExitOk : kExitValidation;
    }
    return kExitOk;
}

int cmd_sweep(const Options& o) {
    const NetworkConfig cfg = parse_config(o.config);
    SweepSpec spec;
    const auto axis = parse_axis(o.axis);
    if (!axis) {
        throw UsageError("--axis must be pt or tau_d");
    }
    spec.axis = *axis;
    if (o.values.empty()) {
        throw UsageError("--values is required for sweep");
    }
    spec.values = parse_values(o.values);
    if (!o.policy.empty()) {
        spec.policies = {require_policy(o.policy)};
    }
    spec.n_rounds = o.rounds;
    spec.seed = o.seed;

    const std::vector<ResultRow> rows = run_sweep(cfg, spec);
    emit(o.out, [&](std::ostream& out) { write_csv(out, rows); });
    if (!o.out.empty()) {
        const std::string gp = o.out + ".gp";
        emit(gp, [&](std::ostream& out) {
            write_gnuplot(out, std::filesystem::path(o.out).filename().string(), spec.axis);
        });
    }
    if (o.strict) {
        const auto bad = tolerance_violations(rows);
        for (const auto& msg : bad) {
            std::cerr << "tolerance exceeded: " << msg << '\n';
        }
        return bad.empty() ? kExitOk : kExitValidation;
    }
    return kExitOk;
}

int cmd_validate(const Options& o) {
    const NetworkConfig cfg = parse_config(o.config);
    ValidationOptions vo;
    vo.seed = o.seed;
    vo.rounds = o.rounds;
    std::optional<ThresholdTable> table;
    if (!o.table.empty()) {
        table = load_table(o.table);
    }
    const ValidationReport report = run_validation(cfg, vo, table ? &*table : nullptr);
    emit(o.out, [&](std::ostream& out) { write_report(out, report); });
    return report.ok() ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted distributed channel access: solver and simulator"};
    app.require_subcommand(1);
    Options o;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "network config file")->required();
    };
    auto* solve = app.add_subcommand("solve", "compute lambda* and the threshold table");
    add_config(solve);
    solve->add_option("--out,--table", o.out, "where to write the threshold table");

    auto* simulate = app.add_subcommand("simulate", "run one policy and print a CSV row");
    add_config(simulate);
    simulate->add_option("--table", o.table, "threshold table from `rismac solve`");
    simulate->add_option("--policy", o.policy, "proposed | optimal-ris-stop | no-wait-ris | no-wait-direct");
    simulate->add_option("--rounds", o.rounds, "rounds to simulate");
    simulate->add_option("--seed", o.seed, "base seed");
    simulate->add_option("--out", o.out, "CSV output path");
    simulate->add_option("--dump-rounds", o.dump_rounds, "write every round's ledger to this path");
    simulate->add_flag("--strict", o.strict, "exit 4 if the simulated mean misses the analytic value");

    auto* sweep = app.add_subcommand("sweep", "sweep transmit power or coherence time");
    add_config(sweep);
    sweep->add_option("--axis", o.axis, "pt (dBm) or tau_d (ms)");
    sweep->add_option("--values", o.values, "comma separated, strictly increasing");
    sweep->add_option("--policy", o.policy, "single policy (default: all four)");
    sweep->add_option("--rounds", o.rounds, "rounds per point and policy");
    sweep->add_option("--seed", o.seed, "base seed, shared by every point");
    sweep->add_option("--out", o.out, "CSV output path; a gnuplot script is written next to it");
    sweep->add_flag("--strict", o.strict, "exit 4 if any row misses its analytic value");

    auto* validate = app.add_subcommand("validate", "run the cross-check suite");
    add_config(validate);
    validate->add_option("--table", o.table, "check this table instead of a fresh solve");
    validate->add_option("--rounds", o.rounds, "rounds for the throughput check")->default_val(200'000);
    validate->add_option("--seed", o.seed, "seed");
    validate->add_option("--out", o.out, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    omp_set_num_threads(resolve_threads());
    try {
        if (*solve) {
            return cmd_solve(o);
        }
        if (*simulate) {
            return cmd_simulate(o);
        }
        if (*sweep) {
            return cmd_sweep(o);
        }
        return cmd_validate(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
