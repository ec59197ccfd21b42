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

#include "rismac/threshold_table.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "rismac/config_io.hpp"

namespace rismac {

namespace {

constexpr const char* kFormat = "rismac-thresholds/1";

std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return {};
    }
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double read_double(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        throw std::runtime_error("threshold table: missing key '" + key + "'");
    }
    double v = 0.0;
    const std::string& s = it->second;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::runtime_error("threshold table: bad number for '" + key + "': " + s);
    }
    return v;
}

}  // namespace

std::vector<std::size_t> ThresholdTable::kstar() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pairs[k].member) {
            out.push_back(k);
        }
    }
    return out;
}

ThresholdTable build_threshold_table(const NetworkConfig& cfg, const FixedPointOptions& opts) {
    const OfflineModel model = OfflineModel::from_config(cfg);
    const FixedPointResult fp = solve_lambda_star(model, opts);

    ThresholdTable table;
    table.config_hash = config_hash(cfg);
    table.lambda_star = fp.lambda;
    table.residual = fp.residual;
    table.tau_o = model.tau_o;
    table.rho = model.rho;
    table.pairs.resize(model.pairs());
    const auto members = pair_set_kstar(model, fp.lambda);
    // Per-pair threshold solves are independent.
    const auto n = static_cast<std::ptrdiff_t>(members.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::size_t k = members[static_cast<std::size_t>(i)];
        PairThresholds& t = table.pairs[k];
        t.member = true;
        t.zeta = solve_zeta(model, k, fp.lambda);
        t.eta = solve_eta(model, k, fp.lambda);
    }
    return table;
}

void write_table(std::ostream& out, const ThresholdTable& table) {
    out << "# pure-threshold channel access table\n";
    out << "format = " << kFormat << "\n";
    out << "config_hash = " << table.config_hash << "\n";
    out << "lambda_star = " << format_double(table.lambda_star) << "\n";
    out << "residual = " << format_double(table.residual) << "\n";
    out << "tau_o = " << format_double(table.tau_o) << "\n";
    out << "rho = " << format_double(table.rho) << "\n";
    out << "pairs = " << table.pairs.size() << "\n";
    for (std::size_t k = 0; k < table.pairs.size(); ++k) {
        const auto& p = table.pairs[k];
        const std::string prefix = "pair." + std::to_string(k + 1) + ".";
        out << prefix << "member = " << (p.member ? 1 : 0) << "\n";
        if (p.member) {
            out << prefix << "zeta = " << format_double(p.zeta) << "\n";
            out << prefix << "eta = " << format_double(p.eta) << "\n";
        }
    }
}

ThresholdTable read_table(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        line = strip(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("threshold table: malformed line '" + line + "'");
        }
        kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    if (kv["format"] != kFormat) {
        throw std::runtime_error("threshold table: unsupported format '" + kv["format"] + "'");
    }
    ThresholdTable t;
    t.config_hash = kv["config_hash"];
    t.lambda_star = read_double(kv, "lambda_star");
    t.residual = read_double(kv, "residual");
    t.tau_o = read_double(kv, "tau_o");
    t.rho = read_double(kv, "rho");
    const double pairs = read_double(kv, "pairs");
    if (pairs < 1 || pairs != static_cast<double>(static_cast<std::size_t>(pairs))) {
        throw std::runtime_error("threshold table: bad pair count");
    }
    t.pairs.resize(static_cast<std::size_t>(pairs));
    for (std::size_t k = 0; k < t.pairs.size(); ++k) {
        const std::string prefix = "pair." + std::to_string(k + 1) + ".";
        const double member = read_double(kv, prefix + "member");
        if (member != 0.0 && member != 1.0) {
            throw std::runtime_error("threshold table: " + prefix + "member must be 0 or 1");
        }
        t.pairs[k].member = member == 1.0;
        if (t.pairs[k].member) {
            t.pairs[k].zeta = read_double(kv, prefix + "zeta");
            t.pairs[k].eta = read_double(kv, prefix + "eta");
            if (!(t.pairs[k].zeta <= t.pairs[k].eta)) {
                throw std::runtime_error("threshold table: " + prefix + "zeta exceeds eta");
            }
        }
    }
    return t;
}

void save_table(const std::filesystem::path& path, const ThresholdTable& table) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write threshold table '" + path.string() + "'");
    }
    write_table(out, table);
}

ThresholdTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open threshold table '" + path.string() + "'");
    }
    return read_table(in);
}

void check_table_matches(const ThresholdTable& table, const NetworkConfig& cfg) {
    if (table.pairs.size() != cfg.pair_count()) {
        throw std::invalid_argument("threshold table has " + std::to_string(table.pairs.size()) +
                                    " pairs but the config has " +
                                    std::to_string(cfg.pair_count()));
    }
    const std::string hash = config_hash(cfg);
    if (table.config_hash != hash) {
        throw std::invalid_argument("threshold table was solved for config " + table.config_hash +
                                    ", not " + hash + "; re-run `rismac solve`");
    }
}

}  // namespace rismac
