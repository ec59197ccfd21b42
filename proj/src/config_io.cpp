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

#include "rismac/config_io.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace rismac {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> to_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

struct Entry {
    std::string value;
    int line = 0;
};

class KeyValues {
public:
    explicit KeyValues(std::string_view text) {
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto end = text.find('\n', pos);
            std::string_view line =
                text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string_view::npos) {
                line = line.substr(0, hash);
            }
            line = trim(line);
            if (!line.empty()) {
                const auto eq = line.find('=');
                if (eq == std::string_view::npos) {
                    throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
                }
                std::string key(trim(line.substr(0, eq)));
                if (key.empty()) {
                    throw ConfigError("line " + std::to_string(line_no) + ": empty key");
                }
                if (entries_.count(key) != 0) {
                    throw ConfigError(key + ": duplicate key (line " + std::to_string(line_no) + ")",
                                      key);
                }
                entries_[key] = Entry{std::string(trim(line.substr(eq + 1))), line_no};
            }
            if (end == std::string_view::npos) {
                break;
            }
            pos = end + 1;
        }
    }

    const std::string& require(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            throw ConfigError(key + ": missing key", key);
        }
        used_.push_back(key);
        return it->second.value;
    }

    std::optional<std::string> optional(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            return std::nullopt;
        }
        used_.push_back(key);
        return it->second.value;
    }

    void reject_unknown() const {
        for (const auto& [key, entry] : entries_) {
            bool seen = false;
            for (const auto& u : used_) {
                seen = seen || u == key;
            }
            if (!seen) {
                throw ConfigError(key + ": unknown key (line " + std::to_string(entry.line) + ")",
                                  key);
            }
        }
    }

private:
    std::map<std::string, Entry> entries_;
    std::vector<std::string> used_;
};

// Splits "30 dBm" into number and unit suffix. The unit may be glued to the
// number ("25us").
std::pair<double, std::string> split_quantity(const std::string& key, std::string_view raw) {
    raw = trim(raw);
    std::size_t cut = raw.size();
    while (cut > 0) {
        const char c = raw[cut - 1];
        const bool unit_char = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
        if (!unit_char) {
            break;
        }
        --cut;
    }
    std::string unit(trim(raw.substr(cut)));
    const auto number = to_number(raw.substr(0, cut));
    if (!number) {
        throw ConfigError(key + ": cannot parse number from '" + std::string(raw) + "'", key);
    }
    return {*number, unit};
}

double parse_unitless(KeyValues& kv, const std::string& key) {
    const std::string& raw = kv.require(key);
    const auto v = to_number(raw);
    if (!v) {
        throw ConfigError(key + ": expected a plain number, got '" + raw + "'", key);
    }
    return *v;
}

double parse_power(KeyValues& kv, const std::string& key) {
    const auto [v, unit] = split_quantity(key, kv.require(key));
    if (unit == "dBm") {
        return dbm_to_watts(v);
    }
    if (unit == "mW") {
        return v / 1e3;
    }
    if (unit == "W") {
        return v;
    }
    throw ConfigError(key + ": power needs a unit suffix (dBm, mW, W)", key);
}

double parse_gain(KeyValues& kv, const std::string& key) {
    const auto [v, unit] = split_quantity(key, kv.require(key));
    if (unit == "dB" || unit == "dBi") {
        return db_to_linear(v);
    }
    if (unit == "lin") {
        return v;
    }
    throw ConfigError(key + ": gain needs a unit suffix (dB, lin)", key);
}

double parse_duration(KeyValues& kv, const std::string& key) {
    const auto [v, unit] = split_quantity(key, kv.require(key));
    if (unit == "s") {
        return v;
    }
    if (unit == "ms") {
        return v / 1e3;
    }
    if (unit == "us") {
        return v / 1e6;
    }
    throw ConfigError(key + ": duration needs a unit suffix (s, ms, us)", key);
}

double parse_frequency(const std::string& key, const std::string& raw) {
    const auto [v, unit] = split_quantity(key, raw);
    if (unit == "Hz") {
        return v;
    }
    if (unit == "kHz") {
        return v * 1e3;
    }
    if (unit == "MHz") {
        return v * 1e6;
    }
    if (unit == "GHz") {
        return v * 1e9;
    }
    throw ConfigError(key + ": frequency needs a unit suffix (Hz, kHz, MHz, GHz)", key);
}

// "(0,0) (0,10) m"
std::vector<Point2> parse_points(KeyValues& kv, const std::string& key) {
    std::string_view raw = trim(kv.require(key));
    if (raw.size() < 2 || raw.substr(raw.size() - 1) != "m" ||
        (raw.size() >= 2 && raw[raw.size() - 2] != ' ' && raw[raw.size() - 2] != ')')) {
        throw ConfigError(key + ": coordinates need a trailing unit suffix 'm'", key);
    }
    raw = trim(raw.substr(0, raw.size() - 1));
    std::vector<Point2> points;
    while (!raw.empty()) {
        if (raw.front() != '(') {
            throw ConfigError(key + ": expected '(x,y)' groups", key);
        }
        const auto close = raw.find(')');
        if (close == std::string_view::npos) {
            throw ConfigError(key + ": unbalanced parenthesis", key);
        }
        const std::string_view inner = raw.substr(1, close - 1);
        const auto comma = inner.find(',');
        if (comma == std::string_view::npos) {
            throw ConfigError(key + ": expected '(x,y)' groups", key);
        }
        const auto x = to_number(inner.substr(0, comma));
        const auto y = to_number(inner.substr(comma + 1));
        if (!x || !y) {
            throw ConfigError(key + ": bad coordinate '(" + std::string(inner) + ")'", key);
        }
        points.push_back({*x, *y});
        raw = trim(raw.substr(close + 1));
        if (!raw.empty() && raw.front() == ',') {
            raw = trim(raw.substr(1));
        }
    }
    if (points.empty()) {
        throw ConfigError(key + ": no coordinates given", key);
    }
    return points;
}

std::vector<double> parse_list(const std::string& key, std::string_view raw) {
    std::vector<double> out;
    std::string buf(raw);
    for (char& c : buf) {
        if (c == ',') {
            c = ' ';
        }
    }
    std::istringstream in(buf);
    std::string tok;
    while (in >> tok) {
        const auto v = to_number(tok);
        if (!v) {
            throw ConfigError(key + ": bad number '" + tok + "'", key);
        }
        out.push_back(*v);
    }
    if (out.empty()) {
        throw ConfigError(key + ": empty list", key);
    }
    return out;
}

std::string format_points(const std::vector<Point2>& pts) {
    std::string out;
    for (const auto& p : pts) {
        out += "(" + format_double(p.x) + "," + format_double(p.y) + ") ";
    }
    return out + "m";
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

NetworkConfig parse_config_text(std::string_view text) {
    KeyValues kv(text);
    NetworkConfig cfg;

    const double elements = parse_unitless(kv, "ris_elements");
    if (elements < 0.0 || elements != static_cast<double>(static_cast<std::size_t>(elements))) {
        throw ConfigError("ris_elements: must be a nonnegative integer", "ris_elements");
    }
    cfg.ris_elements = static_cast<std::size_t>(elements);

    cfg.tx_power_w = parse_power(kv, "tx_power");
    cfg.tx_gain = parse_gain(kv, "tx_gain");
    cfg.rx_gain = parse_gain(kv, "rx_gain");
    cfg.ref_path_loss = parse_gain(kv, "ref_path_loss");
    cfg.noise_power_w = parse_power(kv, "noise_power");
    cfg.alpha_direct = parse_unitless(kv, "alpha_direct");
    cfg.alpha_ris = parse_unitless(kv, "alpha_ris");
    if (const auto f = kv.optional("carrier_frequency")) {
        cfg.carrier_frequency_hz = parse_frequency("carrier_frequency", *f);
    }

    cfg.coherence_time = parse_duration(kv, "coherence_time");
    cfg.rts_time = parse_duration(kv, "rts_time");
    cfg.cts_time = parse_duration(kv, "cts_time");
    cfg.pilot_time = parse_duration(kv, "pilot_time");
    cfg.slot_time = parse_duration(kv, "slot_time");

    cfg.sources = parse_points(kv, "source_positions");
    cfg.destinations = parse_points(kv, "destination_positions");
    const auto ris = parse_points(kv, "ris_position");
    if (ris.size() != 1) {
        throw ConfigError("ris_position: exactly one coordinate expected", "ris_position");
    }
    cfg.ris = ris.front();

    auto probs = parse_list("access_probability", kv.require("access_probability"));
    if (probs.size() == 1) {
        probs.assign(cfg.sources.size(), probs.front());
    }
    cfg.access_prob = std::move(probs);

    kv.reject_unknown();
    validate(cfg);
    return cfg;
}

NetworkConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string to_canonical_text(const NetworkConfig& cfg) {
    std::ostringstream out;
    out << "ris_elements = " << cfg.ris_elements << "\n";
    out << "tx_power = " << format_double(cfg.tx_power_w) << " W\n";
    out << "tx_gain = " << format_double(cfg.tx_gain) << " lin\n";
    out << "rx_gain = " << format_double(cfg.rx_gain) << " lin\n";
    out << "ref_path_loss = " << format_double(cfg.ref_path_loss) << " lin\n";
    out << "noise_power = " << format_double(cfg.noise_power_w) << " W\n";
    out << "alpha_direct = " << format_double(cfg.alpha_direct) << "\n";
    out << "alpha_ris = " << format_double(cfg.alpha_ris) << "\n";
    out << "carrier_frequency = " << format_double(cfg.carrier_frequency_hz) << " Hz\n";
    out << "coherence_time = " << format_double(cfg.coherence_time) << " s\n";
    out << "rts_time = " << format_double(cfg.rts_time) << " s\n";
    out << "cts_time = " << format_double(cfg.cts_time) << " s\n";
    out << "pilot_time = " << format_double(cfg.pilot_time) << " s\n";
    out << "slot_time = " << format_double(cfg.slot_time) << " s\n";
    out << "source_positions = " << format_points(cfg.sources) << "\n";
    out << "destination_positions = " << format_points(cfg.destinations) << "\n";
    out << "ris_position = " << format_points({cfg.ris}) << "\n";
    out << "access_probability =";
    for (double p : cfg.access_prob) {
        out << " " << format_double(p);
    }
    out << "\n";
    return out.str();
}

std::string config_hash(const NetworkConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : to_canonical_text(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[h & 0xfU];
        h >>= 4;
    }
    return out;
}

}  // namespace rismac
