// SPDX-License-Identifier: Apache-2.0

#include "fasop/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace fasop {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void bad_value(const std::string& where, const std::string& key, const std::string& value,
                            const std::string& expected) {
    throw ConfigError(where + ": invalid value '" + value + "' for " + key + " (expected " + expected + ")");
}

double parse_real(const std::string& where, const std::string& key, const std::string& value) {
    double v = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) bad_value(where, key, value, "a real number");
    return v;
}

// Integers may be written in exponent form (trials=1e7) as long as they are integral.
long long parse_integer(const std::string& where, const std::string& key, const std::string& value) {
    const double v = parse_real(where, key, value);
    if (v != std::floor(v) || std::fabs(v) > 9.0e15) bad_value(where, key, value, "an integer");
    return static_cast<long long>(v);
}

int parse_int(const std::string& where, const std::string& key, const std::string& value) {
    const long long v = parse_integer(where, key, value);
    if (v < -2147483647LL || v > 2147483647LL) bad_value(where, key, value, "a 32-bit integer");
    return static_cast<int>(v);
}

std::uint64_t parse_count(const std::string& where, const std::string& key, const std::string& value) {
    const long long v = parse_integer(where, key, value);
    if (v < 0) bad_value(where, key, value, "a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& where, const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    bad_value(where, key, value, "true or false");
}

SweepVariable parse_variable(const std::string& where, const std::string& value) {
    static const std::map<std::string, SweepVariable> names = {{"snr_db", SweepVariable::snr_db},
                                                               {"ports", SweepVariable::ports},
                                                               {"threshold_db", SweepVariable::threshold_db},
                                                               {"antenna_size", SweepVariable::antenna_size}};
    const auto it = names.find(value);
    if (it == names.end()) bad_value(where, "sweep", value, "snr_db, ports, threshold_db or antenna_size");
    return it->second;
}

std::vector<Scheme> parse_schemes(const std::string& where, const std::string& value) {
    static const std::map<std::string, Scheme> names = {
        {"fas", Scheme::fas},     {"mgc", Scheme::mgc},     {"mrc", Scheme::mrc}, {"approx", Scheme::approx},
        {"asymptotic", Scheme::asymptotic}, {"exact", Scheme::exact}, {"mc", Scheme::mc}};
    std::vector<Scheme> out;
    for (const auto& item : split_list(value)) {
        const auto it = names.find(item);
        if (it == names.end()) bad_value(where, "schemes", item, "fas, mgc, mrc, approx, asymptotic, exact, mc");
        if (std::find(out.begin(), out.end(), it->second) == out.end()) out.push_back(it->second);
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& values, F&& f) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += f(values[i]);
    }
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"L", [](auto& c, auto& w, auto& v) { c.ports = parse_int(w, "L", v); }},
        {"M", [](auto& c, auto& w, auto& v) { c.branches = parse_int(w, "M", v); }},
        {"W", [](auto& c, auto& w, auto& v) { c.size = parse_real(w, "W", v); }},
        {"m", [](auto& c, auto& w, auto& v) { c.m = parse_int(w, "m", v); }},
        {"omega_sq",
         [](auto& c, auto& w, auto& v) {
             c.omega_sq.clear();
             for (const auto& item : split_list(v)) c.omega_sq.push_back(parse_real(w, "omega_sq", item));
             if (c.omega_sq.empty()) bad_value(w, "omega_sq", v, "one or more reals");
         }},
        {"snr_db", [](auto& c, auto& w, auto& v) { c.snr_db = parse_real(w, "snr_db", v); }},
        {"gamma_th_db", [](auto& c, auto& w, auto& v) { c.gamma_th_db = parse_real(w, "gamma_th_db", v); }},
        {"seed", [](auto& c, auto& w, auto& v) { c.seed = parse_count(w, "seed", v); }},
        {"trials", [](auto& c, auto& w, auto& v) { c.trials = parse_count(w, "trials", v); }},
        {"workers", [](auto& c, auto& w, auto& v) { c.workers = static_cast<unsigned>(parse_count(w, "workers", v)); }},
        {"sweep", [](auto& c, auto& w, auto& v) { c.sweep.variable = parse_variable(w, v); }},
        {"from", [](auto& c, auto& w, auto& v) { c.sweep.from = parse_real(w, "from", v); }},
        {"to", [](auto& c, auto& w, auto& v) { c.sweep.to = parse_real(w, "to", v); }},
        {"step", [](auto& c, auto& w, auto& v) { c.sweep.step = parse_real(w, "step", v); }},
        {"schemes", [](auto& c, auto& w, auto& v) { c.sweep.schemes = parse_schemes(w, v); }},
        {"mrc_antennas", [](auto& c, auto& w, auto& v) { c.mrc_antennas = parse_int(w, "mrc_antennas", v); }},
        {"out", [](auto& c, auto&, auto& v) { c.out = v; }},
        {"ci_factor", [](auto& c, auto& w, auto& v) { c.ci_factor = parse_real(w, "ci_factor", v); }},
        {"approx_rel_tol", [](auto& c, auto& w, auto& v) { c.approx_rel_tol = parse_real(w, "approx_rel_tol", v); }},
        {"approx_min_op", [](auto& c, auto& w, auto& v) { c.approx_min_op = parse_real(w, "approx_min_op", v); }},
        {"approx_max_op", [](auto& c, auto& w, auto& v) { c.approx_max_op = parse_real(w, "approx_max_op", v); }},
        {"tail_rel_tol", [](auto& c, auto& w, auto& v) { c.tail_rel_tol = parse_real(w, "tail_rel_tol", v); }},
        {"crossings", [](auto& c, auto& w, auto& v) { c.crossings = parse_bool(w, "crossings", v); }},
        {"cross_orders",
         [](auto& c, auto& w, auto& v) {
             c.cross_orders.clear();
             for (const auto& item : split_list(v)) c.cross_orders.push_back(parse_int(w, "cross_orders", item));
         }},
        {"cross_max_ports", [](auto& c, auto& w, auto& v) { c.cross_max_ports = parse_int(w, "cross_max_ports", v); }},
        {"expect_cross_fas",
         [](auto& c, auto& w, auto& v) { c.expect_cross_fas = parse_real(w, "expect_cross_fas", v); }},
        {"expect_cross_mgc",
         [](auto& c, auto& w, auto& v) {
             c.expect_cross_mgc.clear();
             for (const auto& item : split_list(v)) c.expect_cross_mgc.push_back(parse_real(w, "expect_cross_mgc", item));
         }},
        {"cross_rel_tol", [](auto& c, auto& w, auto& v) { c.cross_rel_tol = parse_real(w, "cross_rel_tol", v); }},
        {"beta_scale", [](auto& c, auto& w, auto& v) { c.beta_scale = parse_real(w, "beta_scale", v); }},
    };
    return table;
}

}  // namespace

std::vector<double> SweepSpec::grid() const {
    validate();
    const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = from + static_cast<double>(i) * step;
    return xs;
}

bool SweepSpec::has(Scheme s) const { return std::find(schemes.begin(), schemes.end(), s) != schemes.end(); }

void SweepSpec::validate() const {
    if (!(from <= to)) throw std::invalid_argument("sweep: from must not exceed to");
    if (!(step > 0.0)) throw std::invalid_argument("sweep: step must be positive");
    if (schemes.empty()) throw std::invalid_argument("sweep: scheme set is empty");
    if (variable == SweepVariable::ports) {
        for (double x : {from, step}) {
            if (x != std::floor(x) || x < 1.0) {
                throw std::invalid_argument("sweep: ports sweep needs integer from >= 1 and integer step");
            }
        }
    }
}

std::vector<double> ExperimentConfig::omega_sq_for(int n) const {
    if (omega_sq.size() == 1) return std::vector<double>(static_cast<std::size_t>(n), omega_sq.front());
    if (omega_sq.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("omega_sq: expected 1 or " + std::to_string(n) + " values, got " +
                                    std::to_string(omega_sq.size()));
    }
    return omega_sq;
}

void ExperimentConfig::validate() const {
    if (ports < 1) throw std::invalid_argument("L must be a positive integer");
    if (branches < 1) throw std::invalid_argument("M must be a positive integer");
    if (ports % branches != 0) {
        throw std::invalid_argument("M=" + std::to_string(branches) + " does not divide L=" + std::to_string(ports));
    }
    if (!(size > 0.0)) throw std::invalid_argument("W must be positive");
    if (m < 1) throw std::invalid_argument("m must be a positive integer");
    for (double w : omega_sq) {
        if (!(w > 0.0)) throw std::invalid_argument("omega_sq values must be positive");
    }
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (mrc_antennas < 1) throw std::invalid_argument("mrc_antennas must be >= 1");
    if (!(beta_scale > 0.0)) throw std::invalid_argument("beta_scale must be positive");
    if (cross_max_ports < 1) throw std::invalid_argument("cross_max_ports must be >= 1");
    for (int order : cross_orders) {
        if (order < 1) throw std::invalid_argument("cross_orders entries must be >= 1");
    }
    sweep.validate();
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value, const std::string& where) {
    std::string canonical = key;
    std::replace(canonical.begin(), canonical.end(), '-', '_');
    const auto& table = setters();
    const auto it = table.find(canonical);
    if (it == table.end()) throw ConfigError(where + ": unknown key '" + key + "'");
    it->second(cfg, where, trim(value));
}

void parse_config(std::istream& in, const std::string& source, ExperimentConfig& cfg) {
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = source + ":" + std::to_string(number);
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(where + ": missing key before '='");
        apply_setting(cfg, key, line.substr(eq + 1), where);
    }
}

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open configuration file");
    parse_config(in, path, cfg);
}

std::string to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::snr_db: return "snr_db";
        case SweepVariable::ports: return "ports";
        case SweepVariable::threshold_db: return "threshold_db";
        case SweepVariable::antenna_size: return "antenna_size";
    }
    return "?";
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::fas: return "fas";
        case Scheme::mgc: return "mgc";
        case Scheme::mrc: return "mrc";
        case Scheme::approx: return "approx";
        case Scheme::asymptotic: return "asymptotic";
        case Scheme::exact: return "exact";
        case Scheme::mc: return "mc";
    }
    return "?";
}

std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out = {
        {"L", std::to_string(cfg.ports)},
        {"M", std::to_string(cfg.branches)},
        {"W", fmt(cfg.size)},
        {"m", std::to_string(cfg.m)},
        {"omega_sq", join(cfg.omega_sq, fmt)},
        {"snr_db", fmt(cfg.snr_db)},
        {"gamma_th_db", fmt(cfg.gamma_th_db)},
        {"seed", std::to_string(cfg.seed)},
        {"trials", std::to_string(cfg.trials)},
        {"sweep", to_string(cfg.sweep.variable)},
        {"from", fmt(cfg.sweep.from)},
        {"to", fmt(cfg.sweep.to)},
        {"step", fmt(cfg.sweep.step)},
        {"schemes", join(cfg.sweep.schemes, [](Scheme s) { return to_string(s); })},
        {"mrc_antennas", std::to_string(cfg.mrc_antennas)},
    };
    if (cfg.beta_scale != 1.0) out.emplace_back("beta_scale", fmt(cfg.beta_scale));
    return out;
}

}  // namespace fasop
