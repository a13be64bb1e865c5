// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: a flat key=value text format (one key per line,
// '#' starts a comment) whose keys double as command-line overrides.

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fasop {

/// Malformed configuration text or flag value; the message names the source line.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SweepVariable { snr_db, ports, threshold_db, antenna_size };

enum class Scheme { fas, mgc, mrc, approx, asymptotic, exact, mc };

struct SweepSpec {
    SweepVariable variable = SweepVariable::snr_db;
    double from = 0.0;
    double to = 30.0;
    double step = 1.0;
    std::vector<Scheme> schemes{Scheme::fas, Scheme::mgc, Scheme::exact, Scheme::approx, Scheme::asymptotic, Scheme::mc};

    std::vector<double> grid() const;
    bool has(Scheme s) const;
    void validate() const;
};

struct ExperimentConfig {
    int ports = 10;
    int branches = 1;
    double size = 2.0;
    int m = 1;
    std::vector<double> omega_sq{1.0};  ///< one value (all ports) or one per port
    double snr_db = 10.0;
    double gamma_th_db = 5.0;

    std::uint64_t seed = 1;
    std::uint64_t trials = 10'000'000;
    unsigned workers = 0;

    SweepSpec sweep;
    int mrc_antennas = 9;
    std::string out = "op_curve.csv";

    // validate
    double ci_factor = 3.0;
    double approx_rel_tol = 0.15;
    double approx_min_op = 1e-4;
    double approx_max_op = 0.9;
    double tail_rel_tol = 0.01;
    bool crossings = false;
    std::vector<int> cross_orders;
    int cross_max_ports = 400;
    std::optional<double> expect_cross_fas;
    std::vector<double> expect_cross_mgc;
    double cross_rel_tol = 0.15;
    double beta_scale = 1.0;  ///< test hook: multiplies every fitted MGC scale

    /// Per-port powers for an L-port array (expands a single value).
    std::vector<double> omega_sq_for(int ports) const;
    void validate() const;
};

/// Sets one key; `where` prefixes error messages (e.g. "run.cfg:12" or "--L").
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value, const std::string& where);

/// Parses key=value lines on top of `cfg`.
void parse_config(std::istream& in, const std::string& source, ExperimentConfig& cfg);
void load_config_file(const std::string& path, ExperimentConfig& cfg);

/// Flat key=value echo of every setting, in a fixed order.
std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& cfg);

std::string to_string(SweepVariable v);
std::string to_string(Scheme s);

}  // namespace fasop
