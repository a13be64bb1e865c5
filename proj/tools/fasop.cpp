// SPDX-License-Identifier: Apache-2.0
//
// fasop: outage-probability sweeps, fitted Gamma shapes and validation runs
// for fluid-antenna receivers. Exit codes: 0 ok, 1 validation failure,
// 2 usage error.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "fasop/config.hpp"
#include "fasop/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

// Flag name -> config key. Every flag takes the same value syntax as the file.
const std::map<std::string, std::string> kOverrides = {
    {"seed", "seed"},       {"trials", "trials"},     {"out", "out"},           {"L", "L"},
    {"M", "M"},             {"W", "W"},               {"m", "m"},               {"snr-db", "snr_db"},
    {"gamma-th-db", "gamma_th_db"},                   {"omega-sq", "omega_sq"}, {"workers", "workers"},
    {"sweep", "sweep"},     {"from", "from"},         {"to", "to"},             {"step", "step"},
    {"schemes", "schemes"}, {"mrc-antennas", "mrc_antennas"},                   {"crossings", "crossings"},
    {"cross-orders", "cross_orders"},                 {"beta-scale", "beta_scale"},
};

struct Invocation {
    std::string config_path;
    std::map<std::string, std::string> values;
};

void add_common(CLI::App* cmd, Invocation& inv) {
    cmd->add_option("--config", inv.config_path, "key=value configuration file");
    for (const auto& [flag, key] : kOverrides) {
        cmd->add_option("--" + flag, inv.values[flag], "override '" + key + "'");
    }
}

fasop::ExperimentConfig build_config(const Invocation& inv, CLI::App* cmd) {
    fasop::ExperimentConfig cfg;
    if (!inv.config_path.empty()) fasop::load_config_file(inv.config_path, cfg);
    for (const auto& [flag, key] : kOverrides) {
        if (cmd->count("--" + flag) > 0) fasop::apply_setting(cfg, key, inv.values.at(flag), "--" + flag);
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        const std::string source = inv.config_path.empty() ? "flags" : inv.config_path;
        throw fasop::ConfigError(source + ": " + e.what());
    }
    return cfg;
}

int write_output(const std::string& path, const std::function<void(std::ostream&)>& emit) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write " << path << '\n';
        return kExitUsage;
    }
    emit(out);
    std::cout << "wrote " << path << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage probability of fluid antenna system receivers"};
    app.require_subcommand(1);

    Invocation sweep_inv, shapes_inv, validate_inv;
    auto* sweep = app.add_subcommand("sweep", "evaluate OP curves and write CSV");
    add_common(sweep, sweep_inv);
    auto* shapes = app.add_subcommand("shapes", "write fitted branch and MGC Gamma shapes as CSV");
    add_common(shapes, shapes_inv);
    auto* validate = app.add_subcommand("validate", "compare Monte Carlo, exact and approximate OP against gates");
    add_common(validate, validate_inv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sweep->parsed()) {
            const auto cfg = build_config(sweep_inv, sweep);
            const auto curve = fasop::run_sweep(cfg);
            return write_output(cfg.out, [&](std::ostream& os) { fasop::write_csv(curve, os); });
        }
        if (shapes->parsed()) {
            auto cfg = build_config(shapes_inv, shapes);
            if (shapes->count("--out") == 0 && cfg.out == fasop::ExperimentConfig{}.out) cfg.out = "shapes.csv";
            const auto rows = fasop::dump_shapes(cfg);
            return write_output(cfg.out, [&](std::ostream& os) { fasop::write_shapes_csv(rows, os); });
        }
        const auto cfg = build_config(validate_inv, validate);
        const auto report = fasop::validate(cfg);
        fasop::print_report(report, std::cout);
        return report.passed() ? kExitOk : kExitValidation;
    } catch (const fasop::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}
