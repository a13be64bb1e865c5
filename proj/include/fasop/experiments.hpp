// SPDX-License-Identifier: Apache-2.0
//
// Sweep, shape-dump and validation runners behind the command-line tool.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fasop/config.hpp"
#include "fasop/exact_op.hpp"
#include "fasop/gamma_matching.hpp"

namespace fasop {

/// Floats in every CSV are printed with 10 significant digits.
std::string format_real(double v);

struct OpSeries {
    std::string name;  ///< e.g. "exact_fas", "approx_mgc", "mc_mrc"
    std::vector<double> op;
};

struct OpCurve {
    std::string x_name;
    std::vector<double> x;
    std::vector<OpSeries> series;
    std::vector<std::pair<std::string, std::string>> metadata;
};

/// Evaluates every requested (system, method) column on the sweep grid.
///
/// Systems are fas / mgc / mrc and methods exact / approx / asymptotic / mc;
/// a missing half of the pair defaults to fas+mgc or to every method.
/// On a "ports" sweep x is L for the non-diversity columns and L/M for the
/// MGC columns (total ports x * M).
OpCurve run_sweep(const ExperimentConfig& cfg);

/// Metadata as leading "# key=value" lines, then the header and one row per x.
void write_csv(const OpCurve& curve, std::ostream& out);

struct ShapeRow {
    std::string item;  ///< "branch<j>" or "mgc"
    int ports = 0;
    double size = 0.0;
    std::optional<double> mu_sq;
    std::optional<AsymptoteCoeff> coeff;
    GammaShape shape;
    std::optional<AsymptoteSummary> summary;
};

std::vector<ShapeRow> dump_shapes(const ExperimentConfig& cfg);
void write_shapes_csv(const std::vector<ShapeRow>& rows, std::ostream& out);

/// Smallest port count at which a FAS beats N-antenna MRC at a fixed link.
struct CrossingQuery {
    double size = 1.0;
    int m = 1;
    double omega_sq = 1.0;
    LinkBudget link;
    int mrc_antennas = 9;
    int max_ports = 400;
};

/// Smallest total L with exact non-diversity outage below MRC.
std::optional<int> crossing_nondiversity(const CrossingQuery& q);

/// Smallest L/M with the Gamma-matched M-branch MGC outage below MRC.
std::optional<int> crossing_mgc(const CrossingQuery& q, int branches);

struct Gate {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<Gate> gates;
    std::vector<std::string> notes;

    bool passed() const;
};

/// MC vs exact vs approximation gates; see README for the list.
ValidationReport validate(const ExperimentConfig& cfg);
void print_report(const ValidationReport& report, std::ostream& out);

}  // namespace fasop
