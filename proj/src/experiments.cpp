// SPDX-License-Identifier: Apache-2.0

#include "fasop/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "fasop/montecarlo.hpp"
#include "fasop/specfun.hpp"

namespace fasop {

namespace {

// Tolerances for exact evaluations far below the default absolute floor.
constexpr QuadratureSpec kDeepQuadrature{1e-300, 1e-10, 400};

constexpr std::uint64_t kMinResolvedOutages = 10;

FadingProfile fading_for(const ExperimentConfig& cfg, const FasGeometry& geom) {
    return {std::vector<int>(static_cast<std::size_t>(geom.branches), cfg.m), cfg.omega_sq_for(geom.ports)};
}

McConfig mc_config(const ExperimentConfig& cfg) { return {cfg.trials, cfg.seed, cfg.workers}; }

// fit_mgc with every branch scale multiplied by `beta_scale` (1 in normal runs).
MgcFit fit_scaled(const FasGeometry& geom, const FadingProfile& fading, double beta_scale) {
    MgcFit fit = fit_mgc(geom, fading);
    if (beta_scale != 1.0) {
        for (auto& s : fit.branch_shapes) s.beta *= beta_scale;
        fit.combined = mgc_shape(fit.branch_shapes);
    }
    return fit;
}

std::vector<CorrelationProfile> geometric_correlation(const FasGeometry& geom) {
    std::vector<CorrelationProfile> out;
    for (const auto& view : branch_view(geom)) out.push_back(CorrelationProfile::from_mu_sq(view.mu_sq));
    return out;
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers) body(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

struct GridPoint {
    FasGeometry fas;
    FasGeometry mgc;
    LinkBudget link;
};

GridPoint make_point(const ExperimentConfig& cfg, double x) {
    GridPoint p{{cfg.ports, cfg.size, 1}, {cfg.ports, cfg.size, cfg.branches},
                LinkBudget::from_db(cfg.snr_db, cfg.gamma_th_db)};
    switch (cfg.sweep.variable) {
        case SweepVariable::snr_db: p.link.snr_bar = db_to_linear(x); break;
        case SweepVariable::threshold_db: p.link.gamma_th = db_to_linear(x); break;
        case SweepVariable::ports: {
            const int per = static_cast<int>(std::lround(x));
            p.fas.ports = per;
            p.mgc.ports = per * cfg.branches;
            break;
        }
        case SweepVariable::antenna_size:
            p.fas.size = x;
            p.mgc.size = x;
            break;
    }
    return p;
}

bool link_only_sweep(SweepVariable v) { return v == SweepVariable::snr_db || v == SweepVariable::threshold_db; }

struct Column {
    Scheme system;
    Scheme method;
    std::string name() const { return to_string(method) + "_" + to_string(system); }
};

std::vector<Column> columns_for(const SweepSpec& sweep) {
    std::vector<Scheme> systems;
    for (Scheme s : {Scheme::fas, Scheme::mgc, Scheme::mrc}) {
        if (sweep.has(s)) systems.push_back(s);
    }
    std::vector<Scheme> methods;
    for (Scheme s : {Scheme::exact, Scheme::approx, Scheme::asymptotic, Scheme::mc}) {
        if (sweep.has(s)) methods.push_back(s);
    }
    if (systems.empty()) systems = {Scheme::fas, Scheme::mgc};
    if (methods.empty()) methods = {Scheme::exact, Scheme::approx, Scheme::asymptotic, Scheme::mc};
    auto supported = [](Scheme system, Scheme method) {
        if (system == Scheme::mgc) return method != Scheme::exact;
        if (system == Scheme::mrc) return method == Scheme::exact || method == Scheme::mc;
        return true;
    };
    std::vector<Column> out;
    for (Scheme sys : systems) {
        for (Scheme meth : methods) {
            if (supported(sys, meth)) out.push_back({sys, meth});
        }
    }
    if (out.empty()) throw std::invalid_argument("sweep: no evaluable (system, method) pair in scheme set");
    return out;
}

double analytic_value(const ExperimentConfig& cfg, const Column& col, const GridPoint& p) {
    const FasGeometry& geom = col.system == Scheme::fas ? p.fas : p.mgc;
    switch (col.system) {
        case Scheme::mrc: return op_mrc(cfg.mrc_antennas, cfg.m, cfg.omega_sq.front(), p.link);
        case Scheme::fas:
            if (col.method == Scheme::exact) {
                return op_fas_exact(branch_channels(geom, fading_for(cfg, geom)).front(), p.link);
            }
            [[fallthrough]];
        default: {
            const auto fit = fit_scaled(geom, fading_for(cfg, geom), cfg.beta_scale);
            if (col.method == Scheme::approx) return op_mgc_approx(fit.combined, p.link);
            // the power law passes 1 at low SNR; curves hold probabilities
            return std::min(op_mgc_asymptotic(fit.combined, p.link), 1.0);
        }
    }
}

std::vector<OpEstimate> mc_curve(const ExperimentConfig& cfg, Scheme system, const FasGeometry& geom,
                                 std::span<const LinkBudget> links) {
    const McConfig mc = mc_config(cfg);
    if (system == Scheme::mrc) return estimate_op_mrc_curve(cfg.mrc_antennas, cfg.m, cfg.omega_sq.front(), links, mc);
    const auto corr = geometric_correlation(geom);
    return estimate_op_mgc_curve(geom, fading_for(cfg, geom), corr, links, mc);
}

std::string fmt_opt(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); }

}  // namespace

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

OpCurve run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto columns = columns_for(cfg.sweep);
    OpCurve curve;
    curve.x_name = to_string(cfg.sweep.variable);
    curve.x = cfg.sweep.grid();
    curve.metadata = describe(cfg);
    curve.metadata.insert(curve.metadata.begin(), {"x", curve.x_name});
    if (cfg.sweep.variable == SweepVariable::ports) {
        curve.metadata.emplace_back("x_fas", "L");
        curve.metadata.emplace_back("x_mgc", "L/M (total L = x*M)");
    }

    std::vector<GridPoint> points;
    for (double x : curve.x) {
        points.push_back(make_point(cfg, x));
        points.back().fas.validate();
        points.back().mgc.validate();
    }
    std::vector<LinkBudget> links;
    for (const auto& p : points) links.push_back(p.link);

    for (const auto& col : columns) {
        OpSeries series{col.name(), std::vector<double>(points.size())};
        if (col.method != Scheme::mc) {
            parallel_for(points.size(), cfg.workers,
                         [&](std::size_t i) { series.op[i] = analytic_value(cfg, col, points[i]); });
        } else if (link_only_sweep(cfg.sweep.variable)) {
            const auto& geom = col.system == Scheme::fas ? points.front().fas : points.front().mgc;
            const auto est = mc_curve(cfg, col.system, geom, links);
            for (std::size_t i = 0; i < est.size(); ++i) series.op[i] = est[i].op;
        } else {
            for (std::size_t i = 0; i < points.size(); ++i) {
                const auto& geom = col.system == Scheme::fas ? points[i].fas : points[i].mgc;
                series.op[i] = mc_curve(cfg, col.system, geom, std::span<const LinkBudget>(&links[i], 1)).front().op;
            }
        }
        curve.series.push_back(std::move(series));
    }
    return curve;
}

void write_csv(const OpCurve& curve, std::ostream& out) {
    for (const auto& [key, value] : curve.metadata) out << "# " << key << '=' << value << '\n';
    out << 'x';
    for (const auto& s : curve.series) out << ',' << s.name;
    out << '\n';
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        out << format_real(curve.x[i]);
        for (const auto& s : curve.series) out << ',' << format_real(s.op[i]);
        out << '\n';
    }
}

std::vector<ShapeRow> dump_shapes(const ExperimentConfig& cfg) {
    cfg.validate();
    const FasGeometry geom{cfg.ports, cfg.size, cfg.branches};
    const auto fit = fit_scaled(geom, fading_for(cfg, geom), cfg.beta_scale);
    std::vector<ShapeRow> rows;
    for (std::size_t j = 0; j < fit.views.size(); ++j) {
        rows.push_back({"branch" + std::to_string(j + 1), fit.views[j].ports, fit.views[j].size, fit.views[j].mu_sq,
                        fit.coeffs[j], fit.branch_shapes[j], std::nullopt});
    }
    rows.push_back({"mgc", geom.ports, geom.size, std::nullopt, std::nullopt, fit.combined,
                    asymptote_summary(fit.combined, db_to_linear(cfg.gamma_th_db))});
    return rows;
}

void write_shapes_csv(const std::vector<ShapeRow>& rows, std::ostream& out) {
    out << "item,ports,size,mu_sq,a0,log_a0,b0,alpha,beta,G_d,G_c,log_G_c\n";
    for (const auto& r : rows) {
        out << r.item << ',' << r.ports << ',' << format_real(r.size) << ',';
        if (r.mu_sq) out << format_real(*r.mu_sq);
        out << ',';
        if (r.coeff) {
            out << format_real(r.coeff->linear()) << ',' << format_real(r.coeff->log_linear) << ','
                << format_real(r.coeff->exponent);
        } else {
            out << ",,";
        }
        out << ',' << format_real(r.shape.alpha) << ',' << format_real(r.shape.beta) << ',';
        if (r.summary) {
            out << format_real(r.summary->diversity_order) << ',' << format_real(r.summary->array_coeff()) << ','
                << format_real(r.summary->log_array_coeff);
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

std::optional<int> crossing_nondiversity(const CrossingQuery& q) {
    const double target = op_mrc(q.mrc_antennas, q.m, q.omega_sq, q.link);
    for (int ports = 1; ports <= q.max_ports; ++ports) {
        const FasGeometry geom{ports, q.size, 1};
        const auto branch = branch_channels(geom, FadingProfile::uniform(geom, q.m, q.omega_sq)).front();
        if (op_fas_exact(branch, q.link, kDeepQuadrature) < target) return ports;
    }
    return std::nullopt;
}

std::optional<int> crossing_mgc(const CrossingQuery& q, int branches) {
    const double target = op_mrc(q.mrc_antennas, q.m, q.omega_sq, q.link);
    for (int per = 1; per <= q.max_ports; ++per) {
        const FasGeometry geom{per * branches, q.size, branches};
        const auto fit = fit_mgc(geom, FadingProfile::uniform(geom, q.m, q.omega_sq));
        if (op_mgc_approx(fit.combined, q.link) < target) return per;
    }
    return std::nullopt;
}

bool ValidationReport::passed() const {
    return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.pass; });
}

ValidationReport validate(const ExperimentConfig& cfg) {
    cfg.validate();
    ValidationReport report;

    std::vector<LinkBudget> links;
    if (link_only_sweep(cfg.sweep.variable)) {
        for (double x : cfg.sweep.grid()) links.push_back(make_point(cfg, x).link);
    } else {
        links.push_back(LinkBudget::from_db(cfg.snr_db, cfg.gamma_th_db));
        report.notes.push_back("sweep variable is not a link quantity; gates use the single configured link");
    }

    // exact vs MC, non-diversity
    {
        const FasGeometry geom{cfg.ports, cfg.size, 1};
        const auto branch = branch_channels(geom, fading_for(cfg, geom)).front();
        const auto est = mc_curve(cfg, Scheme::fas, geom, links);
        Gate gate{"exact_vs_mc", 0.0, cfg.ci_factor, true, ""};
        int resolved = 0;
        for (std::size_t i = 0; i < links.size(); ++i) {
            if (est[i].outages < kMinResolvedOutages || est[i].outages == est[i].trials) continue;
            ++resolved;
            const double exact = op_fas_exact(branch, links[i], kDeepQuadrature);
            gate.measured = std::max(gate.measured, std::fabs(exact - est[i].op) / est[i].ci_half_width);
        }
        gate.pass = resolved > 0 && gate.measured <= gate.threshold;
        gate.detail = "L=" + std::to_string(cfg.ports) + ", max |exact - mc| in CI half-widths over " +
                      std::to_string(resolved) + " resolved points";
        report.gates.push_back(gate);
    }

    const FasGeometry mgc_geom{cfg.ports, cfg.size, cfg.branches};
    const auto mgc_fading = fading_for(cfg, mgc_geom);
    const auto fit = fit_scaled(mgc_geom, mgc_fading, cfg.beta_scale);

    // approximation vs MC, MGC
    {
        const auto est = mc_curve(cfg, Scheme::mgc, mgc_geom, links);
        Gate gate{"approx_vs_mc", 0.0, cfg.approx_rel_tol, true, ""};
        int in_range = 0;
        for (std::size_t i = 0; i < links.size(); ++i) {
            if (est[i].op < cfg.approx_min_op || est[i].op > cfg.approx_max_op) continue;
            ++in_range;
            const double approx = op_mgc_approx(fit.combined, links[i]);
            gate.measured = std::max(gate.measured, std::fabs(approx - est[i].op) / est[i].op);
        }
        gate.pass = in_range > 0 && gate.measured <= gate.threshold;
        gate.detail = "M=" + std::to_string(cfg.branches) + ", max relative error over " + std::to_string(in_range) +
                      " points with mc in [" + format_real(cfg.approx_min_op) + ", " +
                      format_real(cfg.approx_max_op) + "]";
        report.gates.push_back(gate);
    }

    // fitted branch CDF vs quadrature deep in the tail, where the two must agree
    {
        Gate gate{"branch_tail_match", 0.0, cfg.tail_rel_tol, true, ""};
        const auto branches = branch_channels(mgc_geom, mgc_fading);
        int checked = 0;
        for (std::size_t j = 0; j < branches.size(); ++j) {
            const auto& b = branches[j];
            const double min_power = *std::min_element(b.omega_sq.begin(), b.omega_sq.end());
            const double x = 1e-4 * min_power / b.m * (1.0 - b.mu * b.mu) / b.ports();
            const double exact = branch_cdf(x, b, kDeepQuadrature);
            if (exact < 1e-290) {
                report.notes.push_back("branch " + std::to_string(j + 1) + ": tail CDF underflows, not checked");
                continue;
            }
            ++checked;
            const auto& s = fit.branch_shapes[j];
            const double fitted = reg_lower_gamma(s.alpha, x / s.beta);
            gate.measured = std::max(gate.measured, std::fabs(fitted / exact - 1.0));
        }
        gate.pass = gate.measured <= gate.threshold;
        gate.detail = std::to_string(checked) + " branches, max |fitted/exact - 1| at x = 1e-4 scale";
        report.gates.push_back(gate);
    }

    // the power-law asymptote bounds the approximation from above
    {
        Gate gate{"asymptote_bound", 1.0, 1.0, true, "min asymptotic/approx over the link grid"};
        for (const auto& link : links) {
            const double approx = op_mgc_approx(fit.combined, link);
            const double asym = op_mgc_asymptotic(fit.combined, link);
            if (approx > 0.0) gate.measured = std::min(gate.measured, asym / approx);
        }
        gate.pass = gate.measured >= gate.threshold;
        report.gates.push_back(gate);
    }

    if (cfg.crossings) {
        const CrossingQuery q{cfg.size, cfg.m, cfg.omega_sq.front(), LinkBudget::from_db(cfg.snr_db, cfg.gamma_th_db),
                              cfg.mrc_antennas, cfg.cross_max_ports};
        const auto fas = crossing_nondiversity(q);
        report.notes.push_back("crossing vs " + std::to_string(cfg.mrc_antennas) +
                               "-antenna MRC: non-diversity L = " + fmt_opt(fas));
        if (cfg.expect_cross_fas) {
            const double got = fas ? *fas : std::numeric_limits<double>::infinity();
            const double err = std::fabs(got - *cfg.expect_cross_fas) / *cfg.expect_cross_fas;
            report.gates.push_back({"crossing_fas", err, cfg.cross_rel_tol, err <= cfg.cross_rel_tol,
                                    "found " + fmt_opt(fas) + ", expected " + format_real(*cfg.expect_cross_fas)});
        }
        auto orders = cfg.cross_orders;
        if (orders.empty() && cfg.branches > 1) orders.push_back(cfg.branches);
        for (std::size_t i = 0; i < orders.size(); ++i) {
            const auto mgc = crossing_mgc(q, orders[i]);
            report.notes.push_back("crossing vs " + std::to_string(cfg.mrc_antennas) + "-antenna MRC: " +
                                   std::to_string(orders[i]) + "-order MGC L/M = " + fmt_opt(mgc));
            if (i < cfg.expect_cross_mgc.size()) {
                const double want = cfg.expect_cross_mgc[i];
                const double got = mgc ? *mgc : std::numeric_limits<double>::infinity();
                const double err = std::fabs(got - want) / want;
                report.gates.push_back({"crossing_mgc_M" + std::to_string(orders[i]), err, cfg.cross_rel_tol,
                                        err <= cfg.cross_rel_tol,
                                        "found " + fmt_opt(mgc) + ", expected " + format_real(want)});
            }
        }
    }
    return report;
}

void print_report(const ValidationReport& report, std::ostream& out) {
    for (const auto& g : report.gates) {
        out << (g.pass ? "PASS " : "FAIL ") << g.name << " measured=" << format_real(g.measured)
            << " threshold=" << format_real(g.threshold) << "  " << g.detail << '\n';
    }
    for (const auto& n : report.notes) out << "note: " << n << '\n';
    out << (report.passed() ? "validation passed" : "validation FAILED") << '\n';
}

}  // namespace fasop
