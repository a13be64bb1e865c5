// SPDX-License-Identifier: Apache-2.0

#include "fasop/exact_op.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "fasop/specfun.hpp"

namespace fasop {

namespace {

constexpr double kMinDecorrelation = 1e-12;

struct PortGroup {
    double b;   // Marcum second argument for this Omega_k^2
    int count;  // ports sharing it
};

}  // namespace

double branch_cdf(double x, const BranchChannel& branch, const QuadratureSpec& quad) {
    branch.validate();
    quad.validate();
    if (!(x >= 0.0)) throw std::domain_error("branch_cdf: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;

    const int m = branch.m;
    const double omega1 = branch.omega_sq.front();
    if (branch.ports() == 1) return reg_lower_gamma(m, m * x / omega1);

    const double mu_sq = branch.mu * branch.mu;
    const double decorrelation = 1.0 - mu_sq;
    if (decorrelation < kMinDecorrelation) throw std::domain_error("branch_cdf: 1 - mu^2 below 1e-12");

    if (mu_sq == 0.0) {
        double log_p = 0.0;
        for (double w : branch.omega_sq) log_p += std::log(reg_lower_gamma(m, m * x / w));
        return std::exp(log_p);
    }

    std::map<double, int> by_power;
    for (std::size_t k = 1; k < branch.omega_sq.size(); ++k) ++by_power[branch.omega_sq[k]];
    std::vector<PortGroup> groups;
    for (const auto& [w, count] : by_power) groups.push_back({std::sqrt(2.0 * m * x / (w * decorrelation)), count});

    const double log_norm = m * std::log(m / omega1) - ln_gamma(m);
    const double noncentral = 2.0 * m * mu_sq / (omega1 * decorrelation);
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        double log_f = log_norm + (m - 1) * std::log(t) - m * t / omega1;
        const double a = std::sqrt(noncentral * t);
        for (const auto& g : groups) {
            const double cdf = marcum_q_complement(m, a, g.b);
            if (cdf <= 0.0) return 0.0;
            log_f += g.count * std::log(cdf);
        }
        return std::exp(log_f);
    };
    const auto result = integrate(integrand, 0.0, x, quad);
    return std::clamp(result.value, 0.0, 1.0);
}

double op_fas_exact(const BranchChannel& branch, const LinkBudget& link, const QuadratureSpec& quad) {
    link.validate();
    return branch_cdf(link.gain_threshold(), branch, quad);
}

double op_mrc(int antennas, int m, double omega_sq, const LinkBudget& link) {
    if (antennas < 1) throw std::domain_error("op_mrc: need at least one antenna");
    if (m < 1) throw std::domain_error("op_mrc: m must be a positive integer");
    if (!(omega_sq > 0.0)) throw std::domain_error("op_mrc: omega_sq must be positive");
    link.validate();
    return reg_lower_gamma(static_cast<double>(antennas) * m, m * link.gain_threshold() / omega_sq);
}

}  // namespace fasop
