// SPDX-License-Identifier: Apache-2.0

#include "fasop/gamma_matching.hpp"

#include <stdexcept>

#include "fasop/specfun.hpp"

namespace fasop {

void AsymptoteCoeff::validate() const {
    if (!std::isfinite(log_linear)) throw std::domain_error("asymptote: linear coefficient must be finite");
    if (!(exponent > 0.0) || !std::isfinite(exponent)) throw std::domain_error("asymptote: exponent must be positive");
}

void GammaShape::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::domain_error("gamma shape: alpha must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::domain_error("gamma shape: beta must be positive");
}

AsymptoteCoeff branch_asymptote(const BranchChannel& branch) {
    branch.validate();
    const double m = branch.m;
    const int n = branch.ports();
    const double decorrelation = 1.0 - branch.mu * branch.mu;
    double log_a0 = (m - 1.0) * std::log(m) - ln_gamma(m) - m * std::log(branch.omega_sq.front()) -
                    (n - 1) * ln_gamma(m + 1.0);
    for (int k = 1; k < n; ++k) {
        log_a0 += m * std::log(m / (branch.omega_sq[static_cast<std::size_t>(k)] * decorrelation));
    }
    return {log_a0, m * n};
}

GammaShape branch_shape(const AsymptoteCoeff& coeff) {
    coeff.validate();
    const double alpha = coeff.exponent;
    const double log_beta = -(ln_gamma(alpha) + coeff.log_linear + std::log(alpha)) / alpha;
    GammaShape shape{alpha, std::exp(log_beta)};
    shape.validate();
    return shape;
}

GammaShape mgc_shape(std::span<const GammaShape> branches) {
    if (branches.empty()) throw std::invalid_argument("mgc_shape: need at least one branch");
    double alpha = 0.0;
    double log_scale = 0.0;
    for (const auto& b : branches) {
        b.validate();
        alpha += b.alpha;
        log_scale += b.alpha * std::log(b.beta);
    }
    return {alpha, std::exp(log_scale / alpha)};
}

double op_mgc_approx(const GammaShape& shape, const LinkBudget& link) {
    shape.validate();
    link.validate();
    return reg_lower_gamma(shape.alpha, link.gain_threshold() / shape.beta);
}

double op_mgc_asymptotic(const GammaShape& shape, const LinkBudget& link) {
    shape.validate();
    link.validate();
    const double x = link.gain_threshold() / shape.beta;
    return std::exp(shape.alpha * std::log(x) - std::log(shape.alpha) - ln_gamma(shape.alpha));
}

AsymptoteSummary asymptote_summary(const GammaShape& shape, double gamma_th) {
    shape.validate();
    if (!(gamma_th > 0.0)) throw std::domain_error("asymptote_summary: gamma_th must be positive");
    return {shape.alpha,
            shape.alpha * std::log(gamma_th / shape.beta) - std::log(shape.alpha) - ln_gamma(shape.alpha)};
}

MgcFit fit_mgc(const FasGeometry& geom, const FadingProfile& fading) {
    MgcFit fit;
    fit.views = branch_view(geom);
    for (const auto& branch : branch_channels(geom, fading)) {
        fit.coeffs.push_back(branch_asymptote(branch));
        fit.branch_shapes.push_back(branch_shape(fit.coeffs.back()));
    }
    fit.combined = mgc_shape(fit.branch_shapes);
    return fit;
}

}  // namespace fasop
