// SPDX-License-Identifier: Apache-2.0
//
// Gamma approximation of branch and MGC-FAS gain distributions by matching
// small-argument asymptotes, with the resulting closed-form outage,
// high-SNR asymptote, diversity order and array gain.
//
// Stage one fits each branch CDF F(x) ~ a0 x^b0 with a Gamma(alpha, beta) CDF
// whose own asymptote is x^alpha / (beta^alpha alpha Gamma(alpha)). Stage two
// fits the sum of branch gains: independent Gamma summands have a sum density
// ~ x^(sum alpha - 1) / (Gamma(sum alpha) prod beta^alpha), so the matched
// sum is Gamma(sum alpha, (prod beta_j^alpha_j)^(1 / sum alpha)).

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "fasop/channel_model.hpp"

namespace fasop {

/// F(x) ~ linear * x^exponent as x -> 0. The linear coefficient is held as
/// its logarithm; for long branches it leaves double range.
struct AsymptoteCoeff {
    double log_linear = 0.0;
    double exponent = 1.0;

    double linear() const { return std::exp(log_linear); }
    void validate() const;
};

struct GammaShape {
    double alpha = 1.0;  ///< shape
    double beta = 1.0;   ///< scale

    void validate() const;
};

/// OP ~ array_coeff * snr_bar^(-diversity_order).
struct AsymptoteSummary {
    double diversity_order = 0.0;
    double log_array_coeff = 0.0;

    double array_coeff() const { return std::exp(log_array_coeff); }
};

/// Small-x asymptote of the branch CDF:
/// a0 = m^(m-1) / (Gamma(m) Omega_1^(2m) (m!)^(n-1)) * prod_{k>=2} (m / (Omega_k^2 (1 - mu^2)))^m,
/// b0 = m n, for an n-port branch.
AsymptoteCoeff branch_asymptote(const BranchChannel& branch);

/// alpha = b0, beta = (1 / (Gamma(alpha) a0 alpha))^(1 / alpha).
GammaShape branch_shape(const AsymptoteCoeff& coeff);

/// Shape of the MGC sum of independent branch gains.
GammaShape mgc_shape(std::span<const GammaShape> branches);

/// P(alpha, gamma_th / (beta snr_bar)).
double op_mgc_approx(const GammaShape& shape, const LinkBudget& link);

/// (gamma_th / (beta snr_bar))^alpha / (alpha Gamma(alpha)); never below op_mgc_approx.
double op_mgc_asymptotic(const GammaShape& shape, const LinkBudget& link);

AsymptoteSummary asymptote_summary(const GammaShape& shape, double gamma_th);

/// Per-branch coefficients and shapes plus the combined MGC shape.
struct MgcFit {
    std::vector<BranchView> views;
    std::vector<AsymptoteCoeff> coeffs;
    std::vector<GammaShape> branch_shapes;
    GammaShape combined;
};

/// branch_view -> branch_asymptote -> branch_shape -> mgc_shape.
MgcFit fit_mgc(const FasGeometry& geom, const FadingProfile& fading);

}  // namespace fasop
