// SPDX-License-Identifier: Apache-2.0
//
// Numerically exact outage probability of a non-diversity FAS tube and the
// closed-form outage of MRC over independent antennas.

#pragma once

#include "fasop/channel_model.hpp"
#include "fasop/quadrature.hpp"

namespace fasop {

/// CDF of the best-port power gain of one tube, Pr{max_k |h_k|^2 < x}.
///
/// Conditions on the reference port's power t = |h_1|^2 (a Gamma(m, Omega_1^2/m)
/// variate) and integrates, over t in [0, x], its density times the product of
/// the other ports' conditional CDFs 1 - Q_m(sqrt(2 m mu^2 t / (Omega_1^2 (1 - mu^2))),
/// sqrt(2 m x / (Omega_k^2 (1 - mu^2)))). The product is accumulated in log space.
/// Throws std::domain_error if 1 - mu^2 < 1e-12 and QuadratureError if the
/// integral does not converge.
double branch_cdf(double x, const BranchChannel& branch, const QuadratureSpec& quad = {});

/// Outage probability Pr{snr_bar * max_k |h_k|^2 < gamma_th} of a non-diversity FAS.
double op_fas_exact(const BranchChannel& branch, const LinkBudget& link, const QuadratureSpec& quad = {});

/// Outage of N-antenna MRC with i.i.d. Nakagami-m branches: P(N m, m x / Omega^2).
double op_mrc(int antennas, int m, double omega_sq, const LinkBudget& link);

}  // namespace fasop
