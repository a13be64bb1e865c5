// SPDX-License-Identifier: Apache-2.0
//
// Fluid-antenna geometry, Nakagami-m fading profile and the spatially
// correlated port-gain generator used by the Monte Carlo estimators.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace fasop {

/// L ports spread over W wavelengths, split into M equal sub-FAS branches.
/// M = 1 is the non-diversity receiver.
struct FasGeometry {
    int ports = 1;
    double size = 1.0;
    int branches = 1;

    int ports_per_branch() const { return ports / branches; }
    double branch_size() const { return size / branches; }
    void validate() const;
};

/// Nakagami fading parameter per branch and average power Omega_k^2 per port.
struct FadingProfile {
    std::vector<int> m;
    std::vector<double> omega_sq;

    /// Same m on every branch, unit-free equal power on every port.
    static FadingProfile uniform(const FasGeometry& geom, int m, double omega_sq = 1.0);

    void validate(const FasGeometry& geom) const;
};

/// Average transmit SNR and outage threshold, both linear.
struct LinkBudget {
    double snr_bar = 1.0;
    double gamma_th = 1.0;

    /// gamma_th / snr_bar, the power-gain level below which the link is in outage.
    double gain_threshold() const { return gamma_th / snr_bar; }
    void validate() const;

    static LinkBudget from_db(double snr_db, double gamma_th_db);
};

double db_to_linear(double db);
double linear_to_db(double linear);

/// Common cross-port correlation coefficient mu within one FAS tube.
struct CorrelationProfile {
    double mu = 0.0;

    static CorrelationProfile from_mu_sq(double mu_sq);
    double mu_sq() const { return mu * mu; }
    void validate() const;
};

/// mu^2 averaged over all port pairs of an L-port tube of length W wavelengths.
double port_correlation(int ports, double size);

struct BranchView {
    int ports = 1;
    double size = 1.0;
    double mu_sq = 0.0;  ///< 0 for single-port branches
};

/// M identical branch descriptors: L/M ports over W/M wavelengths each.
std::vector<BranchView> branch_view(const FasGeometry& geom);

/// Everything needed to evaluate or simulate one FAS tube.
struct BranchChannel {
    int m = 1;
    std::vector<double> omega_sq;  ///< one entry per port; port 0 is the reference
    double mu = 0.0;

    int ports() const { return static_cast<int>(omega_sq.size()); }
    void validate() const;
};

/// Per-branch channels of a geometry, with correlation from branch_view.
std::vector<BranchChannel> branch_channels(const FasGeometry& geom, const FadingProfile& fading);

/// Same, but with explicit per-branch correlation in place of the geometric model.
std::vector<BranchChannel> branch_channels(const FasGeometry& geom, const FadingProfile& fading,
                                           std::span<const CorrelationProfile> corr);

/// Largest Nakagami m the sampler accepts (2m normals are kept on the stack).
inline constexpr int kMaxSampledM = 32;

using Rng = std::mt19937_64;

/// Independent engine for stream `stream` of a seeded experiment.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Draws correlated Nakagami-m port power gains for one tube.
///
/// A reference vector of 2m standard normals drives port 0 directly; every
/// other port mixes it as mu * g0 + sqrt(1 - mu^2) * e with fresh normals e.
/// Each |h_k|^2 = Omega_k^2 / (2m) * sum of its 2m squared components, so
/// marginals are Gamma(m, Omega_k^2 / m) and, conditioned on port 0, each
/// other port is a scaled noncentral chi-square with 2m degrees of freedom.
class PortGainSampler {
public:
    explicit PortGainSampler(const BranchChannel& branch);

    int ports() const { return static_cast<int>(scale_.size()); }

    /// Fills `gains` (size ports()) with one joint draw.
    void draw(Rng& rng, std::span<double> gains) const;

    /// max_k |h_k|^2 of one joint draw.
    double draw_max(Rng& rng) const;

    /// sum_k |h_k|^2 of one joint draw.
    double draw_sum(Rng& rng) const;

private:
    template <class Sink>
    void generate(Rng& rng, Sink&& sink) const;

    int components_;
    double mu_;
    double mix_;
    std::vector<double> scale_;
};

/// n joint draws, row-major (n rows of ports values).
std::vector<double> sample_port_gains(const BranchChannel& branch, Rng& rng, std::size_t n);

}  // namespace fasop
