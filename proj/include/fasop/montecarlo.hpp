// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo outage estimators for non-diversity FAS, MGC-FAS and MRC.
//
// Trials are split into fixed-size chunks; chunk c draws from
// make_stream(seed, c). Results therefore depend on (seed, trials, chunk)
// only, never on how many workers share the chunks.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fasop/channel_model.hpp"

namespace fasop {

struct McConfig {
    std::uint64_t trials = 10'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;            ///< 0: one per hardware thread
    std::uint64_t chunk = 1u << 16;  ///< trials per RNG stream

    void validate() const;
};

/// Outage frequency with a 95% normal-approximation confidence half-width.
struct OpEstimate {
    double op = 0.0;
    double ci_half_width = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t outages = 0;

    static OpEstimate from_counts(std::uint64_t outages, std::uint64_t trials, std::uint64_t seed);
};

/// Non-diversity FAS; geometry must have M = 1.
OpEstimate estimate_op_fas(const FasGeometry& geom, const FadingProfile& fading, const CorrelationProfile& corr,
                           const LinkBudget& link, const McConfig& cfg);

/// MGC-FAS: sum over independent branches of each branch's best port.
OpEstimate estimate_op_mgc(const FasGeometry& geom, const FadingProfile& fading,
                           std::span<const CorrelationProfile> corr, const LinkBudget& link, const McConfig& cfg);

/// MRC over N i.i.d. Nakagami-m antennas.
OpEstimate estimate_op_mrc(int antennas, int m, double omega_sq, const LinkBudget& link, const McConfig& cfg);

/// Common-random-number curves: one sample set, every link budget evaluated on it.
std::vector<OpEstimate> estimate_op_fas_curve(const FasGeometry& geom, const FadingProfile& fading,
                                              const CorrelationProfile& corr, std::span<const LinkBudget> links,
                                              const McConfig& cfg);
std::vector<OpEstimate> estimate_op_mgc_curve(const FasGeometry& geom, const FadingProfile& fading,
                                              std::span<const CorrelationProfile> corr,
                                              std::span<const LinkBudget> links, const McConfig& cfg);
std::vector<OpEstimate> estimate_op_mrc_curve(int antennas, int m, double omega_sq, std::span<const LinkBudget> links,
                                              const McConfig& cfg);

}  // namespace fasop
