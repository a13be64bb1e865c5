// SPDX-License-Identifier: Apache-2.0

#include "fasop/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace fasop {

namespace {

void check_links(std::span<const LinkBudget> links) {
    if (links.empty()) throw std::invalid_argument("montecarlo: need at least one link budget");
    for (const auto& l : links) {
        if (!(l.snr_bar > 0.0) || !std::isfinite(l.snr_bar)) {
            throw std::invalid_argument("montecarlo: snr_bar must be positive");
        }
        if (!(l.gamma_th >= 0.0)) throw std::invalid_argument("montecarlo: gamma_th must be non-negative");
    }
}

// Runs `draw` (Rng& -> combined gain) cfg.trials times and counts, per link
// budget, the trials with snr_bar * gain < gamma_th.
template <class Draw>
std::vector<OpEstimate> run_trials(const Draw& draw, std::span<const LinkBudget> links, const McConfig& cfg) {
    cfg.validate();
    check_links(links);
    const std::uint64_t chunks = (cfg.trials + cfg.chunk - 1) / cfg.chunk;
    unsigned workers = cfg.workers != 0 ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

    std::atomic<std::uint64_t> next{0};
    std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(links.size(), 0));
    auto work = [&](unsigned w) {
        auto& mine = counts[w];
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            Rng rng = make_stream(cfg.seed, c);
            const std::uint64_t n = std::min(cfg.chunk, cfg.trials - c * cfg.chunk);
            for (std::uint64_t i = 0; i < n; ++i) {
                const double gain = draw(rng);
                for (std::size_t j = 0; j < links.size(); ++j) {
                    if (links[j].snr_bar * gain < links[j].gamma_th) ++mine[j];
                }
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    std::vector<OpEstimate> out;
    out.reserve(links.size());
    for (std::size_t j = 0; j < links.size(); ++j) {
        std::uint64_t total = 0;
        for (const auto& c : counts) total += c[j];
        out.push_back(OpEstimate::from_counts(total, cfg.trials, cfg.seed));
    }
    return out;
}

std::vector<PortGainSampler> make_samplers(const FasGeometry& geom, const FadingProfile& fading,
                                           std::span<const CorrelationProfile> corr) {
    std::vector<PortGainSampler> samplers;
    for (const auto& branch : branch_channels(geom, fading, corr)) samplers.emplace_back(branch);
    return samplers;
}

}  // namespace

void McConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("montecarlo: trials must be >= 1");
    if (chunk < 1) throw std::invalid_argument("montecarlo: chunk must be >= 1");
}

OpEstimate OpEstimate::from_counts(std::uint64_t outages, std::uint64_t trials, std::uint64_t seed) {
    const double p = static_cast<double>(outages) / static_cast<double>(trials);
    return {p, 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials, seed, outages};
}

std::vector<OpEstimate> estimate_op_mgc_curve(const FasGeometry& geom, const FadingProfile& fading,
                                              std::span<const CorrelationProfile> corr,
                                              std::span<const LinkBudget> links, const McConfig& cfg) {
    const auto samplers = make_samplers(geom, fading, corr);
    auto draw = [&samplers](Rng& rng) {
        double sum = 0.0;
        for (const auto& s : samplers) sum += s.draw_max(rng);
        return sum;
    };
    return run_trials(draw, links, cfg);
}

std::vector<OpEstimate> estimate_op_fas_curve(const FasGeometry& geom, const FadingProfile& fading,
                                              const CorrelationProfile& corr, std::span<const LinkBudget> links,
                                              const McConfig& cfg) {
    if (geom.branches != 1) throw std::invalid_argument("estimate_op_fas: geometry must have M = 1");
    return estimate_op_mgc_curve(geom, fading, std::span<const CorrelationProfile>(&corr, 1), links, cfg);
}

std::vector<OpEstimate> estimate_op_mrc_curve(int antennas, int m, double omega_sq, std::span<const LinkBudget> links,
                                              const McConfig& cfg) {
    if (antennas < 1) throw std::invalid_argument("estimate_op_mrc: need at least one antenna");
    const PortGainSampler sampler(BranchChannel{m, std::vector<double>(static_cast<std::size_t>(antennas), omega_sq), 0.0});
    auto draw = [&sampler](Rng& rng) { return sampler.draw_sum(rng); };
    return run_trials(draw, links, cfg);
}

OpEstimate estimate_op_fas(const FasGeometry& geom, const FadingProfile& fading, const CorrelationProfile& corr,
                           const LinkBudget& link, const McConfig& cfg) {
    return estimate_op_fas_curve(geom, fading, corr, std::span<const LinkBudget>(&link, 1), cfg).front();
}

OpEstimate estimate_op_mgc(const FasGeometry& geom, const FadingProfile& fading,
                           std::span<const CorrelationProfile> corr, const LinkBudget& link, const McConfig& cfg) {
    return estimate_op_mgc_curve(geom, fading, corr, std::span<const LinkBudget>(&link, 1), cfg).front();
}

OpEstimate estimate_op_mrc(int antennas, int m, double omega_sq, const LinkBudget& link, const McConfig& cfg) {
    return estimate_op_mrc_curve(antennas, m, omega_sq, std::span<const LinkBudget>(&link, 1), cfg).front();
}

}  // namespace fasop
