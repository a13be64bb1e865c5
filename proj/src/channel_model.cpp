// SPDX-License-Identifier: Apache-2.0

#include "fasop/channel_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/random/normal_distribution.hpp>

#include "fasop/specfun.hpp"

namespace fasop {

void FasGeometry::validate() const {
    if (ports < 1) throw std::invalid_argument("geometry: L must be a positive integer");
    if (branches < 1) throw std::invalid_argument("geometry: M must be a positive integer");
    if (ports % branches != 0) {
        throw std::invalid_argument("geometry: M=" + std::to_string(branches) +
                                    " does not divide L=" + std::to_string(ports));
    }
    if (!(size > 0.0) || !std::isfinite(size)) throw std::invalid_argument("geometry: W must be positive");
}

FadingProfile FadingProfile::uniform(const FasGeometry& geom, int m, double omega_sq) {
    return {std::vector<int>(static_cast<std::size_t>(geom.branches), m),
            std::vector<double>(static_cast<std::size_t>(geom.ports), omega_sq)};
}

void FadingProfile::validate(const FasGeometry& geom) const {
    if (m.size() != static_cast<std::size_t>(geom.branches)) {
        throw std::invalid_argument("fading: need one m per branch");
    }
    if (omega_sq.size() != static_cast<std::size_t>(geom.ports)) {
        throw std::invalid_argument("fading: need one omega_sq per port");
    }
    for (int mj : m) {
        if (mj < 1) throw std::invalid_argument("fading: m must be a positive integer");
    }
    for (double w : omega_sq) {
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("fading: omega_sq must be positive");
    }
}

void LinkBudget::validate() const {
    if (!(snr_bar > 0.0) || !std::isfinite(snr_bar)) throw std::invalid_argument("link: snr_bar must be positive");
    if (!(gamma_th > 0.0) || !std::isfinite(gamma_th)) {
        throw std::invalid_argument("link: gamma_th must be positive");
    }
}

LinkBudget LinkBudget::from_db(double snr_db, double gamma_th_db) {
    return {db_to_linear(snr_db), db_to_linear(gamma_th_db)};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

CorrelationProfile CorrelationProfile::from_mu_sq(double mu_sq) {
    CorrelationProfile c{std::sqrt(std::max(mu_sq, 0.0))};
    c.validate();
    return c;
}

void CorrelationProfile::validate() const {
    if (!(mu >= 0.0) || !(mu < 1.0)) throw std::domain_error("correlation: mu must lie in [0, 1)");
}

double port_correlation(int ports, double size) {
    if (ports < 2) throw std::domain_error("port_correlation: needs at least two ports");
    if (!(size > 0.0) || !std::isfinite(size)) throw std::domain_error("port_correlation: W must be positive");
    const double spacing = 2.0 * std::numbers::pi * size / (ports - 1);
    double sum = 0.0;
    for (int i = 1; i < ports; ++i) {
        sum += (ports - i) * bessel_j0(spacing * i);
    }
    const double pairs = 0.5 * ports * (ports - 1.0);
    return std::min(std::fabs(sum / pairs), 1.0);
}

std::vector<BranchView> branch_view(const FasGeometry& geom) {
    geom.validate();
    BranchView view{geom.ports_per_branch(), geom.branch_size(), 0.0};
    if (view.ports > 1) view.mu_sq = port_correlation(view.ports, view.size);
    return std::vector<BranchView>(static_cast<std::size_t>(geom.branches), view);
}

void BranchChannel::validate() const {
    if (m < 1) throw std::domain_error("branch: m must be a positive integer");
    if (omega_sq.empty()) throw std::domain_error("branch: needs at least one port");
    for (double w : omega_sq) {
        if (!(w > 0.0) || !std::isfinite(w)) throw std::domain_error("branch: omega_sq must be positive");
    }
    CorrelationProfile{mu}.validate();
}

std::vector<BranchChannel> branch_channels(const FasGeometry& geom, const FadingProfile& fading,
                                           std::span<const CorrelationProfile> corr) {
    geom.validate();
    fading.validate(geom);
    if (corr.size() != static_cast<std::size_t>(geom.branches)) {
        throw std::invalid_argument("branch_channels: need one correlation profile per branch");
    }
    const auto per = static_cast<std::size_t>(geom.ports_per_branch());
    std::vector<BranchChannel> out;
    out.reserve(corr.size());
    for (std::size_t j = 0; j < corr.size(); ++j) {
        corr[j].validate();
        auto first = fading.omega_sq.begin() + static_cast<std::ptrdiff_t>(j * per);
        out.push_back({fading.m[j], std::vector<double>(first, first + static_cast<std::ptrdiff_t>(per)),
                       per > 1 ? corr[j].mu : 0.0});
    }
    return out;
}

std::vector<BranchChannel> branch_channels(const FasGeometry& geom, const FadingProfile& fading) {
    std::vector<CorrelationProfile> corr;
    for (const auto& view : branch_view(geom)) corr.push_back(CorrelationProfile::from_mu_sq(view.mu_sq));
    return branch_channels(geom, fading, corr);
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed;
    const std::uint64_t base = splitmix64(state);
    state = base ^ (stream * 0xD1B54A32D192ED03ULL);
    std::array<std::uint32_t, 8> words{};
    for (std::size_t i = 0; i < words.size(); i += 2) {
        const std::uint64_t v = splitmix64(state);
        words[i] = static_cast<std::uint32_t>(v);
        words[i + 1] = static_cast<std::uint32_t>(v >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

PortGainSampler::PortGainSampler(const BranchChannel& branch) {
    branch.validate();
    if (branch.m > kMaxSampledM) throw std::domain_error("sampler: m exceeds kMaxSampledM");
    components_ = 2 * branch.m;
    mu_ = branch.mu;
    mix_ = std::sqrt(1.0 - branch.mu * branch.mu);
    scale_.reserve(branch.omega_sq.size());
    for (double w : branch.omega_sq) scale_.push_back(w / components_);
}

// Calls sink(k, |h_k|^2) for every port in order.
template <class Sink>
void PortGainSampler::generate(Rng& rng, Sink&& sink) const {
    boost::random::normal_distribution<double> normal;
    std::array<double, 2 * kMaxSampledM> reference{};
    double acc = 0.0;
    for (int l = 0; l < components_; ++l) {
        reference[l] = normal(rng);
        acc += reference[l] * reference[l];
    }
    sink(std::size_t{0}, scale_[0] * acc);
    for (std::size_t k = 1; k < scale_.size(); ++k) {
        acc = 0.0;
        for (int l = 0; l < components_; ++l) {
            const double g = mu_ * reference[l] + mix_ * normal(rng);
            acc += g * g;
        }
        sink(k, scale_[k] * acc);
    }
}

void PortGainSampler::draw(Rng& rng, std::span<double> gains) const {
    if (gains.size() != scale_.size()) throw std::invalid_argument("sampler: gains span has wrong size");
    generate(rng, [&](std::size_t k, double g) { gains[k] = g; });
}

double PortGainSampler::draw_max(Rng& rng) const {
    double best = 0.0;
    generate(rng, [&](std::size_t, double g) { best = std::max(best, g); });
    return best;
}

double PortGainSampler::draw_sum(Rng& rng) const {
    double sum = 0.0;
    generate(rng, [&](std::size_t, double g) { sum += g; });
    return sum;
}

std::vector<double> sample_port_gains(const BranchChannel& branch, Rng& rng, std::size_t n) {
    const PortGainSampler sampler(branch);
    const auto width = static_cast<std::size_t>(sampler.ports());
    std::vector<double> out(n * width);
    for (std::size_t i = 0; i < n; ++i) {
        sampler.draw(rng, std::span<double>(out).subspan(i * width, width));
    }
    return out;
}

}  // namespace fasop
