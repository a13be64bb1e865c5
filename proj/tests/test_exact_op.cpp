// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "fasop/exact_op.hpp"
#include "fasop/montecarlo.hpp"
#include "fasop/specfun.hpp"
#include "oracles.hpp"

using namespace fasop;

namespace {

// Composite Simpson over the reference-port power with Boost-based Marcum CDFs.
double simpson_branch_cdf(double x, const BranchChannel& b, int n = 600) {
    const int m = b.m;
    const double w1 = b.omega_sq.front();
    const double mu_sq = b.mu * b.mu;
    const double one_minus = 1.0 - mu_sq;
    auto f = [&](double t) {
        double v = std::pow(m / w1, m) * std::pow(t, m - 1) * std::exp(-m * t / w1) / std::tgamma(double(m));
        for (std::size_t k = 1; k < b.omega_sq.size(); ++k) {
            v *= oracle::marcum_cdf(m, std::sqrt(2.0 * m * mu_sq * t / (w1 * one_minus)),
                                    std::sqrt(2.0 * m * x / (b.omega_sq[k] * one_minus)));
        }
        return v;
    };
    const double h = x / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) s += (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0)) * f(i * h);
    return s * h / 3.0;
}

}  // namespace

TEST_SUITE("exact_op") {

TEST_CASE("quadrature integrates smooth functions") {
    CHECK(integrate([](double x) { return x * x * x; }, 0.0, 2.0).value == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI).value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 50.0).value == doctest::Approx(-std::expm1(-50.0)).epsilon(1e-12));
    const auto r = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, {1e-14, 1e-12, 500});
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-11));
    CHECK(r.subdivisions > 1);
}

TEST_CASE("quadrature reports non-convergence with its estimate") {
    try {
        integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, {1e-15, 1e-15, 1});
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.estimate() == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
        CHECK(e.error_bound() > 1e-15);
    }
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, {0.0, 1e-9, 10}), std::domain_error);
    CHECK_THROWS_AS(branch_cdf(0.5, BranchChannel{1, {1.0, 1.0, 1.0}, 0.5}, {1e-300, 1e-300, 1}), QuadratureError);
}

TEST_CASE("single port reduces to the Gamma CDF") {
    for (int m : {1, 2, 5}) {
        for (double x : {1e-3, 0.4, 2.0, 9.0}) {
            CHECK(branch_cdf(x, BranchChannel{m, {1.7}, 0.0}) == doctest::Approx(boost::math::gamma_p(m, m * x / 1.7)).epsilon(1e-12));
        }
    }
}

TEST_CASE("uncorrelated ports multiply") {
    const BranchChannel b{2, {1.0, 0.5, 2.0}, 0.0};
    for (double x : {0.1, 1.0, 3.0}) {
        double want = 1.0;
        for (double w : b.omega_sq) want *= boost::math::gamma_p(2.0, 2.0 * x / w);
        CHECK(branch_cdf(x, b) == doctest::Approx(want).epsilon(1e-12));
        // the integral path joins the product form continuously
        BranchChannel almost = b;
        almost.mu = 1e-4;
        CHECK(branch_cdf(x, almost) == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("correlated branches match Simpson quadrature of the Marcum kernel") {
    const std::vector<BranchChannel> cases{
        {1, {1.0, 1.0}, 0.6},
        {1, {1.0, 1.0, 1.0, 1.0, 1.0}, std::sqrt(port_correlation(5, 1.0))},
        {2, {1.0, 0.7, 1.3}, 0.8},
        {3, {2.0, 1.0, 1.0, 0.5}, 0.45},
    };
    for (const auto& b : cases) {
        for (double x : {0.05, 0.5, 1.5}) {
            const double want = simpson_branch_cdf(x, b);
            CHECK(branch_cdf(x, b) == doctest::Approx(want).epsilon(1e-6));
        }
    }
}

TEST_CASE("branch CDF is a distribution function") {
    const BranchChannel b{2, std::vector<double>(6, 1.0), 0.7};
    double prev = 0.0;
    for (double x = 0.0; x <= 8.0; x += 0.25) {
        const double p = branch_cdf(x, b);
        CHECK(p >= prev - 1e-12);
        CHECK(p <= 1.0);
        prev = p;
    }
    CHECK(branch_cdf(0.0, b) == 0.0);
    CHECK(branch_cdf(INFINITY, b) == 1.0);
    CHECK(branch_cdf(40.0, b) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(branch_cdf(-1.0, b), std::domain_error);
}

TEST_CASE("an extra port never raises outage") {
    for (int m : {1, 2}) {
        for (double x : {0.1, 0.8}) {
            double prev = 1.0;
            for (int n = 1; n <= 12; ++n) {
                const double p = branch_cdf(x, BranchChannel{m, std::vector<double>(n, 1.0), 0.75});
                CHECK(p <= prev + 1e-12);
                prev = p;
            }
        }
    }
}

TEST_CASE("op_fas_exact is branch_cdf at gamma_th / snr_bar") {
    const BranchChannel b{1, std::vector<double>(4, 1.0), 0.5};
    const LinkBudget link = LinkBudget::from_db(7.0, 2.0);
    CHECK(op_fas_exact(b, link) == branch_cdf(link.gain_threshold(), b));
    CHECK_THROWS_AS(op_fas_exact(b, LinkBudget{0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("exact outage agrees with Monte Carlo for L = 5, W = 1") {
    const FasGeometry geom{5, 1.0, 1};
    const auto fading = FadingProfile::uniform(geom, 1);
    const auto branch = branch_channels(geom, fading).front();
    const CorrelationProfile corr{branch.mu};
    for (double snr_db : {0.0, 5.0}) {
        const auto link = LinkBudget::from_db(snr_db, 0.0);
        const double exact = op_fas_exact(branch, link);
        const auto mc = estimate_op_fas(geom, fading, corr, link, McConfig{1'000'000, 3, 1});
        CHECK(std::fabs(exact - mc.op) <= 3.0 * mc.ci_half_width);
    }
}

TEST_CASE("MRC closed forms") {
    for (double x : {0.01, 0.5, 2.0}) {
        const LinkBudget link{1.0, x};
        CHECK(op_mrc(1, 1, 1.0, link) == doctest::Approx(-std::expm1(-x)).epsilon(1e-12));
        CHECK(op_mrc(2, 1, 1.0, link) == doctest::Approx(1.0 - std::exp(-x) * (1.0 + x)).epsilon(1e-10));
        CHECK(op_mrc(3, 2, 2.0, link) == doctest::Approx(boost::math::gamma_p(6.0, x)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(op_mrc(0, 1, 1.0, LinkBudget{}), std::domain_error);
    CHECK_THROWS_AS(op_mrc(1, 0, 1.0, LinkBudget{}), std::domain_error);
}

TEST_CASE("long branches stay finite") {
    const FasGeometry geom{200, 5.0, 1};
    const auto b = branch_channels(geom, FadingProfile::uniform(geom, 1)).front();
    for (double x : {1e-3, 0.1, 1.0, 5.0}) {
        const double p = branch_cdf(x, b, {1e-300, 1e-9, 400});
        CHECK(std::isfinite(p));
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("near-perfect correlation is rejected") {
    CHECK_THROWS_AS(branch_cdf(0.5, BranchChannel{1, {1.0, 1.0}, 1.0 - 1e-14}), std::domain_error);
    CHECK_NOTHROW(branch_cdf(0.5, BranchChannel{1, {1.0, 1.0}, 1.0 - 1e-6}));
}

}  // TEST_SUITE
