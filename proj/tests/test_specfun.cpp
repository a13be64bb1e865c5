// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include "fasop/specfun.hpp"
#include "oracles.hpp"

using namespace fasop;

TEST_SUITE("specfun") {

TEST_CASE("bessel_j0 basics") {
    CHECK(bessel_j0(0.0) == 1.0);
    for (double x : {0.3, 2.0, 7.5, 41.0, 999.0}) CHECK(bessel_j0(x) == bessel_j0(-x));
    CHECK_THROWS_AS(bessel_j0(INFINITY), std::domain_error);
    CHECK_THROWS_AS(bessel_j0(NAN), std::domain_error);
}

TEST_CASE("bessel_j0 first zero from bisection of the power series") {
    long double lo = 2.0L, hi = 3.0L;
    for (int i = 0; i < 200 && hi - lo > 1e-18L; ++i) {
        const long double mid = 0.5L * (lo + hi);
        (oracle::j0_series(mid) > 0 ? lo : hi) = mid;
    }
    const double root = static_cast<double>(0.5L * (lo + hi));
    CHECK(root == doctest::Approx(2.404825557695773).epsilon(1e-14));
    CHECK(std::fabs(bessel_j0(root)) <= 1e-10);
}

TEST_CASE("bessel_j0 matches its power series on |x| <= 8") {
    for (int i = 0; i < 1000; ++i) {
        const double x = oracle::uniform(-8.0, 8.0);
        CHECK(std::fabs(bessel_j0(x) - static_cast<double>(oracle::j0_series(x))) <= 1e-12);
    }
}

TEST_CASE("bessel_j0 absolute error on |x| <= 1000") {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = oracle::uniform(0.0, 1000.0);
        worst = std::max(worst, std::fabs(bessel_j0(x) - boost::math::cyl_bessel_j(0, x)));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("ln_gamma") {
    CHECK(ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(ln_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
    for (int i = 0; i < 200; ++i) {
        const double x = oracle::uniform(0.05, 150.0);
        CHECK(ln_gamma(x + 1.0) - ln_gamma(x) == doctest::Approx(std::log(x)).epsilon(1e-10));
        CHECK(ln_gamma(x) == doctest::Approx(boost::math::lgamma(x)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-1.5), std::domain_error);
}

TEST_CASE("reg_lower_gamma closed forms") {
    CHECK(reg_lower_gamma(3.0, 0.0) == 0.0);
    for (double x : {1e-8, 0.1, 1.0, 4.0, 30.0}) {
        CHECK(reg_lower_gamma(1.0, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-12));
    }
    CHECK(reg_lower_gamma(2.0, 2.0) == doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(reg_lower_gamma(4.0, INFINITY) == 1.0);
}

TEST_CASE("reg_lower_gamma against Boost gamma_p") {
    for (int i = 0; i < 1000; ++i) {
        const double a = std::exp(oracle::uniform(std::log(0.05), std::log(800.0)));
        const double x = a * std::exp(oracle::uniform(-4.0, 1.5));
        const double want = boost::math::gamma_p(a, x);
        const double got = reg_lower_gamma(a, x);
        CHECK(got >= 0.0);
        CHECK(got <= 1.0);
        if (want > 1e-290) CHECK(std::fabs(got - want) <= 1e-10 * want);
        CHECK(reg_upper_gamma(a, x) == doctest::Approx(boost::math::gamma_q(a, x)).epsilon(1e-9));
    }
}

TEST_CASE("reg_lower_gamma is nondecreasing in x") {
    for (int trial = 0; trial < 50; ++trial) {
        const double a = oracle::uniform(0.2, 60.0);
        double prev = 0.0;
        for (double x = 0.0; x < 3.0 * a + 10.0; x += a / 37.0) {
            const double p = reg_lower_gamma(a, x);
            CHECK(p >= prev - 1e-15);
            prev = p;
        }
    }
}

TEST_CASE("incomplete gamma domain errors") {
    CHECK_THROWS_AS(reg_lower_gamma(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reg_lower_gamma(1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(reg_lower_gamma(1.0, 1.0, Accuracy{0.0, 10}), std::domain_error);
    CHECK_THROWS_AS(reg_lower_gamma(1.0, 1.0, Accuracy{1e-12, 0}), std::domain_error);
}

TEST_CASE("marcum_q special cases") {
    for (int m : {1, 2, 5}) CHECK(marcum_q(m, 1.7, 0.0) == 1.0);
    for (double b : {0.1, 1.0, 2.5, 6.0}) {
        CHECK(marcum_q(1, 0.0, b) == doctest::Approx(std::exp(-b * b / 2.0)).epsilon(1e-13));
        for (int m : {1, 2, 3}) {
            CHECK(marcum_q(m, 0.0, b) == doctest::Approx(1.0 - reg_lower_gamma(m, b * b / 2.0)).epsilon(1e-12));
        }
    }
    CHECK(std::fabs(marcum_q(1, 1.0, 2.0) - oracle::marcum_q(1, 1.0, 2.0)) <= 1e-9);
}

TEST_CASE("marcum_q against the Poisson-mixture oracle") {
    for (int i = 0; i < 1000; ++i) {
        const int m = oracle::uniform_int(1, 4);
        const double a = oracle::uniform(0.0, 10.0);
        const double b = oracle::uniform(0.0, 12.0);
        CHECK(std::fabs(marcum_q(m, a, b) - oracle::marcum_q(m, a, b)) <= 1e-9);
        const double cdf = oracle::marcum_cdf(m, a, b);
        if (cdf > 1e-280) CHECK(std::fabs(marcum_q_complement(m, a, b) - cdf) <= 1e-9 * std::max(cdf, 1e-300) + 1e-15);
    }
}

TEST_CASE("marcum_q complement keeps relative accuracy in the lower tail") {
    // 1 - Q_m(a, b) ~ e^{-a^2/2} (b^2/2)^m / m! as b -> 0
    for (int m : {1, 2, 3}) {
        const double a = 0.8;
        const double b = 1e-5;
        const double lead = std::exp(-a * a / 2.0) * std::pow(b * b / 2.0, m) / std::tgamma(m + 1.0);
        CHECK(marcum_q_complement(m, a, b) == doctest::Approx(lead).epsilon(1e-8));
    }
}

TEST_CASE("marcum_q monotonicity and bounds") {
    for (int i = 0; i < 1000; ++i) {
        const int m = oracle::uniform_int(1, 4);
        const double a = oracle::uniform(0.0, 8.0);
        const double b = oracle::uniform(0.0, 10.0);
        const double q = marcum_q(m, a, b);
        CHECK(q >= 0.0);
        CHECK(q <= 1.0);
        CHECK(marcum_q(m, a, b + 0.05) <= q + 1e-14);
        CHECK(marcum_q(m, a + 0.05, b) >= q - 1e-14);
        CHECK(marcum_q(m + 1, a, b) >= q - 1e-14);
    }
}

TEST_CASE("central Marcum Q recovers the upper incomplete gamma") {
    // P(m, x) + Q_m(0, sqrt(2x)) = 1 with the second term coming from the Marcum routine
    for (int i = 0; i < 300; ++i) {
        const int m = oracle::uniform_int(1, 8);
        const double x = oracle::uniform(0.0, 40.0);
        CHECK(reg_lower_gamma(m, x) + marcum_q(m, 0.0, std::sqrt(2.0 * x)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("marcum_q large noncentrality") {
    // Q_1(a, b) with a = b large is close to 1/2
    const double q = marcum_q(1, 40.0, 40.0);
    CHECK(q == doctest::Approx(oracle::marcum_q(1, 40.0, 40.0)).epsilon(1e-9));
    CHECK(q > 0.45);
    CHECK(q < 0.55);
    CHECK(marcum_q(2, 150.0, 160.0) == doctest::Approx(oracle::marcum_q(2, 150.0, 160.0)).epsilon(1e-8));
    CHECK(marcum_q_complement(1, 140.0, 135.0) == doctest::Approx(oracle::marcum_cdf(1, 140.0, 135.0)).epsilon(1e-8));
    // upper tail far below the double range
    CHECK(marcum_q(1, 500.0, 707.0) == 0.0);
    CHECK(marcum_q_complement(1, 500.0, 707.0) == 1.0);
}

TEST_CASE("marcum_q domain errors") {
    CHECK_THROWS_AS(marcum_q(0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(marcum_q(1, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(marcum_q(1, 1.0, -1.0), std::domain_error);
}

}  // TEST_SUITE
