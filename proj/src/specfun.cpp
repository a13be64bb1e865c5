// SPDX-License-Identifier: Apache-2.0

#include "fasop/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fasop {

namespace {

constexpr double kTiny = 1e-300;

[[noreturn]] void domain_fail(const std::string& what) { throw std::domain_error(what); }

// log of x^a e^{-x} / Gamma(a), the common prefactor of both incomplete gamma tails.
double log_gamma_kernel(double a, double x) { return -x + a * std::log(x) - ln_gamma(a); }

// Power series for P(a, x); converges fastest for x < a + 1.
double lower_gamma_series(double a, double x, const Accuracy& acc) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n <= acc.max_terms; ++n) {
        ap += 1.0;
        const double ratio = x / ap;
        term *= ratio;
        sum += term;
        // Remaining terms form a geometric series with ratio below `ratio`.
        if (term < sum * acc.rel_tol * (1.0 - ratio)) {
            return std::exp(log_gamma_kernel(a, x)) * sum;
        }
    }
    throw NumericalError("reg_lower_gamma: series did not converge");
}

// Continued fraction (modified Lentz) for Q(a, x); used for x >= a + 1.
double upper_gamma_fraction(double a, double x, const Accuracy& acc) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= acc.max_terms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < acc.rel_tol * 1e-2) {
            return std::exp(log_gamma_kernel(a, x)) * h;
        }
    }
    throw NumericalError("reg_upper_gamma: continued fraction did not converge");
}

void check_gamma_args(double a, double x, const char* name) {
    if (!(a > 0.0) || !std::isfinite(a)) domain_fail(std::string(name) + ": a must be positive and finite");
    if (!(x >= 0.0)) domain_fail(std::string(name) + ": x must be non-negative");
}

const double kLogSmallestSubnormal = std::log(std::numeric_limits<double>::denorm_min());

struct MarcumTails {
    double lower;  // 1 - Q_m
    double upper;  // Q_m
};

// Poisson truncation: once k exceeds the mean, the Poisson tail beyond k is
// bounded by w_{k+1} / (1 - lambda / (k + 2)). A bound below the smallest
// subnormal cannot change `scale`, however small `scale` is.
bool tail_negligible(double log_w_next, double lambda, int k, double rel_tol, double scale) {
    const double log_bound = log_w_next - std::log1p(-lambda / (k + 2.0));
    return log_bound < std::log(rel_tol * scale) || log_bound < kLogSmallestSubnormal;
}

// The Poisson tail drops below the subnormal range by k = lambda + 40 sqrt(lambda);
// the term budget counts past that point.
int term_limit(double lambda, const Accuracy& acc) {
    const double limit = std::floor(lambda + 40.0 * std::sqrt(lambda)) + acc.max_terms;
    if (limit > std::numeric_limits<int>::max() / 2) throw NumericalError("marcum_q: noncentrality too large");
    return static_cast<int>(limit);
}

// sum_k w_k P(m + k, y), with P evaluated downward from the truncation index so
// that every recurrence step adds a positive term.
double marcum_lower_series(int m, double lambda, double y, const Accuracy& acc) {
    const double log_lambda = std::log(lambda);
    double log_fact = 0.0;  // ln k!
    double weight_sum = 0.0;
    int last = -1;
    const int limit = term_limit(lambda, acc);
    for (int k = 0; k <= limit; ++k) {
        const double log_w = -lambda + k * log_lambda - log_fact;
        weight_sum += std::exp(log_w);
        const double log_fact_next = log_fact + std::log(k + 1.0);
        if (k > lambda) {
            const double log_w_next = -lambda + (k + 1) * log_lambda - log_fact_next;
            if (tail_negligible(log_w_next, lambda, k, acc.rel_tol, weight_sum)) {
                last = k;
                break;
            }
        }
        log_fact = log_fact_next;
    }
    if (last < 0) throw NumericalError("marcum_q: Poisson mixture did not converge");

    const double log_y = std::log(y);
    double p = reg_lower_gamma(m + last, y, acc);
    double log_gamma_a1 = ln_gamma(m + last + 1.0);  // ln Gamma(a + 1), a = m + k
    double sum = std::exp(-lambda + last * log_lambda - log_fact) * p;
    for (int k = last - 1; k >= 0; --k) {
        log_fact -= std::log(k + 1.0);
        const double a = m + k;
        log_gamma_a1 -= std::log(a + 1.0);
        p += std::exp(-y + a * log_y - log_gamma_a1);  // P(a) = P(a+1) + y^a e^-y / Gamma(a+1)
        sum += std::exp(-lambda + k * log_lambda - log_fact) * p;
    }
    return std::min(sum, 1.0);
}

// sum_k w_k Q(m + k, y), with Q evaluated upward (each step adds a positive term).
double marcum_upper_series(int m, double lambda, double y, const Accuracy& acc) {
    const double log_lambda = std::log(lambda);
    const double log_y = std::log(y);
    double q = reg_upper_gamma(m, y, acc);
    double log_gamma_a1 = ln_gamma(m + 1.0);
    double log_fact = 0.0;
    double sum = 0.0;
    const int limit = term_limit(lambda, acc);
    for (int k = 0; k <= limit; ++k) {
        sum += std::exp(-lambda + k * log_lambda - log_fact) * q;
        const double a = m + k;
        q += std::exp(-y + a * log_y - log_gamma_a1);  // Q(a+1) = Q(a) + y^a e^-y / Gamma(a+1)
        q = std::min(q, 1.0);
        log_gamma_a1 += std::log(a + 1.0);
        log_fact += std::log(k + 1.0);
        if (k > lambda) {
            const double log_w_next = -lambda + (k + 1) * log_lambda - log_fact;
            if (tail_negligible(log_w_next, lambda, k, acc.rel_tol, sum)) {
                return std::min(sum, 1.0);
            }
        }
    }
    throw NumericalError("marcum_q: Poisson mixture did not converge");
}

MarcumTails marcum_tails(int order, double a, double b, const Accuracy& acc) {
    acc.validate();
    if (order < 1) domain_fail("marcum_q: order must be a positive integer");
    if (!(a >= 0.0) || !(b >= 0.0)) domain_fail("marcum_q: arguments must be non-negative");
    if (!std::isfinite(a)) domain_fail("marcum_q: a must be finite");
    if (b == 0.0) return {0.0, 1.0};
    const double y = 0.5 * b * b;
    if (!std::isfinite(y)) return {1.0, 0.0};
    const double lambda = 0.5 * a * a;
    if (lambda == 0.0) {
        return {reg_lower_gamma(order, y, acc), reg_upper_gamma(order, y, acc)};
    }
    if (y < lambda + order) {
        const double lower = marcum_lower_series(order, lambda, y, acc);
        return {lower, 1.0 - lower};
    }
    const double upper = marcum_upper_series(order, lambda, y, acc);
    return {1.0 - upper, upper};
}

}  // namespace

void Accuracy::validate() const {
    if (!(rel_tol > 0.0)) domain_fail("Accuracy: rel_tol must be positive");
    if (max_terms < 1) domain_fail("Accuracy: max_terms must be >= 1");
}

double bessel_j0(double x) {
    if (!std::isfinite(x)) domain_fail("bessel_j0: argument must be finite");
    return std::cyl_bessel_j(0.0, std::fabs(x));
}

double ln_gamma(double x) {
    if (!(x > 0.0)) domain_fail("ln_gamma: argument must be positive");
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double reg_lower_gamma(double a, double x, const Accuracy& acc) {
    acc.validate();
    check_gamma_args(a, x, "reg_lower_gamma");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return std::min(lower_gamma_series(a, x, acc), 1.0);
    return std::max(0.0, 1.0 - upper_gamma_fraction(a, x, acc));
}

double reg_upper_gamma(double a, double x, const Accuracy& acc) {
    acc.validate();
    check_gamma_args(a, x, "reg_upper_gamma");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return std::max(0.0, 1.0 - lower_gamma_series(a, x, acc));
    return std::min(upper_gamma_fraction(a, x, acc), 1.0);
}

double marcum_q(int order, double a, double b, const Accuracy& acc) {
    return marcum_tails(order, a, b, acc).upper;
}

double marcum_q_complement(int order, double a, double b, const Accuracy& acc) {
    return marcum_tails(order, a, b, acc).lower;
}

}  // namespace fasop
