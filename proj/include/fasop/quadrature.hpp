// SPDX-License-Identifier: Apache-2.0
//
// Globally adaptive Gauss-Kronrod (7/15) integration on a finite interval.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace fasop {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_subdivisions = 200;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::domain_error("quadrature: tolerances must be positive");
        if (max_subdivisions < 1) throw std::domain_error("quadrature: max_subdivisions must be >= 1");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

/// Thrown when the error target is not met within max_subdivisions; carries
/// the best estimate and its error bound.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double estimate, double error_bound)
        : std::runtime_error("quadrature did not converge: estimate " + std::to_string(estimate) +
                             ", error bound " + std::to_string(error_bound)),
          estimate_(estimate),
          error_bound_(error_bound) {}

    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

namespace detail {

struct Segment {
    double lo, hi, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod_15(F& f, double lo, double hi) {
    // Kronrod abscissae; odd indices are the embedded Gauss nodes.
    static constexpr std::array<double, 8> xk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> wk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = wk[7] * fc;
    double gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * xk[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += wk[i] * pair;
        if (i % 2 == 1) gauss += wg[i / 2] * pair;
    }
    return {lo, hi, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Integrates f over [lo, hi], bisecting the worst segment until the summed
/// error estimate is below max(abs_tol, rel_tol * |integral|).
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (lo == hi) return {};
    std::priority_queue<detail::Segment> segments;
    segments.push(detail::gauss_kronrod_15(f, lo, hi));
    double value = segments.top().value;
    double error = segments.top().error;
    int subdivisions = 0;
    while (error > std::max(spec.abs_tol, spec.rel_tol * std::fabs(value))) {
        if (subdivisions >= spec.max_subdivisions) throw QuadratureError(value, error);
        const detail::Segment worst = segments.top();
        segments.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const auto left = detail::gauss_kronrod_15(f, worst.lo, mid);
        const auto right = detail::gauss_kronrod_15(f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        segments.push(left);
        segments.push(right);
        ++subdivisions;
    }
    // Re-sum to shed the drift of the incremental updates.
    value = 0.0;
    error = 0.0;
    while (!segments.empty()) {
        value += segments.top().value;
        error += segments.top().error;
        segments.pop();
    }
    return {value, error, subdivisions};
}

}  // namespace fasop
