// SPDX-License-Identifier: Apache-2.0
//
// Special functions used by the outage-probability formulas: Bessel J0,
// log-Gamma, regularized incomplete gamma and integer-order Marcum Q.
// All functions are pure and reentrant.

#pragma once

#include <stdexcept>
#include <string>

namespace fasop {

/// Raised when an iterative evaluation fails to converge within its budget.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Series truncation controls shared by the iterative special functions.
struct Accuracy {
    double rel_tol = 1e-12;
    int max_terms = 10000;  ///< Marcum Q: terms beyond the Poisson mean a^2 / 2

    void validate() const;
};

double bessel_j0(double x);

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double reg_lower_gamma(double a, double x, const Accuracy& acc = {});

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly
/// so that small tails keep their relative accuracy.
double reg_upper_gamma(double a, double x, const Accuracy& acc = {});

/// Generalized Marcum Q-function Q_m(a, b) for positive integer order m.
///
/// Evaluated as a Poisson mixture of incomplete gamma functions with
/// noncentrality a^2/2. Whichever of Q_m and 1 - Q_m is the smaller tail
/// is summed directly; the other is its complement.
double marcum_q(int order, double a, double b, const Accuracy& acc = {});

/// 1 - Q_m(a, b), i.e. the CDF of the scaled noncentral chi-square law.
/// Keeps full relative accuracy when the result is tiny (b -> 0).
double marcum_q_complement(int order, double a, double b, const Accuracy& acc = {});

}  // namespace fasop
