// SPDX-License-Identifier: Apache-2.0
//
// q-series primitives: Pochhammer symbols, the Jacobi theta function
//
//   theta_q(x) = sum_{n in Z} q^{n(n-1)/2} x^n,
//
// the Jackson q-gamma function, the general basic hypergeometric series
// _r phi_s, principal powers and q-spiral geometry.

#ifndef QSF_QSERIES_HPP
#define QSF_QSERIES_HPP

#include <span>
#include <vector>

#include "qsf/types.hpp"

namespace qsf {

//! (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}); n = 0 gives 1.
cx qpoch_finite(cx a, cx q, int n);

//! (a;q)_infty, |q| < 1. Exact 1 for a = 0.
SeriesValue qpoch_inf(cx a, cx q, const Tolerance& tol = {});

//! (a_1,...,a_m;q)_infty = prod of qpoch_inf; empty list gives 1.
SeriesValue qpoch_multi(std::span<const cx> as, cx q, const Tolerance& tol = {});

// log (a;q)_infty as the sum of principal logs of the factors. Safe where
// the plain product would underflow (thousands of factors for p near 1).
// exp of the result reproduces the product exactly; the imaginary part is
// not reduced mod 2*pi.
cx qpoch_inf_log(cx a, cx q, const Tolerance& tol = {});

//! theta_q(x), bilateral sum. |q| < 1, x != 0.
SeriesValue theta(cx q, cx x, const Tolerance& tol = {});

// theta in mantissa*exp(log_scale) form. Two evaluation paths share one
// bilateral summation core:
//  - the argument reduction theta(x) = q^{k(k-1)/2} x^k theta(q^k x) with
//    |q^k x| in [|q|, 1), good for small |q|;
//  - the modular transformation to the dual base
//        theta_q(x) = sqrt(2 pi / e) * exp(L^2 / (2 e)) * theta_qd(xd),
//    e = -Log q, L = Log x + e/2, qd = exp(-4 pi^2 / e),
//    xd = exp(-2 pi^2 / e - 2 pi i L / e),
//    which is immune to the cancellation that makes the direct sum lose
//    all precision near the zero spiral -q^Z once |q| grows past ~0.5.
// The faster-converging base is selected automatically.
ScaledSeriesValue theta_scaled(cx q, cx x, const Tolerance& tol = {});

//! theta_q(x1)/theta_q(x2) without overflow in the intermediate values.
cx theta_ratio(cx q, cx x1, cx x2, const Tolerance& tol = {});

//! Jackson q-gamma: Gamma_q(x) = ((q;q)_inf/(q^x;q)_inf) (1-q)^{1-x}, 0<q<1.
SeriesValue q_gamma(double q, cx x, const Tolerance& tol = {});

//! x^nu on the principal branch, Arg x in (-pi, pi]. x = 0 gives 0 for
//! Re nu > 0 and throws zero_argument_error otherwise.
cx principal_power(cx x, cx nu);

// _r phi_s(a_1..a_r; b_1..b_s; q, x)
//   = sum_n [(a;q)_n / ((b;q)_n (q;q)_n)] [(-1)^n q^{n(n-1)/2}]^{1+s-r} x^n.
// Terminates exactly when a numerator Pochhammer reaches zero; a vanishing
// denominator factor before that raises denominator_pole_error.
SeriesValue rphis(std::span<const cx> a, std::span<const cx> b, cx q, cx x,
                  const Tolerance& tol = {});

//! Integer k minimizing |Log(x / (lambda q^k))| and that distance.
SpiralLocation q_spiral_locate(cx lambda, cx q, cx x);

} // namespace qsf

#endif
