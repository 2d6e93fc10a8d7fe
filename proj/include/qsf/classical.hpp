// SPDX-License-Identifier: Apache-2.0
//
// Classical Bessel/Hankel functions and the p -> 1^- limit chain: the
// q-gamma-type constant, the theta-quotient power limits, the 1phi1 ->
// 0F1 confluence, the classical limits of the three q-Bessel functions,
// and the full limit of the scaled solution at infinity
//
//   h_v(1/((1-p)^2 x); p)  ->  -i e^{-v pi i} H^{(2)}_{2v}(2 sqrt(x)).
//
// The limits involving theta quotients hold pointwise for arg x in
// (-pi, 0) exactly as displayed (equivalently with (-x)^v on the principal
// branch); for arg x in (0, pi) the conjugate branch applies, and on the
// positive real axis itself the quotients oscillate without a limit -- the
// axis is the Stokes line of the solution at infinity. Scans at real
// positive x therefore do not settle; sample slightly below the axis to
// observe the stated convergence.

#ifndef QSF_CLASSICAL_HPP
#define QSF_CLASSICAL_HPP

#include <span>
#include <vector>

#include "qsf/qbessel.hpp"
#include "qsf/qseries.hpp"
#include "qsf/types.hpp"

namespace qsf {

//! Complex gamma via a 9-term Lanczos approximation (g = 7), reflection
//! formula for Re z < 1/2. Relative accuracy ~1e-14 on the test strip.
cx gamma_fn(cx z);

//! 0F1(-; alpha; z) = sum z^n / ((alpha)_n n!). alpha not a nonpositive integer.
SeriesValue f01(cx alpha, cx z, const Tolerance& tol = {});

//! J_v(z) = (z/2)^v / Gamma(v+1) * 0F1(-; v+1; -z^2/4). The series is
//! accumulated in extended precision; at |z| ~ 30 the terms exceed the sum
//! by ~1e11 and plain double would lose most digits to cancellation.
cx bessel_j(cx nu, cx z, const Tolerance& tol = {});

enum class HankelKind { h1, h2 };

//! H1 = (i e^{-v pi i}/sin v pi) {J_v - e^{v pi i} J_-v}, H2 its mirror.
cx hankel(HankelKind kind, cx nu, cx z, const Tolerance& tol = {});

// Truncation order and phase zeta = z - v pi/2 - pi/4 of the large-z
// expansion. A_s grows factorially; orders beyond ~20 only diverge.
struct AsymptoticParams {
    int s_max = 10;
    cx zeta{};

    static AsymptoticParams at(cx nu, cx z, int s_max = 10);
};

// (2/(pi z))^{1/2} e^{+-i zeta} sum_{s<=S} (+-i)^s A_s(v) / z^s with
// A_s(v) = (4v^2-1)(4v^2-9)...(4v^2-(2s-1)^2) / (s! 8^s).
cx hankel_asymptotic(HankelKind kind, cx nu, cx z, const AsymptoticParams& params);

//! A_s(v); A_0 = 1.
cx hankel_asymptotic_coeff(cx nu, int s);

struct LimitScanRow {
    double p = 0.0;
    cx value{};
    cx target{};
    double abs_error = 0.0;
};

// value  = (p^{1/2},p^{1/2};p)_inf / ((p^{-2v},p;p)_inf) (1-p)^{2v}
// target = -1 / (sin(2 v pi) Gamma(2v+1))
// Calling with -nu gives the companion limit +1/(sin(2 v pi) Gamma(1-2v)).
std::vector<LimitScanRow> gamma_limit_scan(cx nu, std::span<const double> p_grid,
                                           const Tolerance& tol = {});

// value  = theta_p(p^{v1}/((1-p^2)x)) / theta_p(p^{v2}/((1-p^2)x)) (1-p^2)^{v2-v1}
// target = x^{v1-v2}; with `negated` both theta arguments carry a minus sign
// and the target is (-x)^{v1-v2} on the principal branch.
std::vector<LimitScanRow> theta_ratio_limit_scan(cx nu1, cx nu2, cx x,
                                                 std::span<const double> p_grid,
                                                 const Tolerance& tol = {},
                                                 bool negated = false);

//! theta_p(-sqrt p) theta_p(-K/x) - theta_sqrt(p)(sqrt(K/x)) theta_sqrt(p)(-sqrt(K/x)),
//! an exact identity at fixed p.
cx theta_split_identity_residual(cx K, cx x, const Nome& nome,
                                 const Tolerance& tol = {});

//! theta_p(-sqrt p) - sum_{n in Z} (-1)^n (sqrt p)^{n^2}.
cx theta_sqrtp_sum_residual(const Nome& nome, const Tolerance& tol = {});

// item 1: value = [theta_p(-p^{2v+2}/(x(1-p)^2)) / theta_p(-p^{v+2}/(x(1-p)^2))]
//                 (1-p)^{-2v},             target e^{ v pi i} x^{ v}
// item 2: value = [theta_p(-p^2/(x(1-p)^2)) / theta_p(-p^{v+2}/(x(1-p)^2))]
//                 (1-p)^{+2v},             target e^{-v pi i} x^{-v}
// The targets are exact limits for arg x in (-pi, 0); see the file header.
std::vector<LimitScanRow> theta_power_limit_scan(cx nu, cx x,
                                                 std::span<const double> p_grid,
                                                 const Tolerance& tol = {},
                                                 bool second_item = false);

// value = 1phi1(0; p^{1+2v}; p, (1-p)^2 x), target 0F1(-; 1+2v; -x);
// variant: 1phi1(0; p^{1-2v}; p, p^{-2v}(1-p)^2 x) against 0F1(-; 1-2v; -x).
std::vector<LimitScanRow> onephione_limit_scan(cx nu, cx x,
                                               std::span<const double> p_grid,
                                               const Tolerance& tol = {},
                                               bool variant = false);

// value  = h_v(1/((1-p)^2 x); p) assembled from the convergent right side of
//          the connection formula (scaled theta quotients, series factors),
// target = -i e^{-v pi i} H^{(2)}_{2v}(2 sqrt x).
std::vector<LimitScanRow> main_limit_scan(cx nu, cx x,
                                          std::span<const double> p_grid,
                                          const Tolerance& tol = {});

// J3: value J_v^{(3)}((1-q)x; q), target J_v(2x);
// J1/J2: value J_v^{(k)}((1-q)x; q), target J_v(x).
std::vector<LimitScanRow> qbessel_classical_limit_scan(QBesselKind kind, cx nu,
                                                       double x,
                                                       std::span<const double> q_grid,
                                                       const Tolerance& tol = {});

} // namespace qsf

#endif
