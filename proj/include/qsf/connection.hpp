// SPDX-License-Identifier: Apache-2.0
//
// The connection formula between the solution at infinity and the two
// solutions at the origin. For x off the spiral [p^{v+2}; p]:
//
//   z(1/x) = [1/((p^{-2v},p;p)_inf)]
//              [theta_p(-p^{2v+2}/x)/theta_p(-p^{v+2}/x)] 1phi1(0;p^{1+2v};p,x)
//          + [1/((p^{2v},p;p)_inf)]
//              [theta_p(-p^2/x)/theta_p(-p^{v+2}/x)] 1phi1(0;p^{1-2v};p,p^{-2v}x)
//
// plus the rewritten form h = C+ J+ + C- J- whose coefficients C± are
// p-elliptic (invariant under t -> p t), so genuinely non-constant
// "connection constants".

#ifndef QSF_CONNECTION_HPP
#define QSF_CONNECTION_HPP

#include "qsf/qborel.hpp"
#include "qsf/qseries.hpp"
#include "qsf/types.hpp"

namespace qsf {

struct ConnectionReport {
    cx point_x{};
    cx lhs{};
    cx rhs_term_plus{};
    cx rhs_term_minus{};
    double residual_rel = 0.0;
    SpiralLocation spiral{}; // of x relative to the anchor p^{v+2}
};

struct EllipticCoeffPair {
    cx c_plus{};
    cx c_minus{};
    cx lambda{};
    cx t{};
};

// Evaluation refuses points whose relevant theta argument sits closer than
// `spiral_gate` (log-metric) to the zero spiral; theta in a denominator
// amplifies rounding there.
inline constexpr double default_spiral_gate = 1e-3;

//! z(t) = f(t) / theta_p(-p^{v+2} t), the solution built at infinity.
cx z_at_infinity(cx nu, const Nome& nome, cx t, const Tolerance& tol = {},
                 double spiral_gate = default_spiral_gate);

// Both sides of the connection formula at x. The left side is produced by
// the contour-quadrature Laplace transform of the closed-form g, never by
// the residue sum that generated the right side, so the check can fail.
ConnectionReport connection_residual(cx nu, const Nome& nome, cx x,
                                     const Tolerance& tol = {},
                                     double spiral_gate = default_spiral_gate);

//! J+_{v,lambda}(x;p) = ((p^{v+1};p)/(p;p))_inf
//!     [theta_p(lambda p^v/x)/theta_p(lambda/x)] 1phi1(0;p^{1+2v};p,x).
cx j_plus(cx nu, cx lambda, const Nome& nome, cx x, const Tolerance& tol = {},
          double spiral_gate = default_spiral_gate);

//! As j_plus with series argument p^{2v} x.
cx j_minus(cx nu, cx lambda, const Nome& nome, cx x, const Tolerance& tol = {},
           double spiral_gate = default_spiral_gate);

// C+_v(lambda,t;p) = [(p^{1/2},p^{1/2};p)_inf / ((p^{v+1},p^{-2v};p)_inf)]
//     [theta_p(-p^{2v+2}t)/theta_p(-p^{v+2}t)] [theta_p(lambda t)/theta_p(lambda p^v t)]
// and the mirror C-_v with (p^{-v+1}, p^{2v}), theta_p(-p^2 t), lambda p^{-v} t.
EllipticCoeffPair c_coeffs(cx nu, cx lambda, const Nome& nome, cx t,
                           const Tolerance& tol = {},
                           double spiral_gate = default_spiral_gate);

//! h_v(t;p) = (p^{1/2},p^{1/2};p)_inf z(t).
cx h_nu(cx nu, const Nome& nome, cx t, const Tolerance& tol = {},
        double spiral_gate = default_spiral_gate);

//! h_v(1/x;p) - [C+_v(lambda,1/x;p) J+_v(x;p) + C-_v(lambda,1/x;p) J-_{-v,lambda}(x;p)].
cx rewritten_connection_residual(cx nu, cx lambda, const Nome& nome, cx x,
                                 const Tolerance& tol = {},
                                 double spiral_gate = default_spiral_gate);

//! u(px) - p^v u(x) for u(x) = theta_p(lambda p^v / x)/theta_p(lambda / x).
cx theta_ratio_qde_residual(cx nu, cx lambda, const Nome& nome, cx x,
                            const Tolerance& tol = {},
                            double spiral_gate = default_spiral_gate);

} // namespace qsf

#endif
