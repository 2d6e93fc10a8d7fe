// SPDX-License-Identifier: Apache-2.0
//
// The three q-Bessel functions
//
//   J1: ((q^{v+1};q)/(q;q))_inf (x/2)^v 2phi1(0,0; q^{v+1}; q, -x^2/4),  |x|<2
//   J2: ((q^{v+1};q)/(q;q))_inf (x/2)^v 0phi1(-; q^{v+1}; q, -q^{v+1}x^2/4)
//   J3: ((q^{v+1};q)/(q;q))_inf  x^v    1phi1(0; q^{v+1}; q, q x^2)
//
// (J3 is the Hahn-Exton function), their q-difference equations, the Hahn
// relation J2 = (-x^2/4;q)_inf J1, and the second Hahn-Exton solution
// J_{-v}^{(3)}(x p^{-v}; q).

#ifndef QSF_QBESSEL_HPP
#define QSF_QBESSEL_HPP

#include <functional>

#include "qsf/qseries.hpp"
#include "qsf/types.hpp"

namespace qsf {

enum class QBesselKind { j1, j2, j3 };

SeriesValue j_q_bessel(QBesselKind kind, cx nu, const Nome& nome, cx x,
                       const Tolerance& tol = {});

//! J_{-nu}^{(3)}(x p^{-nu}; q), the companion solution around the origin.
SeriesValue j3_second_solution(cx nu, const Nome& nome, cx x,
                               const Tolerance& tol = {});

// Left-hand side of the defining q-difference equation at x, with
// q^{1/2} = p. Near zero certifies that u solves the equation there.
//   J1: u(xq) - (p^v + p^-v) u(xp) + (1 + x^2/4) u(x)
//   J2: (1 + q x^2/4) u(xq) - (p^v + p^-v) u(xp) + u(x)
//   J3: u(xq) - {(p^v + p^-v) - p^{2-v} x^2} u(xp) + u(x)
cx qde_residual(QBesselKind kind, const std::function<cx(cx)>& u, cx nu,
                const Nome& nome, cx x);

//! [s_p^2 - {(p^v + p^-v) - x^2 p^{2-v}} s_p + 1] y at x, s_p y(x) = y(px).
cx heqb_residual(const std::function<cx(cx)>& y, cx nu, const Nome& nome, cx x);

//! J2(x;q) - (-x^2/4;q)_inf J1(x;q); |x| < 2.
cx hahn_relation_residual(cx nu, const Nome& nome, cx x,
                          const Tolerance& tol = {});

} // namespace qsf

#endif
