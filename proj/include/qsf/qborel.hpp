// SPDX-License-Identifier: Apache-2.0
//
// p-Borel and p-Laplace machinery for the level-one divergent solution at
// infinity:
//
//   (B_p f)(tau) = sum a_n p^{-n(n-1)/2} tau^n
//   (L_p g)(t)   = (1/2 pi i) int_{|tau|=r} g(tau) theta_p(t/tau) dtau/tau
//
// together with the Borel image g(tau) in closed form, the coefficient
// recurrence for the formal solution f, closed-form residues at the poles
// of g, and the residue-summed (convergent) form of f.

#ifndef QSF_QBOREL_HPP
#define QSF_QBOREL_HPP

#include <functional>
#include <vector>

#include "qsf/qseries.hpp"
#include "qsf/types.hpp"

namespace qsf {

// Truncated power series sum a_n t^n, n = 0..order. Dense coefficients;
// orders stay small (<= 64) because Borel preimages grow like |p|^{-n^2/2}.
struct FormalSeries {
    std::vector<cx> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    cx at(cx t) const; // Horner evaluation
};

//! Coefficient map a_n -> a_n p^{-n(n-1)/2}.
FormalSeries q_borel(const FormalSeries& f, const Nome& nome);

//! Coefficient-level inverse of q_borel: a_n -> a_n p^{+n(n-1)/2}.
FormalSeries q_borel_inverse(const FormalSeries& g, const Nome& nome);

//! L_p o B_p at series level; returns f unchanged up to rounding.
FormalSeries q_borel_inverse_roundtrip(const FormalSeries& f, const Nome& nome);

// Max coefficient-wise |difference| between B_p (t^m s_p^l f) and
// p^{-m(m-1)/2} tau^m s_p^{l-m} B_p f  (the operational relation).
double borel_operational_check(int m, int l, const FormalSeries& f,
                               const Nome& nome);

//! g(tau) = 1 / ((-p^{2v+2} tau; p)_inf (-p^2 tau; p)_inf).
SeriesValue g_closed_form(cx nu, const Nome& nome, cx tau,
                          const Tolerance& tol = {});

//! g(p tau) - (1 + p^{2v+2} tau)(1 + p^2 tau) g(tau).
cx g_recurrence_residual(cx nu, const Nome& nome, cx tau,
                         const Tolerance& tol = {});

// Coefficients of the unique formal solution f(t) = sum a_n t^n, a_0 = 1, of
//   {p^{2v+5} t^2 s_p^2 + p^{v+2}(p^v + p^-v) t s_p - s_p + 1} f = 0:
//   a_n = -[(p^{2v+n+1} + p^{n+1}) a_{n-1} + p^{2v+2n+1} a_{n-2}] / (1 - p^n).
FormalSeries f_coeffs_recurrence(cx nu, const Nome& nome, int n_max);

// Circle |tau| = radius with `nodes` trapezoid points. radius must stay
// below r_max = min(1/|p^{2v+2}|, 1/|p^2|), the first pole of g.
struct ContourSpec {
    double radius = 0.0;
    int nodes = 64;
    double r_max = 0.0;

    static ContourSpec for_g(cx nu, const Nome& nome, double safety = 0.9,
                             int nodes = 64);
};

// Trapezoidal contour quadrature of (L_p g)(t). The integrand is analytic
// and periodic on the circle, so node doubling converges geometrically;
// doubling stops when two successive levels agree to eps_rel.
cx q_laplace_numeric(const std::function<cx(cx)>& g, const Nome& nome, cx t,
                     const ContourSpec& contour, double eps_rel = 1e-12,
                     int max_nodes = 1 << 14);

// Residue-summed (convergent) form of f, with x t = 1:
//   f(t) = theta_p(-p^{2v+2} t)/((p^{-2v},p;p)_inf) 1phi1(0; p^{1+2v}; p, x)
//        + theta_p(-p^2 t)    /((p^{2v}, p;p)_inf) 1phi1(0; p^{1-2v}; p, p^{-2v} x).
SeriesValue f_resummed(cx nu, const Nome& nome, cx t, const Tolerance& tol = {});

//! Residue of 1/((tau/lambda; p)_inf tau) at tau = lambda p^{-k}:
//! (-1)^{k+1} p^{k(k+1)/2} / ((p;p)_k (p;p)_inf).
cx residue_lemma_value(cx lambda, const Nome& nome, int k);

//! 1/(lambda p^{-k}; p)_inf - (-lambda)^{-k} p^{k(k+1)/2} / ((lambda;p)_inf (p/lambda;p)_k).
cx pochhammer_shift_identity_residual(cx lambda, const Nome& nome, int k,
                                      const Tolerance& tol = {});

} // namespace qsf

#endif
