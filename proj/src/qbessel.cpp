// SPDX-License-Identifier: Apache-2.0

#include "qsf/qbessel.hpp"

#include <cmath>
#include <string>

namespace qsf {

namespace {

bool near_integer(cx v, double eps = 1e-10) {
    return std::abs(v.real() - std::round(v.real())) < eps && std::abs(v.imag()) < eps;
}

// (q^{v+1};q)_inf / (q;q)_inf
cx prefactor(cx nu, cx q, const Tolerance& tol) {
    return qpoch_inf(principal_power(q, nu + cx(1.0, 0.0)), q, tol).value /
           qpoch_inf(q, q, tol).value;
}

cx power_head(cx nu, cx base) {
    // base^nu for the series head; diverges at 0 when Re nu < 0
    if (base == cx(0.0, 0.0)) {
        if (nu == cx(0.0, 0.0)) return cx(1.0, 0.0);
        if (nu.real() > 0.0) return cx(0.0, 0.0);
        throw pole_error("q-Bessel prefactor x^nu diverges at x = 0 for Re nu < 0");
    }
    return principal_power(base, nu);
}

} // namespace

SeriesValue j_q_bessel(QBesselKind kind, cx nu, const Nome& nome, cx x,
                       const Tolerance& tol) {
    const cx q = nome.q;
    if (kind == QBesselKind::j1 && !(std::abs(x) < 2.0))
        throw radius_error("J1 series converges only for |x| < 2");
    if (x.real() < 0.0 && x.imag() == 0.0 && !near_integer(nu))
        throw branch_error("x^nu is not single valued on the negative real cut");

    const cx b = principal_power(q, nu + cx(1.0, 0.0));
    SeriesValue series;
    cx head;
    switch (kind) {
        case QBesselKind::j1: {
            const cx a[] = {cx(0.0, 0.0), cx(0.0, 0.0)};
            const cx bs[] = {b};
            head = power_head(nu, x / 2.0);
            if (head == cx(0.0, 0.0)) return {cx(0.0, 0.0), 0, 0.0};
            series = rphis(a, bs, q, -x * x / 4.0, tol);
            break;
        }
        case QBesselKind::j2: {
            const cx bs[] = {b};
            head = power_head(nu, x / 2.0);
            if (head == cx(0.0, 0.0)) return {cx(0.0, 0.0), 0, 0.0};
            series = rphis({}, bs, q, -b * x * x / 4.0, tol);
            break;
        }
        case QBesselKind::j3: {
            const cx a[] = {cx(0.0, 0.0)};
            const cx bs[] = {b};
            head = power_head(nu, x);
            if (head == cx(0.0, 0.0)) return {cx(0.0, 0.0), 0, 0.0};
            series = rphis(a, bs, q, q * x * x, tol);
            break;
        }
    }
    const cx pref = prefactor(nu, q, tol) * head;
    return {pref * series.value, series.terms_used,
            std::abs(pref) * series.tail_bound};
}

SeriesValue j3_second_solution(cx nu, const Nome& nome, cx x, const Tolerance& tol) {
    const cx shifted = x * principal_power(nome.p, -nu);
    return j_q_bessel(QBesselKind::j3, -nu, nome, shifted, tol);
}

cx qde_residual(QBesselKind kind, const std::function<cx(cx)>& u, cx nu,
                const Nome& nome, cx x) {
    const cx p = nome.p; // q^{1/2} on the branch fixed by the base pair
    const cx q = nome.q;
    const cx mid = principal_power(p, nu) + principal_power(p, -nu);
    switch (kind) {
        case QBesselKind::j1:
            return u(x * q) - mid * u(x * p) + (1.0 + x * x / 4.0) * u(x);
        case QBesselKind::j2:
            return (1.0 + q * x * x / 4.0) * u(x * q) - mid * u(x * p) + u(x);
        case QBesselKind::j3:
            return u(x * q) -
                   (mid - principal_power(p, cx(2.0, 0.0) - nu) * x * x) * u(x * p) +
                   u(x);
    }
    return cx(0.0, 0.0);
}

cx heqb_residual(const std::function<cx(cx)>& y, cx nu, const Nome& nome, cx x) {
    const cx p = nome.p;
    const cx mid = principal_power(p, nu) + principal_power(p, -nu);
    return y(p * p * x) -
           (mid - x * x * principal_power(p, cx(2.0, 0.0) - nu)) * y(p * x) + y(x);
}

cx hahn_relation_residual(cx nu, const Nome& nome, cx x, const Tolerance& tol) {
    if (!(std::abs(x) < 2.0))
        throw radius_error("Hahn relation check needs |x| < 2");
    const cx j2 = j_q_bessel(QBesselKind::j2, nu, nome, x, tol).value;
    const cx j1 = j_q_bessel(QBesselKind::j1, nu, nome, x, tol).value;
    return j2 - qpoch_inf(-x * x / 4.0, nome.q, tol).value * j1;
}

} // namespace qsf
