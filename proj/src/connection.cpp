// SPDX-License-Identifier: Apache-2.0

#include "qsf/connection.hpp"

#include <cmath>
#include <string>

namespace qsf {

namespace {

bool near_integer(cx v, double eps = 1e-10) {
    return std::abs(v.real() - std::round(v.real())) < eps && std::abs(v.imag()) < eps;
}

void require_order(cx nu, const char* who) {
    // 2 nu in Z collapses the (p^{±2v};p)_inf normalizations (resonance)
    if (near_integer(2.0 * nu))
        throw integer_order_error(std::string(who) +
                                  ": 2 nu must not be an integer");
}

// distance of w from the zero spiral -p^Z of theta_p
double zero_spiral_distance(cx p, cx w) {
    return q_spiral_locate(cx(-1.0, 0.0), p, w).log_distance;
}

void gate_theta_arg(cx p, cx w, double gate, const char* who) {
    if (zero_spiral_distance(p, w) < gate)
        throw spiral_error(std::string(who) + ": theta argument within " +
                           std::to_string(gate) + " of the zero spiral");
}

cx one_phi_one(cx b, cx p, cx x, const Tolerance& tol) {
    const cx zero[] = {cx(0.0, 0.0)};
    const cx bs[] = {b};
    return rphis(zero, bs, p, x, tol).value;
}

} // namespace

cx z_at_infinity(cx nu, const Nome& nome, cx t, const Tolerance& tol,
                 double spiral_gate) {
    if (t == cx(0.0, 0.0)) throw zero_argument_error("z_at_infinity: t = 0");
    require_order(nu, "z_at_infinity");
    const cx p = nome.p;
    const cx w = -principal_power(p, nu + cx(2.0, 0.0)) * t;
    gate_theta_arg(p, w, spiral_gate, "z_at_infinity");
    return f_resummed(nu, nome, t, tol).value / theta(p, w, tol).value;
}

ConnectionReport connection_residual(cx nu, const Nome& nome, cx x,
                                     const Tolerance& tol, double spiral_gate) {
    if (x == cx(0.0, 0.0)) throw zero_argument_error("connection_residual: x = 0");
    require_order(nu, "connection_residual");
    const cx p = nome.p;
    const cx anchor = principal_power(p, nu + cx(2.0, 0.0));

    ConnectionReport rep;
    rep.point_x = x;
    rep.spiral = q_spiral_locate(anchor, p, x);
    if (rep.spiral.log_distance < spiral_gate)
        throw spiral_error("connection_residual: x within " + std::to_string(spiral_gate) +
                           " of the excluded spiral");

    const cx t = 1.0 / x;

    // left side: contour quadrature of L_p g, independent of the residue sum
    const ContourSpec contour = ContourSpec::for_g(nu, nome);
    const auto g = [&](cx tau) { return g_closed_form(nu, nome, tau, tol).value; };
    const cx f_contour = q_laplace_numeric(g, nome, t, contour);
    rep.lhs = f_contour / theta(p, -anchor * t, tol).value;

    // right side, exactly as the connection formula displays it
    const cx den = theta(p, -anchor * t, tol).value;
    const cx th_plus = theta(p, -principal_power(p, 2.0 * nu + cx(2.0, 0.0)) * t, tol).value;
    const cx th_minus = theta(p, -p * p * t, tol).value;
    const cx c_plus = qpoch_inf(principal_power(p, -2.0 * nu), p, tol).value *
                      qpoch_inf(p, p, tol).value;
    const cx c_minus = qpoch_inf(principal_power(p, 2.0 * nu), p, tol).value *
                       qpoch_inf(p, p, tol).value;
    rep.rhs_term_plus = th_plus / (den * c_plus) *
                        one_phi_one(principal_power(p, cx(1.0, 0.0) + 2.0 * nu), p, x, tol);
    rep.rhs_term_minus = th_minus / (den * c_minus) *
                         one_phi_one(principal_power(p, cx(1.0, 0.0) - 2.0 * nu), p,
                                     principal_power(p, -2.0 * nu) * x, tol);

    const double scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs_term_plus),
                                   std::abs(rep.rhs_term_minus), 1e-300});
    rep.residual_rel =
        std::abs(rep.lhs - (rep.rhs_term_plus + rep.rhs_term_minus)) / scale;
    return rep;
}

cx j_plus(cx nu, cx lambda, const Nome& nome, cx x, const Tolerance& tol,
          double spiral_gate) {
    if (x == cx(0.0, 0.0) || lambda == cx(0.0, 0.0))
        throw zero_argument_error("j_plus: x and lambda must be nonzero");
    const cx p = nome.p;
    gate_theta_arg(p, lambda / x, spiral_gate, "j_plus");
    const cx pref = qpoch_inf(principal_power(p, nu + cx(1.0, 0.0)), p, tol).value /
                    qpoch_inf(p, p, tol).value;
    const cx ratio =
        theta_ratio(p, lambda * principal_power(p, nu) / x, lambda / x, tol);
    return pref * ratio *
           one_phi_one(principal_power(p, cx(1.0, 0.0) + 2.0 * nu), p, x, tol);
}

cx j_minus(cx nu, cx lambda, const Nome& nome, cx x, const Tolerance& tol,
           double spiral_gate) {
    if (x == cx(0.0, 0.0) || lambda == cx(0.0, 0.0))
        throw zero_argument_error("j_minus: x and lambda must be nonzero");
    const cx p = nome.p;
    gate_theta_arg(p, lambda / x, spiral_gate, "j_minus");
    const cx pref = qpoch_inf(principal_power(p, nu + cx(1.0, 0.0)), p, tol).value /
                    qpoch_inf(p, p, tol).value;
    const cx ratio =
        theta_ratio(p, lambda * principal_power(p, nu) / x, lambda / x, tol);
    return pref * ratio *
           one_phi_one(principal_power(p, cx(1.0, 0.0) + 2.0 * nu), p,
                       principal_power(p, 2.0 * nu) * x, tol);
}

EllipticCoeffPair c_coeffs(cx nu, cx lambda, const Nome& nome, cx t,
                           const Tolerance& tol, double spiral_gate) {
    if (t == cx(0.0, 0.0) || lambda == cx(0.0, 0.0))
        throw zero_argument_error("c_coeffs: t and lambda must be nonzero");
    require_order(nu, "c_coeffs");
    const cx p = nome.p;
    const cx pnu = principal_power(p, nu);
    const cx anchor = principal_power(p, nu + cx(2.0, 0.0));

    for (cx w : {-anchor * t, lambda * t, lambda * pnu * t, lambda / pnu * t})
        gate_theta_arg(p, w, spiral_gate, "c_coeffs");

    const cx half2 = qpoch_inf(std::sqrt(p), p, tol).value;
    const cx numc = half2 * half2;

    EllipticCoeffPair out;
    out.lambda = lambda;
    out.t = t;
    out.c_plus = numc /
                 (qpoch_inf(principal_power(p, nu + cx(1.0, 0.0)), p, tol).value *
                  qpoch_inf(principal_power(p, -2.0 * nu), p, tol).value) *
                 theta_ratio(p, -principal_power(p, 2.0 * nu + cx(2.0, 0.0)) * t,
                             -anchor * t, tol) *
                 theta_ratio(p, lambda * t, lambda * pnu * t, tol);
    out.c_minus = numc /
                  (qpoch_inf(principal_power(p, cx(1.0, 0.0) - nu), p, tol).value *
                   qpoch_inf(principal_power(p, 2.0 * nu), p, tol).value) *
                  theta_ratio(p, -p * p * t, -anchor * t, tol) *
                  theta_ratio(p, lambda * t, lambda / pnu * t, tol);
    return out;
}

cx h_nu(cx nu, const Nome& nome, cx t, const Tolerance& tol, double spiral_gate) {
    const cx half = qpoch_inf(std::sqrt(nome.p), nome.p, tol).value;
    return half * half * z_at_infinity(nu, nome, t, tol, spiral_gate);
}

cx rewritten_connection_residual(cx nu, cx lambda, const Nome& nome, cx x,
                                 const Tolerance& tol, double spiral_gate) {
    const cx t = 1.0 / x;
    const cx lhs = h_nu(nu, nome, t, tol, spiral_gate);
    const EllipticCoeffPair c = c_coeffs(nu, lambda, nome, t, tol, spiral_gate);
    const cx rhs = c.c_plus * j_plus(nu, lambda, nome, x, tol, spiral_gate) +
                   c.c_minus * j_minus(-nu, lambda, nome, x, tol, spiral_gate);
    return lhs - rhs;
}

cx theta_ratio_qde_residual(cx nu, cx lambda, const Nome& nome, cx x,
                            const Tolerance& tol, double spiral_gate) {
    if (x == cx(0.0, 0.0) || lambda == cx(0.0, 0.0))
        throw zero_argument_error("theta_ratio_qde_residual: x and lambda nonzero");
    const cx p = nome.p;
    const cx pnu = principal_power(p, nu);
    for (cx xx : {x, p * x}) {
        gate_theta_arg(p, lambda * pnu / xx, spiral_gate, "theta_ratio_qde_residual");
        gate_theta_arg(p, lambda / xx, spiral_gate, "theta_ratio_qde_residual");
    }
    const auto u = [&](cx xx) {
        return theta_ratio(p, lambda * pnu / xx, lambda / xx, tol);
    };
    return u(p * x) - pnu * u(x);
}

} // namespace qsf
