// SPDX-License-Identifier: Apache-2.0

#include "qsf/classical.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qsf {

namespace {

constexpr double pi = std::numbers::pi;
using lcx = std::complex<long double>;

bool near_integer(cx v, double eps = 1e-10) {
    return std::abs(v.real() - std::round(v.real())) < eps && std::abs(v.imag()) < eps;
}

cx i_unit() { return cx(0.0, 1.0); }

} // namespace

cx gamma_fn(cx z) {
    // Lanczos, g = 7, 9 coefficients (Godfrey/Pugh set).
    static const double c[9] = {
        0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,  12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        if (near_integer(z, 1e-13) && z.real() < 0.5)
            throw pole_error("gamma_fn: pole at nonpositive integer");
        return pi / (std::sin(pi * z) * gamma_fn(cx(1.0, 0.0) - z));
    }
    z -= cx(1.0, 0.0);
    cx acc(c[0], 0.0);
    for (int i = 1; i < 9; ++i) acc += c[i] / (z + cx(static_cast<double>(i), 0.0));
    const cx t = z + cx(7.5, 0.0);
    return std::sqrt(2.0 * pi) * std::pow(t, z + cx(0.5, 0.0)) * std::exp(-t) * acc;
}

SeriesValue f01(cx alpha, cx z, const Tolerance& tol) {
    tol.validate();
    if (near_integer(alpha) && alpha.real() < 0.5)
        throw pole_error("f01: parameter is a nonpositive integer");
    // extended-precision accumulation: at |z| ~ 200 the largest term exceeds
    // the sum by ~1e11 and plain double keeps only 5 digits
    lcx term(1.0L, 0.0L);
    lcx sum = term;
    const lcx zl(z.real(), z.imag());
    const lcx al(alpha.real(), alpha.imag());
    int small = 0;
    for (int n = 0; n < tol.max_terms; ++n) {
        const lcx den = (al + lcx(static_cast<long double>(n), 0.0L)) *
                        lcx(static_cast<long double>(n + 1), 0.0L);
        term *= zl / den;
        sum += term;
        const double mag = static_cast<double>(std::abs(term));
        if (mag <= tol.eps_rel * static_cast<double>(std::abs(sum)) + tol.eps_abs) {
            if (++small >= tol.consecutive_small)
                return {cx(static_cast<double>(sum.real()), static_cast<double>(sum.imag())),
                        n + 1, mag};
        } else {
            small = 0;
        }
    }
    throw max_terms_error("f01: no convergence within " + std::to_string(tol.max_terms) +
                          " terms");
}

cx bessel_j(cx nu, cx z, const Tolerance& tol) {
    if (near_integer(nu + cx(1.0, 0.0)) && (nu + cx(1.0, 0.0)).real() < 0.5)
        throw pole_error("bessel_j: nu+1 is a nonpositive integer");
    if (z.real() < 0.0 && z.imag() == 0.0 && !near_integer(nu))
        throw branch_error("bessel_j: z on the negative real cut with non-integer order");
    if (z == cx(0.0, 0.0)) {
        if (nu == cx(0.0, 0.0)) return cx(1.0, 0.0);
        if (nu.real() > 0.0) return cx(0.0, 0.0);
        throw pole_error("bessel_j: divergent at z = 0 for Re nu < 0");
    }
    const cx head = principal_power(z / 2.0, nu) / gamma_fn(nu + cx(1.0, 0.0));
    return head * f01(nu + cx(1.0, 0.0), -z * z / 4.0, tol).value;
}

cx hankel(HankelKind kind, cx nu, cx z, const Tolerance& tol) {
    if (near_integer(nu))
        throw integer_order_error("hankel: order must not be an integer");
    const cx s = std::sin(pi * nu);
    const cx jp = bessel_j(nu, z, tol);
    const cx jm = bessel_j(-nu, z, tol);
    if (kind == HankelKind::h1)
        return i_unit() * std::exp(-nu * pi * i_unit()) / s *
               (jp - std::exp(nu * pi * i_unit()) * jm);
    return -i_unit() * std::exp(nu * pi * i_unit()) / s *
           (jp - std::exp(-nu * pi * i_unit()) * jm);
}

AsymptoticParams AsymptoticParams::at(cx nu, cx z, int s_max) {
    if (s_max < 0 || s_max > 20)
        throw std::invalid_argument("AsymptoticParams: s_max must lie in [0, 20]");
    return AsymptoticParams{s_max, z - nu * pi / 2.0 - cx(pi / 4.0, 0.0)};
}

cx hankel_asymptotic_coeff(cx nu, int s) {
    cx a(1.0, 0.0);
    const cx nu2 = 4.0 * nu * nu;
    for (int k = 1; k <= s; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (nu2 - cx(odd * odd, 0.0)) / (8.0 * k);
    }
    return a;
}

cx hankel_asymptotic(HankelKind kind, cx nu, cx z, const AsymptoticParams& params) {
    const cx sgn = kind == HankelKind::h1 ? i_unit() : -i_unit();
    cx a(1.0, 0.0);
    cx sum = a;
    cx zp(1.0, 0.0);
    const cx nu2 = 4.0 * nu * nu;
    for (int s = 1; s <= params.s_max; ++s) {
        const double odd = 2.0 * s - 1.0;
        a *= (nu2 - cx(odd * odd, 0.0)) / (8.0 * s);
        zp *= sgn / z;
        sum += a * zp;
    }
    return std::sqrt(2.0 / (pi * z)) * std::exp(sgn * params.zeta) * sum;
}

namespace {

LimitScanRow make_row(double p, cx value, cx target) {
    return {p, value, target, std::abs(value - target)};
}

void require_grid(std::span<const double> grid) {
    for (double p : grid)
        if (!(p > 0.0) || p >= 1.0)
            throw invalid_base_error("limit scan: grid values must lie in (0,1)");
}

cx one_phi_one(cx b, cx p, cx x, const Tolerance& tol) {
    const cx a[] = {cx(0.0, 0.0)};
    const cx bs[] = {b};
    return rphis(a, bs, p, x, tol).value;
}

} // namespace

std::vector<LimitScanRow> gamma_limit_scan(cx nu, std::span<const double> p_grid,
                                           const Tolerance& tol) {
    require_grid(p_grid);
    const cx s2 = std::sin(2.0 * pi * nu);
    if (std::abs(s2) < 1e-12)
        throw degenerate_order_error("gamma_limit_scan: sin(2 nu pi) vanishes");
    const cx target = -1.0 / (s2 * gamma_fn(2.0 * nu + cx(1.0, 0.0)));
    std::vector<LimitScanRow> rows;
    rows.reserve(p_grid.size());
    for (double p : p_grid) {
        const cx pc(p, 0.0);
        // log-scale products: the plain ones underflow double past p ~ 1 - 2^-8
        const cx lhalf = qpoch_inf_log(std::sqrt(pc), pc, tol);
        const cx lneg = qpoch_inf_log(principal_power(pc, -2.0 * nu), pc, tol);
        const cx lp = qpoch_inf_log(pc, pc, tol);
        const cx value = std::exp(2.0 * lhalf - lneg - lp + 2.0 * nu * std::log(1.0 - p));
        rows.push_back(make_row(p, value, target));
    }
    return rows;
}

std::vector<LimitScanRow> theta_ratio_limit_scan(cx nu1, cx nu2, cx x,
                                                 std::span<const double> p_grid,
                                                 const Tolerance& tol, bool negated) {
    require_grid(p_grid);
    if (x == cx(0.0, 0.0)) throw zero_argument_error("theta_ratio_limit_scan: x = 0");
    if (x.real() < 0.0 && x.imag() == 0.0)
        throw branch_error("theta_ratio_limit_scan: x on the negative real cut");
    const cx target = negated ? principal_power(-x, nu1 - nu2)
                              : principal_power(x, nu1 - nu2);
    std::vector<LimitScanRow> rows;
    rows.reserve(p_grid.size());
    for (double p : p_grid) {
        const cx pc(p, 0.0);
        const cx scale = 1.0 / ((1.0 - p * p) * x);
        cx a1 = principal_power(pc, nu1) * scale;
        cx a2 = principal_power(pc, nu2) * scale;
        if (negated) {
            a1 = -a1;
            a2 = -a2;
        }
        const cx value = theta_ratio(pc, a1, a2, tol) *
                         principal_power(cx(1.0 - p * p, 0.0), nu2 - nu1);
        rows.push_back(make_row(p, value, target));
    }
    return rows;
}

cx theta_split_identity_residual(cx K, cx x, const Nome& nome, const Tolerance& tol) {
    if (K == cx(0.0, 0.0) || x == cx(0.0, 0.0))
        throw zero_argument_error("theta_split_identity_residual: K and x must be nonzero");
    const cx p = nome.p;
    const cx sp = std::sqrt(p);
    const cx ratio = std::sqrt(K / x); // principal; arg(K/x) in (-pi, pi]
    const ScaledSeriesValue l1 = theta_scaled(p, -sp, tol);
    const ScaledSeriesValue l2 = theta_scaled(p, -K / x, tol);
    const ScaledSeriesValue r1 = theta_scaled(sp, ratio, tol);
    const ScaledSeriesValue r2 = theta_scaled(sp, -ratio, tol);
    const cx lhs = l1.mantissa * l2.mantissa * std::exp(l1.log_scale + l2.log_scale);
    const cx rhs = r1.mantissa * r2.mantissa * std::exp(r1.log_scale + r2.log_scale);
    return lhs - rhs;
}

cx theta_sqrtp_sum_residual(const Nome& nome, const Tolerance& tol) {
    const cx p = nome.p;
    const cx sp = std::sqrt(p);
    const cx via_theta = theta(p, -sp, tol).value;
    cx sum(1.0, 0.0);
    for (int n = 1; n < tol.max_terms; ++n) {
        const cx t = principal_power(sp, cx(static_cast<double>(n) * n, 0.0));
        const cx add = (n % 2 == 0 ? 2.0 : -2.0) * t;
        sum += add;
        if (std::abs(t) < tol.eps_rel + tol.eps_abs) break;
    }
    return via_theta - sum;
}

std::vector<LimitScanRow> theta_power_limit_scan(cx nu, cx x,
                                                 std::span<const double> p_grid,
                                                 const Tolerance& tol,
                                                 bool second_item) {
    require_grid(p_grid);
    if (x == cx(0.0, 0.0)) throw zero_argument_error("theta_power_limit_scan: x = 0");
    if (x.real() < 0.0 && x.imag() == 0.0)
        throw branch_error("theta_power_limit_scan: x on the negative real cut");
    const cx target = second_item
        ? std::exp(-nu * pi * i_unit()) * principal_power(x, -nu)
        : std::exp(nu * pi * i_unit()) * principal_power(x, nu);
    std::vector<LimitScanRow> rows;
    rows.reserve(p_grid.size());
    for (double p : p_grid) {
        const cx pc(p, 0.0);
        const double om = 1.0 - p;
        const cx scale = -1.0 / (x * om * om);
        const cx num = second_item ? pc * pc * scale
                                   : principal_power(pc, 2.0 * nu + 2.0) * scale;
        const cx den = principal_power(pc, nu + 2.0) * scale;
        const cx ratio = theta_ratio(pc, num, den, tol);
        const cx value = ratio * principal_power(cx(om, 0.0),
                                                 second_item ? 2.0 * nu : -2.0 * nu);
        rows.push_back(make_row(p, value, target));
    }
    return rows;
}

std::vector<LimitScanRow> onephione_limit_scan(cx nu, cx x,
                                               std::span<const double> p_grid,
                                               const Tolerance& tol, bool variant) {
    require_grid(p_grid);
    const cx alpha = variant ? cx(1.0, 0.0) - 2.0 * nu : cx(1.0, 0.0) + 2.0 * nu;
    const cx target = f01(alpha, -x, tol).value;
    std::vector<LimitScanRow> rows;
    rows.reserve(p_grid.size());
    for (double p : p_grid) {
        const cx pc(p, 0.0);
        const double om = 1.0 - p;
        cx value;
        if (variant)
            value = one_phi_one(principal_power(pc, cx(1.0, 0.0) - 2.0 * nu), pc,
                                principal_power(pc, -2.0 * nu) * om * om * x, tol);
        else
            value = one_phi_one(principal_power(pc, cx(1.0, 0.0) + 2.0 * nu), pc,
                                om * om * x, tol);
        rows.push_back(make_row(p, value, target));
    }
    return rows;
}

std::vector<LimitScanRow> main_limit_scan(cx nu, cx x,
                                          std::span<const double> p_grid,
                                          const Tolerance& tol) {
    require_grid(p_grid);
    if (x == cx(0.0, 0.0)) throw zero_argument_error("main_limit_scan: x = 0");
    if (x.real() < 0.0 && x.imag() == 0.0)
        throw branch_error("main_limit_scan: x on the negative real cut");
    if (near_integer(2.0 * nu))
        throw integer_order_error("main_limit_scan: 2 nu must not be an integer");

    const cx target = -i_unit() * std::exp(-nu * pi * i_unit()) *
                      hankel(HankelKind::h2, 2.0 * nu, 2.0 * std::sqrt(x), tol);
    std::vector<LimitScanRow> rows;
    rows.reserve(p_grid.size());
    for (double p : p_grid) {
        const cx pc(p, 0.0);
        const double om = 1.0 - p;
        const cx lnom = std::log(cx(om, 0.0));
        const cx scale = -1.0 / (x * om * om);

        // the three factors of each term of the connection formula at
        // t = 1/((1-p)^2 x), each kept O(1):
        const cx lhalf = qpoch_inf_log(std::sqrt(pc), pc, tol);
        const cx lp = qpoch_inf_log(pc, pc, tol);

        const cx a_plus = std::exp(2.0 * lhalf -
                                   qpoch_inf_log(principal_power(pc, -2.0 * nu), pc, tol) -
                                   lp + 2.0 * nu * lnom);
        const cx th_plus = theta_ratio(pc, principal_power(pc, 2.0 * nu + 2.0) * scale,
                                       principal_power(pc, nu + 2.0) * scale, tol) *
                           std::exp(-2.0 * nu * lnom);
        const cx phi_plus = one_phi_one(principal_power(pc, cx(1.0, 0.0) + 2.0 * nu),
                                        pc, om * om * x, tol);

        const cx a_minus = std::exp(2.0 * lhalf -
                                    qpoch_inf_log(principal_power(pc, 2.0 * nu), pc, tol) -
                                    lp - 2.0 * nu * lnom);
        const cx th_minus = theta_ratio(pc, pc * pc * scale,
                                        principal_power(pc, nu + 2.0) * scale, tol) *
                            std::exp(2.0 * nu * lnom);
        const cx phi_minus = one_phi_one(principal_power(pc, cx(1.0, 0.0) - 2.0 * nu), pc,
                                         principal_power(pc, -2.0 * nu) * om * om * x, tol);

        const cx value = a_plus * th_plus * phi_plus + a_minus * th_minus * phi_minus;
        rows.push_back(make_row(p, value, target));
    }
    return rows;
}

std::vector<LimitScanRow> qbessel_classical_limit_scan(QBesselKind kind, cx nu,
                                                       double x,
                                                       std::span<const double> q_grid,
                                                       const Tolerance& tol) {
    require_grid(q_grid);
    if (kind == QBesselKind::j1 && !(x > 0.0 && x < 2.0))
        throw radius_error("qbessel_classical_limit_scan: J1 scan needs x in (0,2)");
    const cx target = kind == QBesselKind::j3 ? bessel_j(nu, cx(2.0 * x, 0.0), tol)
                                              : bessel_j(nu, cx(x, 0.0), tol);
    std::vector<LimitScanRow> rows;
    rows.reserve(q_grid.size());
    for (double q : q_grid) {
        const Nome nome = Nome::from_q(cx(q, 0.0));
        const cx value = j_q_bessel(kind, nu, nome, cx((1.0 - q) * x, 0.0), tol).value;
        rows.push_back(make_row(q, value, target));
    }
    return rows;
}

} // namespace qsf
