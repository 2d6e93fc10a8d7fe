// SPDX-License-Identifier: Apache-2.0

#include "qsf/qborel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qsf {

namespace {

constexpr double pi = std::numbers::pi;

bool near_integer(cx v, double eps = 1e-10) {
    return std::abs(v.real() - std::round(v.real())) < eps && std::abs(v.imag()) < eps;
}

double tri(int n) { return 0.5 * static_cast<double>(n) * (n - 1); }

void require_finite(const FormalSeries& f, const char* who) {
    for (cx c : f.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw scale_overflow_error(std::string(who) +
                                       ": coefficient left double range");
}

// pole scan for one factor 1/(-c tau; p)_inf: zero iff -c tau = p^{-k}, k >= 0
void check_pole(cx c, cx tau, cx p, const char* which) {
    cx w = -c * tau;
    for (int k = 0; k <= 512; ++k) {
        if (std::abs(w - cx(1.0, 0.0)) < 1e-9)
            throw pole_error(std::string("g_closed_form: tau at pole index ") +
                             std::to_string(k) + " of the " + which + " factor");
        if (std::abs(w) < 0.5) break; // remaining p^k w stay away from 1
        w *= p;
    }
}

} // namespace

cx FormalSeries::at(cx t) const {
    cx acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

FormalSeries q_borel(const FormalSeries& f, const Nome& nome) {
    FormalSeries g;
    g.coeffs.resize(f.coeffs.size());
    for (int n = 0; n <= f.order(); ++n)
        g.coeffs[n] = f.coeffs[n] * principal_power(nome.p, cx(-tri(n), 0.0));
    require_finite(g, "q_borel");
    return g;
}

FormalSeries q_borel_inverse(const FormalSeries& g, const Nome& nome) {
    FormalSeries f;
    f.coeffs.resize(g.coeffs.size());
    for (int n = 0; n <= g.order(); ++n)
        f.coeffs[n] = g.coeffs[n] * principal_power(nome.p, cx(tri(n), 0.0));
    require_finite(f, "q_borel_inverse");
    return f;
}

FormalSeries q_borel_inverse_roundtrip(const FormalSeries& f, const Nome& nome) {
    return q_borel_inverse(q_borel(f, nome), nome);
}

double borel_operational_check(int m, int l, const FormalSeries& f, const Nome& nome) {
    if (m < 0 || l < 0)
        throw std::invalid_argument("borel_operational_check: m, l must be nonnegative");
    const cx p = nome.p;
    const int n_max = f.order() + m;

    // both sides reduce to a_{n-m} p^E with integer exponents; powering the
    // two exponent expressions through one routine keeps the comparison
    // meaningful at the |p|^{-n(n-1)/2} scales involved
    const auto ppow = [&](long e) {
        return principal_power(p, cx(static_cast<double>(e), 0.0));
    };
    const auto t = [](long n) { return n * (n - 1) / 2; };

    double worst = 0.0;
    for (int n = m; n <= n_max; ++n) {
        const long lhs_exp = static_cast<long>(l) * (n - m) - t(n);
        const long rhs_exp = -t(m) - t(n - m) +
                             static_cast<long>(l - m) * (n - m);
        const cx diff = f.coeffs[n - m] * (ppow(lhs_exp) - ppow(rhs_exp));
        worst = std::max(worst, std::abs(diff));
    }
    return worst;
}

SeriesValue g_closed_form(cx nu, const Nome& nome, cx tau, const Tolerance& tol) {
    const cx p = nome.p;
    if (tau == cx(0.0, 0.0)) return {cx(1.0, 0.0), 0, 0.0};
    const cx c1 = principal_power(p, 2.0 * nu + cx(2.0, 0.0));
    const cx c2 = p * p;
    check_pole(c1, tau, p, "p^{2v+2}");
    check_pole(c2, tau, p, "p^2");
    const SeriesValue d1 = qpoch_inf(-c1 * tau, p, tol);
    const SeriesValue d2 = qpoch_inf(-c2 * tau, p, tol);
    SeriesValue out;
    out.value = 1.0 / (d1.value * d2.value);
    out.terms_used = d1.terms_used + d2.terms_used;
    out.tail_bound = std::abs(out.value) *
        (d1.tail_bound / std::max(std::abs(d1.value), 1e-300) +
         d2.tail_bound / std::max(std::abs(d2.value), 1e-300));
    return out;
}

cx g_recurrence_residual(cx nu, const Nome& nome, cx tau, const Tolerance& tol) {
    const cx p = nome.p;
    const cx lhs = g_closed_form(nu, nome, p * tau, tol).value;
    const cx rhs = (1.0 + principal_power(p, 2.0 * nu + cx(2.0, 0.0)) * tau) *
                   (1.0 + p * p * tau) * g_closed_form(nu, nome, tau, tol).value;
    return lhs - rhs;
}

FormalSeries f_coeffs_recurrence(cx nu, const Nome& nome, int n_max) {
    if (n_max < 0)
        throw std::invalid_argument("f_coeffs_recurrence: order must be nonnegative");
    const cx p = nome.p;
    FormalSeries f;
    f.coeffs.assign(static_cast<std::size_t>(n_max) + 1, cx(0.0, 0.0));
    f.coeffs[0] = cx(1.0, 0.0);
    cx pn(1.0, 0.0); // p^n
    for (int n = 1; n <= n_max; ++n) {
        pn *= p;
        const cx denom = cx(1.0, 0.0) - pn;
        if (std::abs(denom) < 1e-250)
            throw degenerate_recurrence_error(
                "f_coeffs_recurrence: 1 - p^n vanishes at n = " + std::to_string(n));
        const cx p2v = principal_power(p, 2.0 * nu);
        const cx t1 = (p2v * pn * p + pn * p) * f.coeffs[n - 1];
        const cx t2 = n >= 2 ? p2v * pn * pn * p * f.coeffs[n - 2] : cx(0.0, 0.0);
        f.coeffs[n] = -(t1 + t2) / denom;
    }
    require_finite(f, "f_coeffs_recurrence");
    return f;
}

ContourSpec ContourSpec::for_g(cx nu, const Nome& nome, double safety, int nodes) {
    const double r0 = std::min(
        1.0 / std::abs(principal_power(nome.p, 2.0 * nu + cx(2.0, 0.0))),
        1.0 / std::abs(nome.p * nome.p));
    return ContourSpec{safety * r0, nodes, r0};
}

cx q_laplace_numeric(const std::function<cx(cx)>& g, const Nome& nome, cx t,
                     const ContourSpec& contour, double eps_rel, int max_nodes) {
    if (t == cx(0.0, 0.0)) throw zero_argument_error("q_laplace_numeric: t = 0");
    if (contour.r_max > 0.0 && contour.radius >= contour.r_max)
        throw contour_error("q_laplace_numeric: contour radius " +
                            std::to_string(contour.radius) + " reaches the pole bound " +
                            std::to_string(contour.r_max));
    if (contour.nodes < 16 || (contour.nodes & (contour.nodes - 1)) != 0)
        throw std::invalid_argument("q_laplace_numeric: nodes must be a power of two >= 16");

    const double r = contour.radius;
    double peak = 0.0;
    const auto integrand = [&](double phase) {
        const cx tau = r * std::exp(cx(0.0, phase));
        const cx v = g(tau) * theta(nome.p, t / tau).value;
        peak = std::max(peak, std::abs(v));
        return v;
    };

    // (1/2 pi i) int g theta dtau/tau  =  mean over the circle
    int m = contour.nodes;
    cx mean(0.0, 0.0);
    for (int j = 0; j < m; ++j) mean += integrand(2.0 * pi * j / m);
    mean /= static_cast<double>(m);

    while (m < max_nodes) {
        cx odd(0.0, 0.0);
        for (int j = 0; j < m; ++j) odd += integrand(2.0 * pi * (j + 0.5) / m);
        odd /= static_cast<double>(m);
        const cx refined = 0.5 * (mean + odd);
        // the node mean cancels down from the integrand scale, so rounding
        // noise of order eps*peak is the honest convergence floor
        if (std::abs(refined - mean) <=
            eps_rel * std::max(std::abs(refined), 1e-300) + 4e-15 * peak) {
            return refined;
        }
        mean = refined;
        m *= 2;
    }
    throw nonconvergent_error("q_laplace_numeric: node doubling reached " +
                              std::to_string(max_nodes) + " without settling");
}

SeriesValue f_resummed(cx nu, const Nome& nome, cx t, const Tolerance& tol) {
    if (t == cx(0.0, 0.0)) throw zero_argument_error("f_resummed: t = 0");
    // 2 nu in Z makes the two pole ladders of g collide (resonance): one of
    // (p^{-2v};p)_inf, (p^{2v};p)_inf vanishes and a series parameter hits 1
    if (near_integer(2.0 * nu))
        throw integer_order_error(
            "f_resummed: 2 nu must not be an integer (resonant pole ladders)");
    const cx p = nome.p;
    const cx x = 1.0 / t;

    const cx th1 = theta(p, -principal_power(p, 2.0 * nu + cx(2.0, 0.0)) * t, tol).value;
    const cx th2 = theta(p, -p * p * t, tol).value;
    const cx c1 = qpoch_inf(principal_power(p, -2.0 * nu), p, tol).value *
                  qpoch_inf(p, p, tol).value;
    const cx c2 = qpoch_inf(principal_power(p, 2.0 * nu), p, tol).value *
                  qpoch_inf(p, p, tol).value;

    const cx zero[] = {cx(0.0, 0.0)};
    const cx b1[] = {principal_power(p, cx(1.0, 0.0) + 2.0 * nu)};
    const cx b2[] = {principal_power(p, cx(1.0, 0.0) - 2.0 * nu)};
    const SeriesValue s1 = rphis(zero, b1, p, x, tol);
    const SeriesValue s2 = rphis(zero, b2, p, principal_power(p, -2.0 * nu) * x, tol);

    SeriesValue out;
    out.value = th1 / c1 * s1.value + th2 / c2 * s2.value;
    out.terms_used = s1.terms_used + s2.terms_used;
    out.tail_bound = std::abs(th1 / c1) * s1.tail_bound +
                     std::abs(th2 / c2) * s2.tail_bound;
    return out;
}

cx residue_lemma_value(cx lambda, const Nome& nome, int k) {
    if (lambda == cx(0.0, 0.0))
        throw zero_argument_error("residue_lemma_value: lambda must be nonzero");
    if (k < 0) throw std::invalid_argument("residue_lemma_value: k must be nonnegative");
    const cx p = nome.p;
    const double sign = (k % 2 == 0) ? -1.0 : 1.0; // (-1)^{k+1}
    return sign * principal_power(p, cx(0.5 * k * (k + 1), 0.0)) /
           (qpoch_finite(p, p, k) * qpoch_inf(p, p).value);
}

cx pochhammer_shift_identity_residual(cx lambda, const Nome& nome, int k,
                                      const Tolerance& tol) {
    if (k < 0)
        throw std::invalid_argument("pochhammer_shift_identity_residual: k >= 0 required");
    const cx p = nome.p;
    if (q_spiral_locate(cx(1.0, 0.0), p, lambda).log_distance < 1e-12)
        throw spiral_error("pochhammer_shift_identity_residual: lambda on p^Z");
    const cx pk = principal_power(p, cx(-static_cast<double>(k), 0.0));
    const cx lhs = 1.0 / qpoch_inf(lambda * pk, p, tol).value;
    const cx rhs = principal_power(-lambda, cx(-static_cast<double>(k), 0.0)) *
                   principal_power(p, cx(0.5 * k * (k + 1), 0.0)) /
                   (qpoch_inf(lambda, p, tol).value * qpoch_finite(p / lambda, p, k));
    return lhs - rhs;
}

} // namespace qsf
