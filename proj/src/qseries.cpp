// SPDX-License-Identifier: Apache-2.0

#include "qsf/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsf {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

std::string fmt_cx(cx v) {
    return "(" + std::to_string(v.real()) + "," + std::to_string(v.imag()) + ")";
}

void require_base(cx q) {
    const double aq = std::abs(q);
    if (!(aq > 0.0) || aq >= 1.0 || !std::isfinite(aq))
        throw invalid_base_error("base must satisfy 0 < |q| < 1, got " + fmt_cx(q));
}

// exp with a guard: exponents below double range collapse to 0.
cx exp_or_zero(cx e) {
    if (e.real() < -745.0) return cx(0.0, 0.0);
    return std::exp(e);
}

struct BilateralSum {
    cx mantissa;
    double log_scale;
    int terms_used;
    double tail_bound;
};

// sum_{n in Z} exp(T(n) lq + n lx), T(n) = n(n-1)/2, as mantissa*exp(scale).
// The shift n -> n + k recenters the sum so the largest term is O(1):
// equivalently the classical reduction theta(x) = q^{k(k-1)/2} x^k theta(q^k x)
// carried out on exponents, so no intermediate can overflow. Terms are
// added in {m, 1-m} pairs; on the zero spiral the leading pair cancels
// exactly.
BilateralSum bilateral_theta_sum(cx lq, cx lx, const Tolerance& tol) {
    const double a = -lq.real(); // = -ln|q| > 0
    double kstar = 0.5 + lx.real() / a;
    // clamp against pathological inputs; |k| ~ 1e17 would lose all phase
    kstar = std::clamp(kstar, -1e15, 1e15);
    const double k = std::floor(kstar + 0.5);
    const cx shift = (k * (k - 1.0) / 2.0) * lq + k * lx;
    const cx lx2 = lx + k * lq;

    const auto term = [&](double m) {
        return exp_or_zero((m * (m - 1.0) / 2.0) * lq + m * lx2);
    };

    cx s(0.0, 0.0);
    double peak = 0.0;
    int used = 0;
    int small_in_a_row = 0;
    double last_mag = 0.0, prev_mag = 0.0;
    for (int m = 1;; ++m) {
        const cx tp = term(static_cast<double>(m));
        const cx tn = term(static_cast<double>(1 - m));
        s += tp;
        s += tn;
        used += 2;
        prev_mag = last_mag;
        last_mag = std::abs(tp) + std::abs(tn);
        peak = std::max(peak, last_mag);
        const double gate = tol.eps_rel * std::max(peak, std::abs(s)) + tol.eps_abs;
        if (last_mag <= gate) {
            if (++small_in_a_row >= tol.consecutive_small) break;
        } else {
            small_in_a_row = 0;
        }
        if (used >= tol.max_terms)
            throw max_terms_error("theta sum did not settle within " +
                                  std::to_string(tol.max_terms) + " terms");
    }
    double ratio = prev_mag > 0.0 ? std::min(last_mag / prev_mag, 0.95) : 0.0;
    const double tail = last_mag / (1.0 - ratio);
    return {s * std::exp(cx(0.0, shift.imag())), shift.real(), used, tail};
}

} // namespace

Nome Nome::from_p(cx p) {
    require_base(p);
    return Nome{p, p * p};
}

Nome Nome::from_q(cx q) {
    require_base(q);
    return Nome{std::sqrt(q), q};
}

void Tolerance::validate() const {
    if (!(eps_rel > 0.0) && !(eps_abs > 0.0))
        throw std::invalid_argument("Tolerance: eps_rel or eps_abs must be positive");
    if (max_terms < 8)
        throw std::invalid_argument("Tolerance: max_terms must be at least 8");
    if (consecutive_small < 1)
        throw std::invalid_argument("Tolerance: consecutive_small must be positive");
}

cx ScaledSeriesValue::value() const {
    const double total = log_scale + std::log(std::max(std::abs(mantissa),
                                                       std::numeric_limits<double>::min()));
    if (total > 707.0)
        throw scale_overflow_error("scaled value exceeds double range, log scale " +
                                   std::to_string(total));
    return mantissa * std::exp(log_scale);
}

cx qpoch_finite(cx a, cx q, int n) {
    if (n < 0) throw std::invalid_argument("qpoch_finite: n must be nonnegative");
    cx r(1.0, 0.0);
    cx f = a;
    for (int i = 0; i < n; ++i) {
        r *= (cx(1.0, 0.0) - f);
        f *= q;
    }
    return r;
}

SeriesValue qpoch_inf(cx a, cx q, const Tolerance& tol) {
    tol.validate();
    require_base(q);
    if (a == cx(0.0, 0.0)) return {cx(1.0, 0.0), 0, 0.0};
    cx r(1.0, 0.0);
    cx f = a;
    const double aq = std::abs(q);
    for (int n = 0; n < tol.max_terms; ++n) {
        const double af = std::abs(f);
        // remaining factors multiply in 1 + O(f/(1-|q|))
        if (af / (1.0 - aq) <= tol.eps_rel + tol.eps_abs) {
            const double tail = std::abs(r) * af / (1.0 - aq);
            return {r, n, tail};
        }
        r *= (cx(1.0, 0.0) - f);
        f *= q;
    }
    throw max_terms_error("qpoch_inf: |a q^n| did not fall below tolerance within " +
                          std::to_string(tol.max_terms) + " factors");
}

SeriesValue qpoch_multi(std::span<const cx> as, cx q, const Tolerance& tol) {
    require_base(q);
    SeriesValue out{cx(1.0, 0.0), 0, 0.0};
    double rel_tail = 0.0;
    for (cx a : as) {
        const SeriesValue v = qpoch_inf(a, q, tol);
        out.value *= v.value;
        out.terms_used += v.terms_used;
        rel_tail += v.tail_bound / std::max(std::abs(v.value),
                                            std::numeric_limits<double>::min());
    }
    out.tail_bound = std::abs(out.value) * rel_tail;
    return out;
}

cx qpoch_inf_log(cx a, cx q, const Tolerance& tol) {
    tol.validate();
    require_base(q);
    if (a == cx(0.0, 0.0)) return cx(0.0, 0.0);
    cx sum(0.0, 0.0);
    cx f = a;
    for (int n = 0; n < tol.max_terms; ++n) {
        if (std::abs(f) <= tol.eps_rel + tol.eps_abs) return sum;
        const cx factor = cx(1.0, 0.0) - f;
        if (factor == cx(0.0, 0.0))
            throw pole_error("qpoch_inf_log: factor (1 - a q^" + std::to_string(n) +
                             ") vanishes");
        sum += std::log(factor);
        f *= q;
    }
    throw max_terms_error("qpoch_inf_log: no convergence within " +
                          std::to_string(tol.max_terms) + " factors");
}

ScaledSeriesValue theta_scaled(cx q, cx x, const Tolerance& tol) {
    tol.validate();
    require_base(q);
    if (x == cx(0.0, 0.0)) throw zero_argument_error("theta: x must be nonzero");

    const cx eps = -std::log(q); // Re > 0
    const double re_inv_eps = (1.0 / eps).real();
    // Dual base is exp(-4 pi^2 / eps); switch whenever it beats |q| clearly.
    const bool use_dual = 4.0 * pi2 * re_inv_eps > -std::log(std::abs(q)) + 2.0;

    BilateralSum s{};
    cx prefactor_log(0.0, 0.0);
    if (use_dual) {
        const cx L = std::log(x) + eps / 2.0;
        const cx lq_dual = -4.0 * pi2 / eps;
        const cx lx_dual = -2.0 * pi2 / eps - cx(0.0, 2.0 * pi) * L / eps;
        prefactor_log = 0.5 * std::log(2.0 * pi / eps) + L * L / (2.0 * eps);
        s = bilateral_theta_sum(lq_dual, lx_dual, tol);
    } else {
        s = bilateral_theta_sum(std::log(q), std::log(x), tol);
    }
    ScaledSeriesValue out;
    out.mantissa = s.mantissa * std::exp(cx(0.0, prefactor_log.imag()));
    out.log_scale = s.log_scale + prefactor_log.real();
    out.terms_used = s.terms_used;
    out.tail_bound = s.tail_bound;
    return out;
}

SeriesValue theta(cx q, cx x, const Tolerance& tol) {
    const ScaledSeriesValue s = theta_scaled(q, x, tol);
    const cx v = s.value();
    return {v, s.terms_used, s.tail_bound * std::exp(s.log_scale)};
}

cx theta_ratio(cx q, cx x1, cx x2, const Tolerance& tol) {
    const ScaledSeriesValue a = theta_scaled(q, x1, tol);
    const ScaledSeriesValue b = theta_scaled(q, x2, tol);
    return (a.mantissa / b.mantissa) * std::exp(a.log_scale - b.log_scale);
}

cx principal_power(cx x, cx nu) {
    if (x == cx(0.0, 0.0)) {
        if (nu.real() > 0.0) return cx(0.0, 0.0);
        throw zero_argument_error("principal_power: 0 raised to exponent with Re <= 0");
    }
    if (nu == cx(0.0, 0.0)) return cx(1.0, 0.0);
    return std::exp(nu * std::log(x)); // std::log gives Arg in (-pi, pi]
}

SeriesValue q_gamma(double q, cx x, const Tolerance& tol) {
    if (!(q > 0.0) || q >= 1.0)
        throw invalid_base_error("q_gamma: q must lie in (0,1)");
    const double re_round = std::round(x.real());
    if (re_round <= 0.0 && std::abs(x.real() - re_round) < 1e-12 &&
        std::abs(x.imag()) < 1e-12)
        throw pole_error("q_gamma: pole at nonpositive integer x = " +
                         std::to_string(static_cast<long>(re_round)));
    const SeriesValue num = qpoch_inf(cx(q, 0.0), cx(q, 0.0), tol);
    const SeriesValue den = qpoch_inf(principal_power(cx(q, 0.0), x), cx(q, 0.0), tol);
    SeriesValue out;
    out.value = num.value / den.value *
                principal_power(cx(1.0 - q, 0.0), cx(1.0, 0.0) - x);
    out.terms_used = num.terms_used + den.terms_used;
    out.tail_bound = std::abs(out.value) *
        (num.tail_bound / std::max(std::abs(num.value), 1e-300) +
         den.tail_bound / std::max(std::abs(den.value), 1e-300));
    return out;
}

SeriesValue rphis(std::span<const cx> a, std::span<const cx> b, cx q, cx x,
                  const Tolerance& tol) {
    tol.validate();
    require_base(q);
    const int confluence = 1 + static_cast<int>(b.size()) - static_cast<int>(a.size());

    cx term(1.0, 0.0);
    cx sum = term;
    cx qn(1.0, 0.0); // q^n
    int small_in_a_row = 0;
    double prev_mag = 1.0;
    for (int n = 0; n < tol.max_terms; ++n) {
        // ratio term_{n+1}/term_n
        cx num(1.0, 0.0);
        for (cx ai : a) num *= (cx(1.0, 0.0) - ai * qn);
        cx den(1.0, 0.0);
        for (cx bj : b) den *= (cx(1.0, 0.0) - bj * qn);
        den *= (cx(1.0, 0.0) - q * qn); // extends (q;q)_n
        if (num == cx(0.0, 0.0)) {
            // a numerator Pochhammer reached zero: the series terminates here
            return {sum, n + 1, 0.0};
        }
        if (den == cx(0.0, 0.0))
            throw denominator_pole_error(
                "rphis: denominator Pochhammer vanishes at n = " + std::to_string(n + 1));
        cx cf(1.0, 0.0);
        const cx base = -qn;
        for (int e = 0; e < std::abs(confluence); ++e) cf *= base;
        if (confluence < 0) cf = cx(1.0, 0.0) / cf;
        term *= num / den * cf * x;
        qn *= q;
        sum += term;

        const double mag = std::abs(term);
        if (mag <= tol.eps_rel * std::abs(sum) + tol.eps_abs) {
            if (++small_in_a_row >= tol.consecutive_small) {
                const double ratio = std::min(mag / std::max(prev_mag, 1e-300), 0.95);
                return {sum, n + 1, mag / (1.0 - ratio)};
            }
        } else {
            small_in_a_row = 0;
        }
        prev_mag = mag;
    }
    throw max_terms_error("rphis: no convergence within " +
                          std::to_string(tol.max_terms) + " terms");
}

SpiralLocation q_spiral_locate(cx lambda, cx q, cx x) {
    require_base(q);
    if (x == cx(0.0, 0.0)) throw zero_argument_error("q_spiral_locate: x must be nonzero");
    if (lambda == cx(0.0, 0.0))
        throw zero_argument_error("q_spiral_locate: lambda must be nonzero");

    const cx L = std::log(x) - std::log(lambda);
    const cx l = std::log(q);
    // least-squares projection of L onto the line R*l, then a local scan
    const double k0 = std::round((L * std::conj(l)).real() / std::norm(l));

    const auto dist = [&](double k) {
        cx w = L - k * l;
        double im = std::remainder(w.imag(), 2.0 * pi);
        return std::hypot(w.real(), im);
    };
    long best_k = static_cast<long>(k0);
    double best = dist(k0);
    for (int dk = -64; dk <= 64; ++dk) {
        const double k = k0 + dk;
        const double d = dist(k);
        if (d < best) {
            best = d;
            best_k = static_cast<long>(k);
        }
    }
    return SpiralLocation{lambda, best_k, best};
}

} // namespace qsf
