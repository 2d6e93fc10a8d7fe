// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qsf/qborel.hpp"

using qsf::cx;
using qsf::FormalSeries;
using qsf::Nome;

namespace {

constexpr double pi = std::numbers::pi;

double rel_err(cx got, cx want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

FormalSeries random_series(std::mt19937_64& eng, int order) {
    const auto uni = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    FormalSeries f;
    for (int i = 0; i <= order; ++i) f.coeffs.push_back(cx(uni(), uni()));
    return f;
}

} // namespace

TEST_CASE("q_borel coefficient map") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));

    FormalSeries c1{{cx(1.0, 0.0)}};
    CHECK(qsf::q_borel(c1, nome).coeffs[0] == cx(1.0, 0.0));

    FormalSeries ones{{cx(1.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0)}};
    const auto b = qsf::q_borel(ones, nome);
    CHECK(rel_err(b.coeffs[0], cx(1.0, 0.0)) == 0.0);
    CHECK(rel_err(b.coeffs[1], cx(1.0, 0.0)) < 1e-15);
    CHECK(rel_err(b.coeffs[2], cx(2.0, 0.0)) < 1e-15);

    std::mt19937_64 eng(7);
    const FormalSeries f = random_series(eng, 20);
    const auto g = qsf::q_borel(f, nome);
    for (int n = 0; n <= 20; ++n) {
        const cx want = f.coeffs[n] * std::pow(0.5, -0.5 * n * (n - 1));
        CHECK(rel_err(g.coeffs[n], want) < 1e-13);
    }
}

TEST_CASE("Laplace-after-Borel is the identity on truncated series") {
    const Nome nome = Nome::from_p(cx(0.7, 0.0));
    std::mt19937_64 eng(11);
    const FormalSeries f = random_series(eng, 30);
    const auto back = qsf::q_borel_inverse_roundtrip(f, nome);
    for (int n = 0; n <= 30; ++n)
        CHECK(rel_err(back.coeffs[n], f.coeffs[n]) < 1e-14);

    FormalSeries small{{cx(1.0, 0.0), cx(2.0, 0.0), cx(3.0, 0.0)}};
    const auto rb = qsf::q_borel_inverse_roundtrip(small, Nome::from_p(cx(0.5, 0.0)));
    CHECK(rb.coeffs[0] == cx(1.0, 0.0));
    CHECK(rb.coeffs[1] == cx(2.0, 0.0));
    CHECK(rb.coeffs[2] == cx(3.0, 0.0));
}

TEST_CASE("operational relation is coefficient-exact") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    std::mt19937_64 eng(13);
    const FormalSeries f = random_series(eng, 15);
    CHECK(qsf::borel_operational_check(0, 0, f, nome) == 0.0);
    CHECK(qsf::borel_operational_check(1, 2, f, nome) < 1e-14);
    CHECK(qsf::borel_operational_check(2, 1, f, nome) < 1e-14);
    for (int m = 0; m <= 4; ++m)
        for (int l = 0; l <= 4; ++l)
            CHECK(qsf::borel_operational_check(m, l, f, nome) < 1e-14);
}

TEST_CASE("closed form of the Borel image g") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.3, 0.0);

    CHECK(qsf::g_closed_form(nu, nome, cx(0.0, 0.0)).value == cx(1.0, 0.0));

    const cx tau(0.2, 0.0);
    const cx want = 1.0 /
        (qsf::qpoch_inf(-std::pow(cx(0.5, 0.0), cx(2.6, 0.0)) * tau, cx(0.5, 0.0)).value *
         qsf::qpoch_inf(-0.25 * tau, cx(0.5, 0.0)).value);
    CHECK(rel_err(qsf::g_closed_form(nu, nome, tau).value, want) < 1e-13);

    // tau = -p^{-2} is the first pole of the second factor
    CHECK_THROWS_AS((void)qsf::g_closed_form(nu, nome, cx(-4.0, 0.0)), qsf::pole_error);
}

TEST_CASE("g satisfies its first-order equation") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.3, 0.0);
    const cx g01 = qsf::g_closed_form(nu, nome, cx(0.1, 0.0)).value;
    CHECK(std::abs(qsf::g_recurrence_residual(nu, nome, cx(0.1, 0.0))) <
          1e-13 * std::abs(g01));
    CHECK(std::abs(qsf::g_recurrence_residual(cx(0.5, 0.0), Nome::from_p(cx(0.6, 0.0)),
                                              cx(0.0, 0.3))) < 1e-13);
}

TEST_CASE("recurrence coefficients of the formal solution") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.3, 0.0);

    CHECK(qsf::f_coeffs_recurrence(nu, nome, 0).coeffs ==
          std::vector<cx>{cx(1.0, 0.0)});

    // direct substitution: the t^n coefficient of the functional equation
    const int n_max = 8;
    const FormalSeries a = qsf::f_coeffs_recurrence(nu, nome, n_max);
    const cx p = nome.p;
    const cx p2v = qsf::principal_power(p, 2.0 * nu);
    for (int n = 1; n <= n_max; ++n) {
        const cx pn = qsf::principal_power(p, cx(n, 0.0));
        cx resid = a.coeffs[n] * (cx(1.0, 0.0) - pn);
        resid += (p2v * pn * p + pn * p) * a.coeffs[n - 1];
        if (n >= 2) resid += p2v * pn * pn * p * a.coeffs[n - 2];
        CHECK(std::abs(resid) < 1e-14 * std::max(std::abs(a.coeffs[n]), 1.0));
    }

    // B_p of the coefficients equals the Taylor expansion of g, built
    // independently as the Cauchy product of the two q-binomial series
    const FormalSeries b = qsf::q_borel(a, nome);
    const cx c1 = -qsf::principal_power(p, 2.0 * nu + cx(2.0, 0.0));
    const cx c2 = -p * p;
    for (int n = 0; n <= n_max; ++n) {
        cx taylor(0.0, 0.0);
        for (int m = 0; m <= n; ++m) {
            cx pw1(1.0, 0.0), pw2(1.0, 0.0);
            for (int j = 0; j < m; ++j) pw1 *= c1;
            for (int j = 0; j < n - m; ++j) pw2 *= c2;
            taylor += pw1 / qsf::qpoch_finite(p, p, m) * pw2 /
                      qsf::qpoch_finite(p, p, n - m);
        }
        CHECK(rel_err(b.coeffs[n], taylor) < 1e-11);
    }
}

TEST_CASE("contour Laplace transform: constants and monomials") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.3, 0.0);
    const auto contour = qsf::ContourSpec::for_g(nu, nome);
    CHECK(contour.r_max == doctest::Approx(4.0)); // min(p^{-2.6}, p^{-2}) = 4

    const cx t(0.7, 0.0);
    const auto one = [](cx) { return cx(1.0, 0.0); };
    CHECK(rel_err(qsf::q_laplace_numeric(one, nome, t, contour), cx(1.0, 0.0)) < 1e-11);

    for (int m = 1; m <= 4; ++m) {
        const auto mono = [m](cx tau) {
            cx r(1.0, 0.0);
            for (int j = 0; j < m; ++j) r *= tau;
            return r;
        };
        const cx expect = std::pow(0.5, 0.5 * m * (m - 1)) * std::pow(t, m);
        CHECK(rel_err(qsf::q_laplace_numeric(mono, nome, t, contour), expect) < 1e-10);
    }

    qsf::ContourSpec too_big = contour;
    too_big.radius = contour.r_max;
    CHECK_THROWS_AS((void)qsf::q_laplace_numeric(one, nome, t, too_big),
                    qsf::contour_error);
    CHECK_THROWS_AS((void)qsf::q_laplace_numeric(one, nome, cx(0.0, 0.0), contour),
                    qsf::zero_argument_error);
}

TEST_CASE("residue sum agrees with the contour transform of g") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.3, 0.0);
    const auto contour = qsf::ContourSpec::for_g(nu, nome);
    const auto g = [&](cx tau) { return qsf::g_closed_form(nu, nome, tau).value; };

    for (cx t : {cx(0.7, 0.0), cx(0.35, 0.2), cx(1.2, -0.4)}) {
        const cx quad = qsf::q_laplace_numeric(g, nome, t, contour);
        const cx summed = qsf::f_resummed(nu, nome, t).value;
        CHECK(rel_err(quad, summed) < 1e-9);
    }
}

TEST_CASE("f_resummed edge cases") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    // 2 nu in Z is the resonant case: (p^{-2v};p)_inf vanishes and the second
    // series parameter degenerates to 1, so half-integer orders are excluded
    // along with integers
    CHECK_THROWS_AS((void)qsf::f_resummed(cx(0.5, 0.0), nome, cx(0.7, 0.0)),
                    qsf::integer_order_error);
    CHECK_THROWS_AS((void)qsf::f_resummed(cx(1.0, 0.0), nome, cx(0.7, 0.0)),
                    qsf::integer_order_error);
    CHECK_THROWS_AS((void)qsf::f_resummed(cx(0.3, 0.0), nome, cx(0.0, 0.0)),
                    qsf::zero_argument_error);
    CHECK_NOTHROW((void)qsf::f_resummed(cx(0.25, 0.0), nome, cx(0.7, 0.0)));
}

TEST_CASE("optimal truncation of the divergent series matches the resummation") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.3, 0.0);
    const FormalSeries a = qsf::f_coeffs_recurrence(nu, nome, 40);
    const cx t(0.05, 0.0);
    cx partial(0.0, 0.0);
    double prev = std::numeric_limits<double>::infinity();
    cx tn(1.0, 0.0);
    for (int n = 0; n <= a.order(); ++n) {
        const cx term = a.coeffs[n] * tn;
        if (std::abs(term) > prev) break;
        partial += term;
        prev = std::abs(term);
        tn *= t;
    }
    CHECK(rel_err(partial, qsf::f_resummed(nu, nome, t).value) < 1e-4);
}

TEST_CASE("residue lemma closed form against a small-circle quadrature") {
    const Nome half = Nome::from_p(cx(0.5, 0.0));
    // k = 0 specialization: -1/(p;p)_inf
    CHECK(rel_err(qsf::residue_lemma_value(cx(1.0, 0.0), half, 0),
                  -1.0 / qsf::qpoch_inf(cx(0.5, 0.0), cx(0.5, 0.0)).value) < 1e-14);

    const auto quad_residue = [](cx lambda, const Nome& nome, int k) {
        const cx center = lambda * qsf::principal_power(nome.p, cx(-k, 0.0));
        const double rho = 0.2 * std::abs(center) * (1.0 - std::abs(nome.p));
        const int nodes = 4096;
        cx acc(0.0, 0.0);
        for (int j = 0; j < nodes; ++j) {
            const cx u = std::polar(rho, 2.0 * pi * j / nodes);
            const cx tau = center + u;
            acc += u / (qsf::qpoch_inf(tau / lambda, nome.p).value * tau);
        }
        return acc / static_cast<double>(nodes);
    };

    CHECK(rel_err(qsf::residue_lemma_value(cx(1.0, 0.0), half, 2),
                  quad_residue(cx(1.0, 0.0), half, 2)) < 1e-9);
    const Nome p06 = Nome::from_p(cx(0.6, 0.0));
    CHECK(rel_err(qsf::residue_lemma_value(cx(0.0, 2.0), p06, 1),
                  quad_residue(cx(0.0, 2.0), p06, 1)) < 1e-9);
}

TEST_CASE("Pochhammer shift identity") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    CHECK(std::abs(qsf::pochhammer_shift_identity_residual(cx(0.3, 0.0), nome, 0)) ==
          0.0);
    const double scale3 =
        std::abs(1.0 / qsf::qpoch_inf(cx(0.3, 0.0) * 8.0, cx(0.5, 0.0)).value);
    CHECK(std::abs(qsf::pochhammer_shift_identity_residual(cx(0.3, 0.0), nome, 3)) <
          1e-13 * std::max(scale3, 1.0));
    CHECK(std::abs(qsf::pochhammer_shift_identity_residual(cx(2.0, 1.0), nome, 2)) <
          1e-13);
    // lambda on p^Z is excluded
    CHECK_THROWS_AS(
        (void)qsf::pochhammer_shift_identity_residual(cx(0.25, 0.0), nome, 1),
        qsf::spiral_error);
}
