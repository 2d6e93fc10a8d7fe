// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qsf/classical.hpp"
#include "qsf/qbessel.hpp"

using qsf::cx;
using qsf::Nome;
using qsf::QBesselKind;

namespace {

double rel_err(cx got, cx want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// fresh summation of the defining series with (-1)^n q^{n(n-1)/2} weights
cx j3_oracle(cx nu, cx q, cx x) {
    const cx b = std::exp((nu + 1.0) * std::log(q));
    cx sum(0.0, 0.0);
    for (int n = 0; n <= 80; ++n) {
        const double sgn = n % 2 == 0 ? 1.0 : -1.0;
        cx qt(1.0, 0.0);
        for (int j = 0; j < n * (n - 1) / 2; ++j) qt *= q;
        cx arg(1.0, 0.0);
        for (int j = 0; j < n; ++j) arg *= q * x * x;
        sum += sgn * qt * arg /
               (qsf::qpoch_finite(b, q, n) * qsf::qpoch_finite(q, q, n));
    }
    const cx pref = qsf::qpoch_inf(b, q).value / qsf::qpoch_inf(q, q).value;
    return pref * std::exp(nu * std::log(x)) * sum;
}

double qde_scale(const std::function<cx(cx)>& u, const Nome& nome, cx x) {
    return std::max({std::abs(u(x)), std::abs(u(x * nome.p)), std::abs(u(x * nome.q)),
                     1e-300});
}

} // namespace

TEST_CASE("J3 point values") {
    const Nome nome = Nome::from_q(cx(0.25, 0.0));
    CHECK(qsf::j_q_bessel(QBesselKind::j3, cx(0.0, 0.0), nome, cx(0.0, 0.0)).value ==
          cx(1.0, 0.0));
    CHECK(qsf::j_q_bessel(QBesselKind::j3, cx(1.0, 0.0), nome, cx(0.0, 0.0)).value ==
          cx(0.0, 0.0));

    const cx got = qsf::j_q_bessel(QBesselKind::j3, cx(0.4, 0.0), nome, cx(0.3, 0.0)).value;
    CHECK(rel_err(got, j3_oracle(cx(0.4, 0.0), cx(0.25, 0.0), cx(0.3, 0.0))) < 1e-12);
}

TEST_CASE("J1 radius and branch guards") {
    const Nome nome = Nome::from_q(cx(0.25, 0.0));
    CHECK_THROWS_AS(
        (void)qsf::j_q_bessel(QBesselKind::j1, cx(0.3, 0.0), nome, cx(2.5, 0.0)),
        qsf::radius_error);
    CHECK_THROWS_AS(
        (void)qsf::j_q_bessel(QBesselKind::j3, cx(0.3, 0.0), nome, cx(-0.5, 0.0)),
        qsf::branch_error);
    // integer order is fine on the cut
    CHECK_NOTHROW(
        (void)qsf::j_q_bessel(QBesselKind::j3, cx(1.0, 0.0), nome, cx(-0.5, 0.0)));
}

TEST_CASE("second solution composes the defining substitution") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.4, 0.0);
    const cx x(0.2, 0.0);
    const cx direct = qsf::j3_second_solution(nu, nome, x).value;
    const cx composed =
        qsf::j_q_bessel(QBesselKind::j3, -nu, nome,
                        x * qsf::principal_power(nome.p, -nu)).value;
    CHECK(rel_err(direct, composed) < 1e-14);

    CHECK_THROWS_AS((void)qsf::j3_second_solution(cx(0.4, 0.0), nome, cx(0.0, 0.0)),
                    qsf::pole_error);
    CHECK(qsf::j3_second_solution(cx(-0.4, 0.0), nome, cx(0.0, 0.0)).value ==
          cx(0.0, 0.0));
}

TEST_CASE("q-difference equations certify the series solutions") {
    const cx nu(0.3, 0.0);
    const Nome nome = Nome::from_q(cx(0.25, 0.0));

    const auto u3 = [&](cx xx) {
        return qsf::j_q_bessel(QBesselKind::j3, nu, nome, xx).value;
    };
    const cx r3 = qsf::qde_residual(QBesselKind::j3, u3, nu, nome, cx(0.4, 0.0));
    CHECK(std::abs(r3) < 1e-10 * qde_scale(u3, nome, cx(0.4, 0.0)));

    const auto zero_fn = [](cx) { return cx(0.0, 0.0); };
    CHECK(qsf::qde_residual(QBesselKind::j3, zero_fn, nu, nome, cx(0.4, 0.0)) ==
          cx(0.0, 0.0));

    const auto u1 = [&](cx xx) {
        return qsf::j_q_bessel(QBesselKind::j1, nu, nome, xx).value;
    };
    const cx r1 = qsf::qde_residual(QBesselKind::j1, u1, nu, nome, cx(0.5, 0.0));
    CHECK(std::abs(r1) < 1e-10 * qde_scale(u1, nome, cx(0.5, 0.0)));

    const auto u2 = [&](cx xx) {
        return qsf::j_q_bessel(QBesselKind::j2, nu, nome, xx).value;
    };
    const cx r2 = qsf::qde_residual(QBesselKind::j2, u2, nu, nome, cx(0.5, 0.0));
    CHECK(std::abs(r2) < 1e-10 * qde_scale(u2, nome, cx(0.5, 0.0)));
}

TEST_CASE("base-p equation holds for both solutions around the origin") {
    const cx nu(0.3, 0.0);
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx x(0.4, 0.0);

    const auto y = [&](cx xx) {
        return qsf::j_q_bessel(QBesselKind::j3, nu, nome, xx).value;
    };
    CHECK(std::abs(qsf::heqb_residual(y, nu, nome, x)) < 1e-10 * qde_scale(y, nome, x));

    const auto y2 = [&](cx xx) { return qsf::j3_second_solution(nu, nome, xx).value; };
    CHECK(std::abs(qsf::heqb_residual(y2, nu, nome, x)) <
          1e-10 * qde_scale(y2, nome, x));

    const auto zf = [](cx) { return cx(0.0, 0.0); };
    CHECK(qsf::heqb_residual(zf, nu, nome, x) == cx(0.0, 0.0));
}

TEST_CASE("Hahn relation between J1 and J2") {
    const Nome nome = Nome::from_q(cx(0.25, 0.0));
    const cx r = qsf::hahn_relation_residual(cx(0.3, 0.0), nome, cx(0.5, 0.0));
    const double scale =
        std::abs(qsf::j_q_bessel(QBesselKind::j2, cx(0.3, 0.0), nome, cx(0.5, 0.0)).value);
    CHECK(std::abs(r) < 1e-12 * scale);

    CHECK(std::abs(qsf::hahn_relation_residual(cx(1.0, 0.0), nome, cx(1.0, 0.0))) <
          1e-12);
    CHECK_THROWS_AS(
        (void)qsf::hahn_relation_residual(cx(0.3, 0.0), nome, cx(2.0, 0.0)),
        qsf::radius_error);
}

TEST_CASE("classical limit of J3 along q = 1 - 2^-k") {
    std::vector<double> grid;
    for (int k = 2; k <= 7; ++k) grid.push_back(1.0 - std::pow(2.0, -k));
    const auto rows = qsf::qbessel_classical_limit_scan(QBesselKind::j3, cx(0.3, 0.0),
                                                        0.5, grid, {});
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].abs_error <= rows[i - 1].abs_error);
    CHECK(rows.back().abs_error < 5e-2 * std::abs(rows.back().target));
}

TEST_CASE("fundamental system witness: Casorati determinant") {
    const cx nu(0.3, 0.0);
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx x(0.4, 0.0);
    const cx u1 = qsf::j_q_bessel(QBesselKind::j3, nu, nome, x).value;
    const cx u2 = qsf::j_q_bessel(QBesselKind::j3, nu, nome, nome.p * x).value;
    const cx v1 = qsf::j3_second_solution(nu, nome, x).value;
    const cx v2 = qsf::j3_second_solution(nu, nome, nome.p * x).value;
    CHECK(std::abs(u1 * v2 - v1 * u2) > 1e-8);
}

TEST_CASE("random-sample q-difference residuals stay uniformly small") {
    std::mt19937_64 eng(99);
    const auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const cx nu(uni(0.05, 0.95), uni(-0.2, 0.2));
        const Nome nome = Nome::from_q(cx(uni(0.1, 0.8), 0.0));
        const cx x = std::polar(uni(0.2, 1.2), uni(-2.6, 2.6));
        const auto u = [&](cx xx) {
            return qsf::j_q_bessel(QBesselKind::j3, nu, nome, xx).value;
        };
        worst = std::max(worst, std::abs(qsf::qde_residual(QBesselKind::j3, u, nu, nome,
                                                           x)) /
                                    qde_scale(u, nome, x));
    }
    CHECK(worst < 1e-10);
}
