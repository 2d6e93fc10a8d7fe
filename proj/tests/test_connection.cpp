// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>

#include "qsf/connection.hpp"

using qsf::cx;
using qsf::Nome;

namespace {

double rel_err(cx got, cx want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

} // namespace

TEST_CASE("z at infinity solves the equation in t") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.3, 0.0);
    const cx p = nome.p;
    const auto z = [&](cx t) { return qsf::z_at_infinity(nu, nome, t); };

    const cx t(0.7, 0.0);
    const cx mid = qsf::principal_power(p, nu) + qsf::principal_power(p, -nu);
    const cx r = z(p * p * t) -
                 (mid - qsf::principal_power(p, cx(-2.0, 0.0) - nu) / t) * z(p * t) +
                 z(t);
    const double scale = std::max({std::abs(z(t)), std::abs(z(p * t)),
                                   std::abs(z(p * p * t))});
    CHECK(std::abs(r) < 1e-9 * scale);

    // t on the zero set of the theta denominator is refused
    const cx bad_t = qsf::principal_power(p, -nu - cx(2.0, 0.0)) * p;
    CHECK_THROWS_AS((void)qsf::z_at_infinity(nu, nome, bad_t), qsf::spiral_error);
    CHECK_THROWS_AS((void)qsf::z_at_infinity(cx(2.0, 0.0), nome, t),
                    qsf::integer_order_error);
}

TEST_CASE("connection formula residual at sample points") {
    {
        const Nome nome = Nome::from_p(cx(0.5, 0.0));
        const auto rep = qsf::connection_residual(cx(0.3, 0.0), nome, cx(1.4, 0.0));
        CHECK(rep.residual_rel < 1e-8);
        CHECK(rep.spiral.log_distance > 0.0);
    }
    {
        const Nome nome = Nome::from_p(cx(0.4, 0.0));
        const auto rep =
            qsf::connection_residual(cx(0.45, 0.1), nome, cx(0.9, -0.2));
        CHECK(rep.residual_rel < 1e-8);
    }
    {
        // x exactly on the excluded spiral p^{nu+2} p^Z
        const Nome nome = Nome::from_p(cx(0.5, 0.0));
        const cx x = qsf::principal_power(nome.p, cx(2.3, 0.0)) * nome.p;
        CHECK_THROWS_AS((void)qsf::connection_residual(cx(0.3, 0.0), nome, x),
                        qsf::spiral_error);
    }
}

TEST_CASE("J± solve the equation at infinity and form a fundamental system") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.3, 0.0);
    const cx p = nome.p;
    const cx lambda(1.0, 0.0);
    const cx t0 = 1.0 / cx(0.6, 0.0);

    const auto jp = [&](cx t) { return qsf::j_plus(nu, lambda, nome, 1.0 / t); };
    const auto jm = [&](cx t) { return qsf::j_minus(-nu, lambda, nome, 1.0 / t); };
    const cx mid = qsf::principal_power(p, nu) + qsf::principal_power(p, -nu);
    for (const auto& fn : {std::function<cx(cx)>(jp), std::function<cx(cx)>(jm)}) {
        const cx r = fn(p * p * t0) -
                     (mid - qsf::principal_power(p, cx(-2.0, 0.0) - nu) / t0) * fn(p * t0) +
                     fn(t0);
        const double scale = std::max({std::abs(fn(t0)), std::abs(fn(p * t0)),
                                       std::abs(fn(p * p * t0))});
        CHECK(std::abs(r) < 1e-9 * scale);
    }

    const cx det = jp(t0) * jm(p * t0) - jm(t0) * jp(p * t0);
    CHECK(std::abs(det) > 1e-8);

    // the lambda shift rescales J± by p^{∓nu}; products C±J± stay put
    const cx shifted = qsf::j_plus(nu, lambda * p, nome, cx(0.6, 0.0));
    const cx base = qsf::j_plus(nu, lambda, nome, cx(0.6, 0.0));
    CHECK(rel_err(shifted, qsf::principal_power(p, -nu) * base) < 1e-12);
}

TEST_CASE("elliptic coefficients: p-ellipticity in t, covariance in lambda") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.3, 0.0);
    const cx lambda(1.0, 0.0);
    const cx t(0.37, 0.0);
    const cx p = nome.p;

    const auto a = qsf::c_coeffs(nu, lambda, nome, t);
    const auto b = qsf::c_coeffs(nu, lambda, nome, p * t);
    CHECK(rel_err(b.c_plus, a.c_plus) < 1e-10);
    CHECK(rel_err(b.c_minus, a.c_minus) < 1e-10);

    const auto c = qsf::c_coeffs(nu, lambda * p, nome, t);
    CHECK(rel_err(c.c_plus, qsf::principal_power(p, nu) * a.c_plus) < 1e-10);
    CHECK(rel_err(c.c_minus, a.c_minus / qsf::principal_power(p, nu)) < 1e-10);

    // lambda t on the theta zero set -p^Z
    CHECK_THROWS_AS(
        (void)qsf::c_coeffs(nu, cx(-1.0, 0.0) / t, nome, t), qsf::spiral_error);
}

TEST_CASE("rewritten connection formula: residual and lambda invariance") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.3, 0.0);
    const cx x(1.4, 0.0);

    const cx lhs = qsf::h_nu(nu, nome, 1.0 / x);
    const cx half = qsf::qpoch_inf(std::sqrt(nome.p), nome.p).value;
    CHECK(rel_err(lhs, half * half * qsf::z_at_infinity(nu, nome, 1.0 / x)) < 1e-14);

    cx first;
    const cx lambdas[] = {cx(1.0, 0.0), cx(1.7, 0.0), cx(2.0, 1.0)};
    for (std::size_t i = 0; i < 3; ++i) {
        const cx r = qsf::rewritten_connection_residual(nu, lambdas[i], nome, x);
        CHECK(std::abs(r) < 1e-8 * std::abs(lhs));
        const auto cc = qsf::c_coeffs(nu, lambdas[i], nome, 1.0 / x);
        const cx rhs = cc.c_plus * qsf::j_plus(nu, lambdas[i], nome, x) +
                       cc.c_minus * qsf::j_minus(-nu, lambdas[i], nome, x);
        if (i == 0)
            first = rhs;
        else
            CHECK(rel_err(rhs, first) < 1e-9);
    }

    // x on the lambda spiral [-lambda; p]
    CHECK_THROWS_AS((void)qsf::rewritten_connection_residual(
                        nu, cx(1.0, 0.0), nome, -nome.p * nome.p),
                    qsf::spiral_error);
}

TEST_CASE("J+ head: the series factor tends to one toward the origin") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx nu(0.3, 0.0);
    const cx lambda(2.3, 0.0); // keep the tiny x off the lambda spiral
    const cx x(1e-4, 0.0);
    const cx ratio = qsf::theta_ratio(nome.p, lambda * qsf::principal_power(nome.p, nu) / x,
                                      lambda / x);
    const cx pref = qsf::qpoch_inf(qsf::principal_power(nome.p, nu + cx(1.0, 0.0)),
                                   nome.p).value /
                    qsf::qpoch_inf(nome.p, nome.p).value;
    const cx head = qsf::j_plus(nu, lambda, nome, x) / ratio;
    CHECK(rel_err(head, pref) < 1e-3); // 1phi1(x) = 1 + O(x)
}

TEST_CASE("theta-quotient q-difference equation u(px) = p^nu u(x)") {
    const Nome nome = Nome::from_p(cx(0.5, 0.0));
    const cx lambda(1.0, 0.0);
    const cx x(0.8, 0.0);

    const cx u = qsf::theta_ratio(nome.p, lambda * qsf::principal_power(nome.p, cx(0.3, 0.0)) / x,
                                  lambda / x);
    CHECK(std::abs(qsf::theta_ratio_qde_residual(cx(0.3, 0.0), lambda, nome, x)) <
          1e-11 * std::abs(u));

    CHECK(qsf::theta_ratio_qde_residual(cx(0.0, 0.0), lambda, nome, x) == cx(0.0, 0.0));

    const cx u1 = qsf::theta_ratio(nome.p, lambda * nome.p / x, lambda / x);
    CHECK(std::abs(qsf::theta_ratio_qde_residual(cx(1.0, 0.0), lambda, nome, x)) <
          1e-11 * std::abs(u1));
}
