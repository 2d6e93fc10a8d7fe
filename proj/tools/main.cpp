// SPDX-License-Identifier: Apache-2.0
//
// qsf -- point evaluation, identity-verification suites with JSON reports,
// and p -> 1 limit-scan CSV emission.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qsf/classical.hpp"
#include "qsf/connection.hpp"
#include "qsf/format.hpp"
#include "qsf/qbessel.hpp"
#include "qsf/qborel.hpp"
#include "qsf/qseries.hpp"
#include "qsf/verify.hpp"

namespace {

using qsf::cx;

struct Flags {
    std::string p, q, nu = "0.3", x, lambda = "1";
    std::string fn, suite = "all", target, out;
    double tol = -1.0;
    std::uint64_t seed = 42;
    int kmax = 7;
    bool json = false;
};

cx parse_or_die(const std::string& text, const char* flag) {
    const auto v = qsf::parse_complex(text);
    if (!v) {
        std::cerr << "cannot parse " << flag << " value '" << text
                  << "' as a complex literal (a, ai, a+bi, a-bi)\n";
        std::exit(2);
    }
    return *v;
}

// --p wins when both are given; theta-style functions take the base directly
qsf::Nome nome_from(const Flags& f) {
    if (!f.p.empty()) return qsf::Nome::from_p(parse_or_die(f.p, "--p"));
    if (!f.q.empty()) return qsf::Nome::from_q(parse_or_die(f.q, "--q"));
    return qsf::Nome::from_p(cx(0.5, 0.0));
}

cx base_from(const Flags& f) {
    if (!f.q.empty()) return parse_or_die(f.q, "--q");
    if (!f.p.empty()) return parse_or_die(f.p, "--p");
    return cx(0.5, 0.0);
}

qsf::Tolerance eval_tolerance(const Flags& f) {
    qsf::Tolerance tol;
    if (f.tol > 0.0) tol.eps_rel = f.tol;
    return tol;
}

void print_eval(const qsf::SeriesValue& v, bool as_json) {
    if (as_json) {
        nlohmann::ordered_json j;
        j["value_re"] = v.value.real();
        j["value_im"] = v.value.imag();
        j["terms_used"] = v.terms_used;
        j["tail_bound"] = v.tail_bound;
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "value = " << qsf::format_complex(v.value) << "\n"
              << "terms_used = " << v.terms_used << "\n"
              << "tail_bound = " << qsf::format_real(v.tail_bound) << "\n";
}

int run_eval(const Flags& f) {
    if (f.x.empty()) {
        std::cerr << "eval requires --x\n";
        return 2;
    }
    const cx x = parse_or_die(f.x, "--x");
    const cx nu = parse_or_die(f.nu, "--nu");
    const cx lambda = parse_or_die(f.lambda, "--lambda");
    const qsf::Tolerance tol = eval_tolerance(f);

    qsf::SeriesValue out;
    if (f.fn == "theta") {
        out = qsf::theta(base_from(f), x, tol);
    } else if (f.fn == "qpoch") {
        out = qsf::qpoch_inf(x, base_from(f), tol);
    } else if (f.fn == "qgamma") {
        const cx q = base_from(f);
        if (q.imag() != 0.0) {
            std::cerr << "qgamma needs a real base in (0,1)\n";
            return 2;
        }
        out = qsf::q_gamma(q.real(), x, tol);
    } else if (f.fn == "rphis") {
        const qsf::Nome nome = nome_from(f);
        const cx a[] = {cx(0.0, 0.0)};
        const cx b[] = {qsf::principal_power(nome.p, cx(1.0, 0.0) + 2.0 * nu)};
        out = qsf::rphis(a, b, nome.p, x, tol);
    } else if (f.fn == "j1" || f.fn == "j2" || f.fn == "j3") {
        const auto kind = f.fn == "j1"   ? qsf::QBesselKind::j1
                          : f.fn == "j2" ? qsf::QBesselKind::j2
                                         : qsf::QBesselKind::j3;
        out = qsf::j_q_bessel(kind, nu, nome_from(f), x, tol);
    } else if (f.fn == "g") {
        out = qsf::g_closed_form(nu, nome_from(f), x, tol);
    } else if (f.fn == "f") {
        out = qsf::f_resummed(nu, nome_from(f), x, tol);
    } else if (f.fn == "z") {
        out = {qsf::z_at_infinity(nu, nome_from(f), x, tol), 0, 0.0};
    } else if (f.fn == "hnu") {
        out = {qsf::h_nu(nu, nome_from(f), x, tol), 0, 0.0};
    } else if (f.fn == "jplus") {
        out = {qsf::j_plus(nu, lambda, nome_from(f), x, tol), 0, 0.0};
    } else if (f.fn == "jminus") {
        out = {qsf::j_minus(nu, lambda, nome_from(f), x, tol), 0, 0.0};
    } else if (f.fn == "cplus") {
        out = {qsf::c_coeffs(nu, lambda, nome_from(f), x, tol).c_plus, 0, 0.0};
    } else if (f.fn == "cminus") {
        out = {qsf::c_coeffs(nu, lambda, nome_from(f), x, tol).c_minus, 0, 0.0};
    } else if (f.fn == "besselj") {
        out = {qsf::bessel_j(nu, x, tol), 0, 0.0};
    } else if (f.fn == "hankel1") {
        out = {qsf::hankel(qsf::HankelKind::h1, nu, x, tol), 0, 0.0};
    } else if (f.fn == "hankel2") {
        out = {qsf::hankel(qsf::HankelKind::h2, nu, x, tol), 0, 0.0};
    } else {
        std::cerr << "unknown --fn '" << f.fn << "'\n";
        return 2;
    }
    print_eval(out, f.json);
    return 0;
}

int run_verify(const Flags& f) {
    qsf::SuiteConfig cfg;
    if (!f.p.empty()) {
        const cx p = parse_or_die(f.p, "--p");
        if (p.imag() != 0.0) {
            std::cerr << "verify needs a real --p\n";
            return 2;
        }
        cfg.p = p.real();
    }
    cfg.nu = parse_or_die(f.nu, "--nu");
    cfg.seed = f.seed;
    if (f.tol >= 0.0) cfg.threshold_override = f.tol;

    const auto t0 = std::chrono::steady_clock::now();
    qsf::VerifyReport report = qsf::run_suite(f.suite, cfg);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    // wall_time_ms stays 0 in the report so repeated runs are byte-identical
    const std::string json = qsf::report_to_json(report);

    if (!f.out.empty()) {
        std::ofstream os(f.out, std::ios::binary);
        if (!os) {
            std::cerr << "cannot open " << f.out << " for writing\n";
            return 2;
        }
        os << json;
    }
    if (f.json || f.out.empty()) std::cout << json;

    int failures = 0;
    for (const auto& c : report.cases)
        if (!c.pass) {
            ++failures;
            std::cerr << "FAIL " << c.name << " residual=" << qsf::format_real(c.residual)
                      << " threshold=" << qsf::format_real(c.threshold) << "\n";
        }
    std::cerr << "suite=" << report.suite << " cases=" << report.cases.size()
              << " failures=" << failures << " elapsed_ms=" << ms << "\n";
    return failures == 0 ? 0 : 1;
}

int run_limit_scan(const Flags& f) {
    const cx nu = parse_or_die(f.nu, "--nu");
    const cx x = f.x.empty() ? cx(1.0, 0.0) : parse_or_die(f.x, "--x");
    if (f.kmax < 2) {
        std::cerr << "--kmax must be at least 2\n";
        return 2;
    }
    std::vector<double> grid;
    for (int k = 2; k <= f.kmax; ++k) grid.push_back(1.0 - std::pow(2.0, -k));
    const qsf::Tolerance tol;

    std::vector<qsf::LimitScanRow> rows;
    if (f.target == "gamma")
        rows = qsf::gamma_limit_scan(nu, grid, tol);
    else if (f.target == "theta-ratio")
        rows = qsf::theta_ratio_limit_scan(2.0 * nu, nu, x, grid, tol);
    else if (f.target == "theta-power")
        rows = qsf::theta_power_limit_scan(nu, x, grid, tol);
    else if (f.target == "onephione")
        rows = qsf::onephione_limit_scan(nu, x, grid, tol);
    else if (f.target == "main")
        rows = qsf::main_limit_scan(nu, x, grid, tol);
    else if (f.target == "qbessel")
        rows = qsf::qbessel_classical_limit_scan(qsf::QBesselKind::j3, nu, x.real(),
                                                 grid, tol);
    else {
        std::cerr << "unknown --target '" << f.target << "'\n";
        return 2;
    }

    std::string csv = "k,p,value_re,value_im,target_re,target_im,abs_error\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        csv += std::to_string(i + 2) + "," + qsf::format_real(r.p) + "," +
               qsf::format_real(r.value.real()) + "," + qsf::format_real(r.value.imag()) +
               "," + qsf::format_real(r.target.real()) + "," +
               qsf::format_real(r.target.imag()) + "," + qsf::format_real(r.abs_error) +
               "\n";
    }
    if (!f.out.empty()) {
        std::ofstream os(f.out, std::ios::binary);
        if (!os) {
            std::cerr << "cannot open " << f.out << " for writing\n";
            return 2;
        }
        os << csv;
    } else {
        std::cout << csv;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-series, q-Bessel and connection-formula toolkit"};
    app.require_subcommand(1);
    Flags f;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--p", f.p, "base p (complex literal), q = p^2");
        cmd->add_option("--q", f.q, "base q (complex literal)");
        cmd->add_option("--nu", f.nu, "order nu (complex literal)");
        cmd->add_option("--x", f.x, "argument (complex literal)");
        cmd->add_option("--lambda", f.lambda, "spiral anchor lambda");
        cmd->add_option("--tol", f.tol, "tolerance override");
        cmd->add_option("--seed", f.seed, "random seed");
        cmd->add_option("--kmax", f.kmax, "largest k of the grid p = 1 - 2^-k");
        cmd->add_option("--out", f.out, "output file");
        cmd->add_flag("--json", f.json, "JSON output on stdout");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate a registered function");
    eval->add_option("--fn", f.fn, "function name")->required();
    add_common(eval);

    CLI::App* verify = app.add_subcommand("verify", "run an identity suite");
    verify->add_option("--suite", f.suite,
                       "core | qbessel | borel | connection | limits | all");
    add_common(verify);

    CLI::App* scan = app.add_subcommand("limit-scan", "emit a p->1 scan as CSV");
    scan->add_option("--target", f.target,
                     "gamma | theta-ratio | theta-power | onephione | main | qbessel")
        ->required();
    add_common(scan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(eval)) return run_eval(f);
        if (app.got_subcommand(verify)) return run_verify(f);
        if (app.got_subcommand(scan)) return run_limit_scan(f);
    } catch (const qsf::error& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
