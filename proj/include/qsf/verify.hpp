// SPDX-License-Identifier: Apache-2.0
//
// Identity-verification suites: every defining identity of the library
// (theta identities, q-difference equations, Borel/Laplace relations, the
// connection formula and its rewritten form, the p -> 1 limit chain) run
// as seeded, machine-checkable residual cases with fixed thresholds.

#ifndef QSF_VERIFY_HPP
#define QSF_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qsf/types.hpp"

namespace qsf {

struct VerifyCase {
    std::string name;
    std::string inputs;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCase> cases;
    std::uint64_t seed = 0;
    // Kept deterministic (0) so identical invocations produce byte-identical
    // reports; measured wall time goes to stderr instead.
    std::int64_t wall_time_ms = 0;

    bool all_pass() const;
};

struct SuiteConfig {
    double p = 0.5;
    cx nu = cx(0.3, 0.0);
    std::uint64_t seed = 42;
    std::optional<double> threshold_override; // forces every case threshold
};

//! suite in {core, qbessel, borel, connection, limits, all}.
VerifyReport run_suite(const std::string& suite, const SuiteConfig& cfg);

std::string report_to_json(const VerifyReport& report);

// Deterministic uniform double in [0,1) from the raw engine stream;
// std::uniform_real_distribution is implementation-defined and would break
// byte-identical reports across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    cx annulus(double r_lo, double r_hi); // uniform angle, uniform radius

private:
    std::mt19937_64 eng_;
};

} // namespace qsf

#endif
