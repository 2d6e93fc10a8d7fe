// SPDX-License-Identifier: Apache-2.0

#ifndef QSF_TYPES_HPP
#define QSF_TYPES_HPP

#include <complex>
#include <cstdint>

#include "qsf/errors.hpp"

namespace qsf {

using cx = std::complex<double>;

// Base pair (p, q) with q = p^2, 0 < |p| < 1. All connection-formula
// quantities are expressed through p; the q-Bessel series use q.
struct Nome {
    cx p;
    cx q;

    static Nome from_p(cx p);
    static Nome from_q(cx q); // p is the principal square root of q
};

// Series stopping control. A sum stops once `consecutive_small` successive
// terms satisfy |term| <= eps_rel*|partial| + eps_abs.
struct Tolerance {
    double eps_rel = 1e-15;
    double eps_abs = 1e-300;
    int max_terms = 20000;
    int consecutive_small = 3;

    void validate() const; // throws std::invalid_argument on a bad combination
};

struct SeriesValue {
    cx value{};
    int terms_used = 0;
    double tail_bound = 0.0; // bound on the truncation error, same units as value
};

// Value in the form mantissa * exp(log_scale). The theta function at the
// arguments arising in the p -> 1 limits overflows double range by
// thousands of orders of magnitude; ratios of scaled values stay finite.
struct ScaledSeriesValue {
    cx mantissa{};
    double log_scale = 0.0;
    int terms_used = 0;
    double tail_bound = 0.0; // relative to |mantissa|

    // Collapse to a plain value; throws scale_overflow_error if it cannot
    // be represented in double range.
    cx value() const;
};

// Nearest point of the spiral lambda*q^Z to x, in the metric
// d(x, y) = |Log(x/y)| which is invariant under multiplication by q.
struct SpiralLocation {
    cx lambda{};
    long k_nearest = 0;
    double log_distance = 0.0;
};

} // namespace qsf

#endif
