// SPDX-License-Identifier: Apache-2.0

#include "qsf/format.hpp"

#include <cstdio>
#include <cstdlib>

namespace qsf {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(cx v) {
    if (v.imag() == 0.0) return format_real(v.real());
    if (v.real() == 0.0) return format_real(v.imag()) + "i";
    const std::string im = format_real(std::abs(v.imag()));
    return format_real(v.real()) + (v.imag() < 0.0 ? "-" : "+") + im + "i";
}

std::optional<cx> parse_complex(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const char* s = text.c_str();
    char* end = nullptr;
    const double first = std::strtod(s, &end);
    if (end == s) return std::nullopt;

    if (*end == '\0') return cx(first, 0.0); // "a"
    if (*end == 'i' && *(end + 1) == '\0') return cx(0.0, first); // "ai"

    // "a+bi" / "a-bi": strtod consumes the sign of b
    const char* s2 = end;
    char* end2 = nullptr;
    const double second = std::strtod(s2, &end2);
    if (end2 == s2) return std::nullopt;
    if (*end2 == 'i' && *(end2 + 1) == '\0') return cx(first, second);
    return std::nullopt;
}

} // namespace qsf
