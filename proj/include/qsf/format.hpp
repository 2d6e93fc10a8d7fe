// SPDX-License-Identifier: Apache-2.0

#ifndef QSF_FORMAT_HPP
#define QSF_FORMAT_HPP

#include <optional>
#include <string>

#include "qsf/types.hpp"

namespace qsf {

//! Shortest-faithful decimal: %.17g.
std::string format_real(double v);

//! "a", "a+bi" or "a-bi" with %.17g components; pure-imaginary prints "bi".
std::string format_complex(cx v);

//! Parse "a", "ai", "a+bi", "a-bi" (decimal reals, optional leading sign).
//! Returns nullopt on malformed input.
std::optional<cx> parse_complex(const std::string& text);

} // namespace qsf

#endif
