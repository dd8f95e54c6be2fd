#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tropbilevel {

/// Exact rational number. All solver arithmetic runs on this type.
using Rational = mpq_class;

/// Parses a decimal string such as "-0.1", "+3", "2.50" or "1e-2" into an
/// exact rational. A Unicode minus sign (U+2212) is accepted in place of '-'.
/// Throws std::invalid_argument on malformed input.
Rational parse_decimal(std::string_view text);

/// Renders a rational as a terminating decimal when the denominator has
/// only factors 2 and 5, otherwise as "p/q".
std::string to_string(const Rational& value);

/// True when the value has a terminating decimal expansion.
bool is_terminating_decimal(const Rational& value);

}  // namespace tropbilevel
