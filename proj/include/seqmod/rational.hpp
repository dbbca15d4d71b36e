#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace seqmod {

/// Exact rational numbers; every coefficient in the arithmetic backend is one of these.
using Rational = mpq_class;

/// Parses `n`, `-n`, `p/q`, `-p/q`. Returns nullopt on anything else (including q = 0).
std::optional<Rational> parse_rational(std::string_view text);

std::string to_string(const Rational& value);

}  // namespace seqmod
