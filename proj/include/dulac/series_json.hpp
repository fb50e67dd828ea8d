#pragma once

#include <string>
#include <string_view>

#include "dulac/series.hpp"

namespace dulac {

ExpPolySeries parse_series(std::string_view text);
// Canonical compact JSON; parse(serialize(s)) == s bit for bit.
std::string serialize_series(const ExpPolySeries& s);
// Coefficients printed as fixed multiples of 1e-9, for byte comparison.
std::string serialize_series_rounded(const ExpPolySeries& s);

}  // namespace dulac
