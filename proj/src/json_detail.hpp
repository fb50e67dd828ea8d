#pragma once

#include <json.hpp>

#include "dulac/series.hpp"

namespace dulac::detail {

using ojson = nlohmann::ordered_json;

ojson number_json(double v);
ojson complex_json(cplx z);
ojson series_json(const ExpPolySeries& s);
ExpPolySeries series_from_json(const nlohmann::json& j);

}  // namespace dulac::detail
