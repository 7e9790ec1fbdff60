#pragma once

#include <string>

#include "log_series.hpp"

namespace phx {

// {"dim": d, "order": K or null when exact,
//  "terms": [{"i", "j", "poly": [{"exps": [...], "num", "den"}]}]}
std::string series_to_json(const LogSeries& s, int indent = 1);
LogSeries series_from_json(const std::string& text);

}  // namespace phx
