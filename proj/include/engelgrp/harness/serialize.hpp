#pragma once

#include "json.hpp"

#include "engelgrp/engel.hpp"
#include "engelgrp/group.hpp"
#include "engelgrp/series.hpp"

namespace engelgrp::harness {

// {"order", "degree", "generators": [cycle strings]}
nlohmann::json group_to_json(const Group& g);
// {"kind", "height", "terms": [{"label", "order", "generators"}]}
nlohmann::json series_to_json(const SeriesReport& s);
// Series report plus the section decompositions (factor count, kernel order).
nlohmann::json nonsoluble_to_json(const NonsolubleSeries& s);
nlohmann::json trace_to_json(const EngelTrace& t);

}  // namespace engelgrp::harness
