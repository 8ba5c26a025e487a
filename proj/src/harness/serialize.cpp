#include "engelgrp/harness/serialize.hpp"

namespace engelgrp::harness {

using nlohmann::json;

json group_to_json(const Group& g) {
  json gens = json::array();
  for (const Perm& x : g.generators()) gens.push_back(x.to_cycles());
  return {{"order", g.order()}, {"degree", g.degree()}, {"generators", gens}};
}

json series_to_json(const SeriesReport& s) {
  json terms = json::array();
  for (const SeriesTerm& t : s.terms) {
    json term = group_to_json(t.group);
    term["label"] = t.label;
    terms.push_back(std::move(term));
  }
  return {{"kind", to_string(s.kind)}, {"height", s.height}, {"terms", terms}};
}

json nonsoluble_to_json(const NonsolubleSeries& s) {
  json j = series_to_json(s.report);
  json sections = json::array();
  for (const SectionDecomposition& d : s.sections) {
    json factor_orders = json::array();
    for (const Group& f : d.simple_factors) factor_orders.push_back(f.order());
    sections.push_back({{"level", d.level},
                        {"factors", d.simple_factors.size()},
                        {"factor_orders", factor_orders},
                        {"action_image_order", d.factor_action.image().order()},
                        {"kernel_order", d.kernel_order()}});
  }
  j["sections"] = sections;
  return j;
}

json trace_to_json(const EngelTrace& t) {
  json j{{"element", t.g.to_cycles()},
         {"verdict", to_string(t.verdict)},
         {"set_sizes", t.set_sizes}};
  if (!t.subgroup_orders.empty()) j["subgroup_orders"] = t.subgroup_orders;
  if (t.is_engel()) {
    j["engel_at"] = t.engel_at;
  } else {
    j["cycle_start"] = t.cycle_start;
    j["cycle_length"] = t.cycle_length;
  }
  return j;
}

}  // namespace engelgrp::harness
