#include "engelgrp/harness/recipe.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "engelgrp/errors.hpp"

namespace engelgrp::harness {

using nlohmann::json;

namespace {

// A cycle string that failed to parse, remembered so the corpus loader can
// point at its column.
class CycleTextError : public ParseError {
public:
  CycleTextError(const ParseError& e, std::string text)
      : ParseError(e.what(), e.offset()), text_(std::move(text)) {}
  const std::string& text() const { return text_; }

private:
  std::string text_;
};

Perm parse_cycles(const std::string& text, std::size_t degree) {
  try {
    Perm p = Perm::from_cycles(text, 0);
    if (degree != 0 && p.degree() > degree) {
      throw InvalidRecipe("cycle string " + text + " moves points beyond degree " + std::to_string(degree));
    }
    return degree != 0 ? p.extended(degree) : p;
  } catch (const CycleTextError&) {
    throw;
  } catch (const ParseError& e) {
    throw CycleTextError(e, text);
  }
}

std::uint64_t int_param(const json& params, const char* key, std::uint64_t lo, std::uint64_t hi) {
  if (!params.contains(key) || !params[key].is_number_integer()) {
    throw InvalidRecipe(std::string("missing integer parameter '") + key + "'");
  }
  const auto v = params[key].get<std::int64_t>();
  if (v < static_cast<std::int64_t>(lo) || static_cast<std::uint64_t>(v) > hi) {
    throw InvalidRecipe(std::string("parameter '") + key + "' out of range");
  }
  return static_cast<std::uint64_t>(v);
}

GroupRecipe nested_recipe(const json& j) {
  if (j.is_string()) return recipe_from_name(j.get<std::string>());
  GroupRecipe r = GroupRecipe::from_json(j);
  return r;
}

Perm shifted(const Perm& p, std::size_t offset, std::size_t degree) {
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>(i);
  for (std::size_t i = 0; i < p.degree(); ++i) images[offset + i] = static_cast<Point>(offset + p[i]);
  return Perm(std::move(images));
}

void check_order(const Group& g, std::uint64_t cap, const std::string& what) {
  if (g.order() > cap) {
    throw CapExceeded(what + " has order " + std::to_string(g.order()) + " above the cap " +
                      std::to_string(cap));
  }
}

Group direct_product(const json& params, std::uint64_t cap) {
  if (!params.contains("factors") || !params["factors"].is_array() || params["factors"].empty()) {
    throw InvalidRecipe("direct_product needs a nonempty 'factors' array");
  }
  std::vector<Group> factors;
  std::size_t degree = 0;
  for (const json& f : params["factors"]) {
    factors.push_back(build_group(nested_recipe(f), cap).group);
    degree += factors.back().degree();
  }
  if (degree > kMaxDegree) throw CapExceeded("direct product exceeds the maximal degree");
  std::vector<Perm> gens;
  std::size_t offset = 0;
  for (const Group& f : factors) {
    for (const Perm& x : f.generators()) gens.push_back(shifted(x, offset, degree));
    offset += f.degree();
  }
  return Group(degree, std::move(gens));
}

Group semidirect(const json& params, std::uint64_t cap) {
  if (params.contains("base") && params.contains("top")) {
    // Wreath product: copies of the base on blocks permuted by the top group.
    const Group base = build_group(nested_recipe(params["base"]), cap).group;
    const Group top = build_group(nested_recipe(params["top"]), cap).group;
    const std::size_t d = base.degree();
    const std::size_t k = top.degree();
    if (d * k > kMaxDegree) throw CapExceeded("wreath product exceeds the maximal degree");
    std::vector<Perm> gens;
    for (std::size_t j = 0; j < k; ++j) {
      for (const Perm& x : base.generators()) gens.push_back(shifted(x, j * d, d * k));
    }
    for (const Perm& t : top.generators()) {
      std::vector<Point> images(d * k);
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t p = 0; p < d; ++p) images[j * d + p] = static_cast<Point>(t[j] * d + p);
      }
      gens.emplace_back(std::move(images));
    }
    return Group(d * k, std::move(gens));
  }
  if (!params.contains("normal") || !params.contains("acting") || !params["acting"].is_array()) {
    throw InvalidRecipe("semidirect needs 'normal' and 'acting', or 'base' and 'top'");
  }
  const Group normal = build_group(nested_recipe(params["normal"]), cap).group;
  std::vector<Perm> acting;
  std::size_t degree = normal.degree();
  for (const json& c : params["acting"]) {
    if (!c.is_string()) throw InvalidRecipe("'acting' must hold cycle strings");
    acting.push_back(parse_cycles(c.get<std::string>(), 0));
    degree = std::max(degree, acting.back().degree());
  }
  for (Perm& a : acting) a = a.extended(degree);
  std::vector<Perm> ngens;
  for (const Perm& x : normal.generators()) ngens.push_back(x.extended(degree));
  const Group n(degree, ngens);
  for (const Perm& a : acting) {
    if (!n.is_normalized_by(a)) throw InvalidRecipe(a.to_cycles() + " does not normalize the normal subgroup");
  }
  const Group complement(degree, acting);
  std::vector<Perm> all = ngens;
  all.insert(all.end(), acting.begin(), acting.end());
  Group g(degree, std::move(all));
  if (g.order() != n.order() * complement.order()) {
    throw InvalidRecipe("the acting subgroup meets the normal subgroup");
  }
  return g;
}

TwistedPower twisted_power(const json& params, std::uint64_t cap) {
  if (!params.contains("base")) throw InvalidRecipe("twisted_power needs a 'base'");
  const Group base = build_group(nested_recipe(params["base"]), cap).group;
  const std::size_t r = int_param(params, "r", 1, kMaxDegree);
  if (params.contains("twist")) {
    if (!params["twist"].is_string()) throw InvalidRecipe("'twist' must be a cycle string");
    return build_twisted_power(base, r, parse_cycles(params["twist"].get<std::string>(), base.degree()));
  }
  return build_twisted_power(base, r);
}

std::string require_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(std::string("recipe field '") + key + "' must be a string", 0);
  }
  return j[key].get<std::string>();
}

const std::vector<std::string>& constructors() {
  static const std::vector<std::string> names{"generators", "sym",            "alt",
                                              "cyclic",     "dihedral",       "psl2",
                                              "direct_product", "semidirect", "twisted_power"};
  return names;
}

}  // namespace

json GroupRecipe::to_json() const {
  json j;
  j["name"] = name;
  j["constructor"] = constructor;
  j["params"] = params;
  j["elements"] = elements;
  return j;
}

GroupRecipe GroupRecipe::from_json(const json& j) {
  if (!j.is_object()) throw ParseError("recipe must be a JSON object", 0);
  GroupRecipe r;
  if (j.contains("name")) r.name = require_string(j, "name");
  r.constructor = require_string(j, "constructor");
  const auto& names = constructors();
  if (std::find(names.begin(), names.end(), r.constructor) == names.end()) {
    throw UnknownConstructor("unknown constructor '" + r.constructor + "'");
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ParseError("recipe field 'params' must be an object", 0);
    r.params = j["params"];
  }
  if (j.contains("elements")) {
    if (!j["elements"].is_array()) throw ParseError("recipe field 'elements' must be an array", 0);
    for (const json& e : j["elements"]) {
      if (!e.is_string()) throw ParseError("elements must be strings", 0);
      r.elements.push_back(e.get<std::string>());
    }
  }
  return r;
}

Group psl2(unsigned p) {
  if (p != 5 && p != 7 && p != 11 && p != 13) {
    throw InvalidRecipe("psl2 is supported for p in {5, 7, 11, 13}");
  }
  // x -> x + 1 and x -> -1/x; the point p stands for infinity.
  std::vector<Point> t(p + 1);
  std::vector<Point> w(p + 1);
  for (unsigned x = 0; x < p; ++x) {
    t[x] = static_cast<Point>((x + 1) % p);
    unsigned inverse = 0;
    for (unsigned y = 1; y < p; ++y) {
      if (x * y % p == 1) inverse = y;
    }
    w[x] = static_cast<Point>(x == 0 ? p : (p - inverse) % p);
  }
  t[p] = static_cast<Point>(p);
  w[p] = 0;
  return Group(p + 1, {Perm(std::move(t)), Perm(std::move(w))});
}

BuiltGroup build_group(const GroupRecipe& recipe, std::uint64_t order_cap) {
  BuiltGroup built;
  built.recipe = recipe;
  const json& params = recipe.params;
  const std::string& c = recipe.constructor;
  if (c == "generators") {
    if (!params.contains("generators") || !params["generators"].is_array()) {
      throw InvalidRecipe("generators needs a 'generators' array");
    }
    std::size_t degree = params.contains("degree") ? int_param(params, "degree", 1, kMaxDegree) : 0;
    std::vector<Perm> gens;
    for (const json& g : params["generators"]) {
      if (!g.is_string()) throw InvalidRecipe("generators must be cycle strings");
      gens.push_back(parse_cycles(g.get<std::string>(), degree));
    }
    if (degree == 0) {
      for (const Perm& g : gens) degree = std::max(degree, g.degree());
      degree = std::max<std::size_t>(degree, 1);
      for (Perm& g : gens) g = g.extended(degree);
    }
    built.group = Group(degree, std::move(gens));
  } else if (c == "sym") {
    built.group = symmetric_group(int_param(params, "n", 1, 64));
  } else if (c == "alt") {
    built.group = alternating_group(int_param(params, "n", 1, 64));
  } else if (c == "cyclic") {
    built.group = cyclic_group(int_param(params, "n", 1, kMaxDegree));
  } else if (c == "dihedral") {
    built.group = dihedral_group(int_param(params, "n", 3, kMaxDegree));
  } else if (c == "psl2") {
    built.group = psl2(static_cast<unsigned>(int_param(params, "p", 2, 1000)));
  } else if (c == "direct_product") {
    built.group = direct_product(params, order_cap);
  } else if (c == "semidirect") {
    built.group = semidirect(params, order_cap);
  } else if (c == "twisted_power") {
    built.twisted = twisted_power(params, order_cap);
    built.group = built.twisted->realized;
  } else {
    throw UnknownConstructor("unknown constructor '" + c + "'");
  }
  check_order(built.group, order_cap, recipe.name.empty() ? c : recipe.name);
  for (const std::string& e : recipe.elements) built.marked.push_back(resolve_element(built, e));
  return built;
}

TwistedPower build_twisted(const GroupRecipe& recipe, const Caps& caps) {
  if (recipe.constructor != "twisted_power") throw InvalidRecipe(recipe.name + " is not a twisted power");
  TwistedPower t = twisted_power(recipe.params, caps.search_order);
  check_order(t.s, caps.search_order, recipe.name + " (base power)");
  return t;
}

Perm resolve_element(const BuiltGroup& built, std::string_view text) {
  if (text == "phi") {
    if (!built.twisted) throw InvalidRecipe("'phi' is only defined for twisted powers");
    return built.twisted->phi;
  }
  const Perm p = parse_cycles(std::string(text), built.group.degree());
  if (!built.group.contains(p)) throw NotMember(std::string(text) + " is not in " + built.recipe.name);
  return p;
}

GroupRecipe recipe_from_name(std::string_view text) {
  std::string s(text);
  std::string ctor;
  std::string number;
  const auto open = s.find('(');
  if (open != std::string::npos) {
    if (s.back() != ')') throw ParseError("malformed group name '" + s + "'", s.size());
    ctor = s.substr(0, open);
    number = s.substr(open + 1, s.size() - open - 2);
  } else if (s.rfind("psl2", 0) == 0) {
    ctor = "psl2";
    number = s.substr(4);
    if (!number.empty() && number.front() == '_') number.erase(0, 1);
  } else {
    std::size_t k = s.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
    ctor = s.substr(0, k);
    number = s.substr(k);
  }
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (number.empty() || ec != std::errc() || end != number.data() + number.size()) {
    throw ParseError("malformed group name '" + s + "'", open == std::string::npos ? 0 : open + 1);
  }
  if (ctor != "sym" && ctor != "alt" && ctor != "cyclic" && ctor != "dihedral" && ctor != "psl2") {
    throw UnknownConstructor("unknown group family '" + ctor + "'");
  }
  GroupRecipe r;
  r.name = s;
  r.constructor = ctor;
  r.params[ctor == "psl2" ? "p" : "n"] = value;
  return r;
}

GroupRecipe parse_corpus_line(std::string_view text, std::size_t line, const Caps& caps) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("line ") + std::to_string(line) + ": " + e.what(), e.byte, line, e.byte);
  }
  try {
    GroupRecipe r = GroupRecipe::from_json(j);
    if (r.name.empty()) throw ParseError("recipe needs a name", 0);
    build_group(r, caps.group_order);
    return r;
  } catch (const CycleTextError& e) {
    const std::string quoted = '"' + e.text() + '"';
    const auto pos = text.find(quoted);
    const std::size_t column = pos == std::string_view::npos ? 0 : pos + 2 + e.offset();
    throw ParseError(std::string("line ") + std::to_string(line) + ": " + e.what(), e.offset(), line, column);
  } catch (const ParseError& e) {
    throw ParseError(std::string("line ") + std::to_string(line) + ": " + e.what(), e.offset(), line, 1);
  }
}

namespace {

template <typename F>
void for_each_line(const std::filesystem::path& path, F&& f) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file " + path.string(), 0);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    f(line, number);
  }
}

}  // namespace

std::vector<GroupRecipe> load_corpus(const std::filesystem::path& path, const Caps& caps) {
  std::vector<GroupRecipe> recipes;
  for_each_line(path, [&](const std::string& line, std::size_t number) {
    recipes.push_back(parse_corpus_line(line, number, caps));
  });
  return recipes;
}

std::vector<CorpusEntry> read_corpus(const std::filesystem::path& path, const Caps& caps) {
  std::vector<CorpusEntry> entries;
  for_each_line(path, [&](const std::string& line, std::size_t number) {
    CorpusEntry entry;
    entry.line = number;
    try {
      entry.recipe = parse_corpus_line(line, number, caps);
      entry.name = entry.recipe->name;
    } catch (const std::exception& e) {
      entry.error_kind = error_kind(e);
      entry.error = e.what();
      try {
        const json j = json::parse(line);
        if (j.is_object() && j.contains("name") && j["name"].is_string()) entry.name = j["name"];
      } catch (const std::exception&) {
      }
      if (entry.name.empty()) entry.name = "line " + std::to_string(number);
    }
    entries.push_back(std::move(entry));
  });
  return entries;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const CapExceeded*>(&e)) return "cap_exceeded";
  if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
  if (dynamic_cast<const UnknownConstructor*>(&e)) return "unknown_constructor";
  if (dynamic_cast<const InvalidRecipe*>(&e)) return "invalid_recipe";
  if (dynamic_cast<const NotSoluble*>(&e)) return "not_soluble";
  if (dynamic_cast<const NotMember*>(&e)) return "not_member";
  if (dynamic_cast<const NotNormal*>(&e)) return "not_normal";
  if (dynamic_cast<const NotNormalized*>(&e)) return "not_normalized";
  if (dynamic_cast<const NotSubgroup*>(&e)) return "not_subgroup";
  if (dynamic_cast<const PremiseFailed*>(&e)) return "premise_failed";
  if (dynamic_cast<const TwistNotNormalizing*>(&e)) return "twist_not_normalizing";
  if (dynamic_cast<const InvariantViolation*>(&e)) return "invariant_violation";
  if (dynamic_cast<const DegreeMismatch*>(&e)) return "degree_mismatch";
  if (dynamic_cast<const InvalidPermutation*>(&e)) return "invalid_permutation";
  if (dynamic_cast<const InvalidHomomorphism*>(&e)) return "invalid_homomorphism";
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return "parse_error";
  if (dynamic_cast<const Error*>(&e)) return "error";
  return "internal";
}

}  // namespace engelgrp::harness
