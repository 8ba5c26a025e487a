#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "engelgrp/caps.hpp"
#include "engelgrp/group.hpp"
#include "engelgrp/simple_products.hpp"

namespace engelgrp::harness {

// One corpus entry. Nested recipes (factors of a direct product, the base
// of a twisted power, ...) are JSON objects of the same shape without a
// name, or shorthand strings such as "alt(5)".
struct GroupRecipe {
  std::string name;
  std::string constructor;
  nlohmann::json params = nlohmann::json::object();
  // Cycle strings of marked elements; "phi" names the twisting element of a
  // twisted power.
  std::vector<std::string> elements;

  nlohmann::json to_json() const;
  // Throws ParseError on a malformed object and UnknownConstructor on an
  // unknown constructor name.
  static GroupRecipe from_json(const nlohmann::json& j);
};

struct BuiltGroup {
  GroupRecipe recipe;
  Group group;
  std::optional<TwistedPower> twisted;
  std::vector<Perm> marked;  // recipe.elements, parsed
};

// Builds the group and checks |G| <= order_cap (CapExceeded otherwise).
BuiltGroup build_group(const GroupRecipe& recipe, std::uint64_t order_cap);
// For a twisted_power recipe: only |S| is checked, against caps.search_order.
TwistedPower build_twisted(const GroupRecipe& recipe, const Caps& caps);

// Resolves an element name ("phi" or a cycle string) inside a built group.
Perm resolve_element(const BuiltGroup& built, std::string_view text);

// PSL(2, p) on the projective line {0, ..., p-1, infinity}; infinity is the
// last point. Supported for p in {5, 7, 11, 13}.
Group psl2(unsigned p);

// "sym(5)", "alt5", "psl2(7)", "cyclic(6)", "dihedral(4)".
GroupRecipe recipe_from_name(std::string_view text);

// Strict loader: throws on the first bad line. ParseError carries the
// line and column.
std::vector<GroupRecipe> load_corpus(const std::filesystem::path& path, const Caps& caps = {});

// Lenient loader for the suite: bad lines come back as errors instead.
struct CorpusEntry {
  std::size_t line = 0;
  std::optional<GroupRecipe> recipe;
  std::string name;  // recipe name when it could be read
  std::string error_kind;
  std::string error;
};
std::vector<CorpusEntry> read_corpus(const std::filesystem::path& path, const Caps& caps = {});

// Parses one corpus line (1-based line number used in errors) and validates
// it by building the group.
GroupRecipe parse_corpus_line(std::string_view text, std::size_t line, const Caps& caps);

// Short machine-friendly name of an error type, e.g. "cap_exceeded".
std::string error_kind(const std::exception& e);

}  // namespace engelgrp::harness
