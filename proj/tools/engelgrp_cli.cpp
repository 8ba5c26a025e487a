#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "engelgrp/engel.hpp"
#include "engelgrp/errors.hpp"
#include "engelgrp/harness/recipe.hpp"
#include "engelgrp/harness/serialize.hpp"
#include "engelgrp/harness/suite.hpp"
#include "engelgrp/series.hpp"
#include "engelgrp/simple_products.hpp"

using namespace engelgrp;
using namespace engelgrp::harness;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

// "key=value,key=value" over the Caps fields.
Caps parse_caps(const std::string& text) {
  Caps caps;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("caps entry '" + item + "' needs key=value", 0);
    const std::string key = item.substr(0, eq);
    std::uint64_t value = 0;
    try {
      value = std::stoull(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("caps entry '" + item + "' needs a number", eq + 1);
    }
    if (key == "group_order") caps.group_order = value;
    else if (key == "quotient_index") caps.quotient_index = value;
    else if (key == "subgroup_enumeration") caps.subgroup_enumeration = value;
    else if (key == "search_order") caps.search_order = value;
    else if (key == "engel_n") caps.engel_n = static_cast<int>(value);
    else throw ParseError("unknown cap '" + key + "'", 0);
  }
  return caps;
}

// A group given as a family name ("sym(5)"), an inline JSON recipe, or the
// name of a recipe in a corpus file.
GroupRecipe resolve_group(const std::string& text, const std::string& corpus, const Caps& caps) {
  if (!text.empty() && text.front() == '{') {
    GroupRecipe r = GroupRecipe::from_json(json::parse(text));
    if (r.name.empty()) r.name = r.constructor;
    return r;
  }
  if (!corpus.empty()) {
    for (const GroupRecipe& r : load_corpus(corpus, caps)) {
      if (r.name == text) return r;
    }
  }
  return recipe_from_name(text);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_series(const std::string& text, const std::string& corpus, const Caps& caps) {
  const BuiltGroup built = build_group(resolve_group(text, corpus, caps), caps.group_order);
  const Group& g = built.group;
  json out;
  out["group"] = built.recipe.name;
  out["order"] = g.order();
  out["degree"] = g.degree();
  out["soluble"] = is_soluble(g);
  if (is_soluble(g)) out["fitting"] = series_to_json(fitting_series(g, caps));
  out["generalized_fitting"] = series_to_json(generalized_fitting_series(g, caps));
  out["nonsoluble"] = nonsoluble_to_json(nonsoluble_series(g, caps));
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_engel(const std::string& text, const std::string& corpus, const std::string& element, int n,
              const Caps& caps) {
  const BuiltGroup built = build_group(resolve_group(text, corpus, caps), caps.group_order);
  const Perm g = resolve_element(built, element);
  const EngelTrace trace = engel_verdict(built.group, g, caps, true);
  json out = trace_to_json(trace);
  out["group"] = built.recipe.name;
  out["in_fitting"] = fitting(built.group, caps).contains(g);
  if (n > 0) out["engel_subgroup"] = group_to_json(engel_subgroup(built.group, g, n, caps));
  if (n > 0) out["n"] = n;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_verify(const std::string& corpus, const std::string& checks, const SuiteOptions& base,
               const std::string& out_path) {
  SuiteOptions options = base;
  options.checks = split_list(checks);
  const auto& known = [] {
    std::vector<std::string> all = element_checks();
    for (const auto* list : {&group_checks(), &twisted_checks(), &instance_checks()}) {
      all.insert(all.end(), list->begin(), list->end());
    }
    return all;
  }();
  for (const std::string& c : options.checks) {
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      std::cerr << "unknown check '" << c << "'\n";
      return kExitUsage;
    }
  }
  const std::vector<CorpusEntry> entries = read_corpus(corpus, options.caps);
  const SuiteResult result = run_suite(entries, options);
  if (!out_path.empty()) write_report(out_path, result);
  const Summary& s = result.summary;
  std::cout << "records " << s.records << ", pass " << s.pass << ", fail " << s.fail << ", report " << s.report
            << ", flagged " << s.flagged << ", errors " << s.error << " (cap exceeded " << s.cap_exceeded << ")\n";
  for (const CheckReport& r : result.records) {
    if (r.verdict == Verdict::fail || r.flagged || r.verdict == Verdict::error) {
      std::cout << (r.flagged ? "FLAGGED " : r.verdict == Verdict::fail ? "FAIL " : "ERROR ") << r.check << " "
                << r.group << (r.element ? " " + *r.element : "") << (r.error.empty() ? "" : ": " + r.error)
                << '\n';
    }
  }
  return s.exit_code();
}

int cmd_question1(const std::string& base, std::size_t r, const std::string& twist, int max_n, const Caps& caps) {
  const Group s = build_group(recipe_from_name(base), caps.group_order).group;
  const TwistedPower t =
      twist.empty() ? build_twisted_power(s, r) : build_twisted_power(s, r, Perm::from_cycles(twist, s.degree()));
  const TwistedEngelReport q = twisted_engel_probe(t, max_n, caps);
  json rows = json::array();
  for (const TwistedEngelRow& row : q.rows) rows.push_back({{"n", row.n}, {"order", row.order}, {"equals_s", row.equals_s}});
  json out{{"base", base},
           {"r", r},
           {"twist", t.twist.to_cycles()},
           {"s_order", q.s_order},
           {"phi_order", q.phi_order},
           {"rows", rows},
           {"all_equal", q.all_equal()}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_replay(const std::string& path, bool all, const Caps& caps) {
  const ReplayOutcome outcome = replay(read_report(path), caps, all);
  std::cout << "replayed " << outcome.replayed << ", reproduced " << outcome.reproduced << '\n';
  for (const std::string& m : outcome.mismatches) std::cout << "MISMATCH " << m << '\n';
  return outcome.ok() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Engel subgroups, Fitting-type series and checks on finite permutation groups"};
  app.require_subcommand(1);
  std::string caps_text;
  std::string corpus_for_lookup;
  app.add_option("--caps", caps_text, "Limits as key=value,... (group_order, quotient_index, "
                                      "subgroup_enumeration, search_order, engel_n)");

  std::string group_spec;
  auto* series = app.add_subcommand("series", "Print the Fitting, generalized Fitting and nonsoluble series");
  series->add_option("group", group_spec, "sym(5), a JSON recipe, or a recipe name with --corpus")->required();
  series->add_option("--corpus", corpus_for_lookup, "Corpus file to look the group up in");

  std::string element;
  int n = 0;
  auto* engel = app.add_subcommand("engel", "Decide whether an element is left-Engel and print E_n");
  engel->add_option("group", group_spec, "sym(5), a JSON recipe, or a recipe name with --corpus")->required();
  engel->add_option("--element", element, "Cycle string, or phi for a twisted power")->required();
  engel->add_option("--n", n, "Also print E_n(g)");
  engel->add_option("--corpus", corpus_for_lookup, "Corpus file to look the group up in");

  std::string corpus;
  std::string checks;
  std::string out_path;
  std::string mode = "classes";
  SuiteOptions options;
  bool no_builtin = false;
  auto* verify = app.add_subcommand("verify", "Run checks over a corpus and write a report");
  verify->add_option("--corpus", corpus, "Corpus file (one JSON recipe per line)")->required();
  verify->add_option("--checks", checks, "Comma-separated check ids; empty runs all");
  verify->add_option("--out", out_path, "Report file");
  verify->add_option("--threads", options.threads, "Worker threads (0 = hardware)");
  verify->add_option("--elements", mode, "classes or all")->check(CLI::IsMember({"classes", "all"}));
  verify->add_option("--n-max", options.n_max, "Largest n for the nonsoluble and twisted checks");
  verify->add_option("--n-max-soluble", options.n_max_soluble, "Largest n for the Fitting height bound");
  verify->add_flag("--no-builtin", no_builtin, "Skip the built-in fixed instances");

  std::string base;
  std::size_t r = 1;
  std::string twist;
  int max_n = 3;
  auto* question1 = app.add_subcommand("question1", "E_{S,n}(phi) for a twisted power S = base^r");
  question1->add_option("--base", base, "Simple group, e.g. alt(5) or psl2(7)")->required();
  question1->add_option("--r", r, "Number of factors")->required();
  question1->add_option("--twist", twist, "Automorphism applied on wrap-around, as a cycle string");
  question1->add_option("--max-n", max_n, "Largest n")->required();

  std::string report_path;
  bool replay_all = false;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run fail and report records of a report file");
  replay_cmd->add_option("--report", report_path, "Report file")->required();
  replay_cmd->add_flag("--all", replay_all, "Replay every record");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const Caps caps = parse_caps(caps_text);
    if (series->parsed()) return cmd_series(group_spec, corpus_for_lookup, caps);
    if (engel->parsed()) return cmd_engel(group_spec, corpus_for_lookup, element, n, caps);
    if (verify->parsed()) {
      options.caps = caps;
      options.elements = mode == "all" ? ElementMode::all : ElementMode::classes;
      options.builtin_instances = !no_builtin;
      return cmd_verify(corpus, checks, options, out_path);
    }
    if (question1->parsed()) return cmd_question1(base, r, twist, max_n, caps);
    if (replay_cmd->parsed()) return cmd_replay(report_path, replay_all, caps);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownConstructor& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidRecipe& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
