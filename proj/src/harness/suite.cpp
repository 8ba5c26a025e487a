#include "engelgrp/harness/suite.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <memory>
#include <thread>

#include "engelgrp/classes.hpp"
#include "engelgrp/errors.hpp"

namespace engelgrp::harness {

using nlohmann::json;

namespace {

// Runs f(0..count-1) on a pool of threads; results are stored by index so
// the output order never depends on scheduling.
template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) f(i);
  };
  if (threads <= 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
}

bool wanted(const SuiteOptions& options, const std::string& check) {
  return options.checks.empty() ||
         std::find(options.checks.begin(), options.checks.end(), check) != options.checks.end();
}

CheckReport error_record(const std::string& check, const std::string& group, const std::exception& e) {
  CheckReport r;
  r.check = check;
  r.group = group;
  r.verdict = Verdict::error;
  r.error_kind = error_kind(e);
  r.error = e.what();
  return r;
}

struct GroupUnit {
  std::shared_ptr<const GroupContext> ctx;
  std::vector<std::pair<std::string, Perm>> elements;
  std::vector<CheckReport> records;  // group-level records and setup errors
};

struct ElementUnit {
  std::size_t group;
  std::size_t element;
  std::vector<CheckReport> records;
};

std::vector<std::pair<std::string, Perm>> select_elements(const GroupContext& ctx, const SuiteOptions& options) {
  std::vector<std::pair<std::string, Perm>> out;
  if (options.elements == ElementMode::classes) {
    for (const ConjugacyClass& c : conjugacy_classes(ctx.group(), options.caps)) {
      out.emplace_back(c.representative.to_cycles(), c.representative);
    }
  } else {
    for (const Perm& x : ctx.group().elements(options.caps.group_order)) out.emplace_back(x.to_cycles(), x);
  }
  const auto& recipe = ctx.built().recipe;
  for (std::size_t i = 0; i < recipe.elements.size(); ++i) {
    const std::string& label = recipe.elements[i];
    const bool listed = std::any_of(out.begin(), out.end(), [&](const auto& e) { return e.first == label; });
    if (!listed) out.emplace_back(label, ctx.built().marked[i]);
  }
  return out;
}

bool element_check_applies(const std::string& check, const GroupContext& ctx) {
  if (check == "fitting_bound") return ctx.soluble();
  return true;
}

CheckReport run_element_check(const std::string& check, const GroupContext& ctx, ElementContext& e) {
  CheckReport r = guarded(check, ctx.name(), [&]() -> CheckReport {
    if (check == "baer") return check_baer(ctx, e);
    if (check == "fitting_bound") return check_fitting_bound(ctx, e);
    if (check == "nonsoluble_bound") return check_nonsoluble_bound(ctx, e);
    if (check == "fstar_bound") return check_fstar_bound(ctx, e);
    if (check == "fstar_strong") return check_fstar_strong(ctx, e);
    if (check == "radical_strong") return check_radical_strong(ctx, e);
    if (check == "kernel_length") return check_kernel_length(ctx, e);
    return check_soluble_engel(ctx, e);
  });
  r.recipe = ctx.built().recipe;
  r.element = e.label();
  r.params = {{"n_max", e.n_max()}};
  return r;
}

}  // namespace

int Summary::exit_code() const {
  if (fail > 0 || error > cap_exceeded) return 1;
  if (cap_exceeded > 0) return 3;
  return 0;
}

json Summary::to_json() const {
  return {{"summary",
           {{"records", records},
            {"pass", pass},
            {"fail", fail},
            {"report", report},
            {"flagged", flagged},
            {"error", error},
            {"cap_exceeded", cap_exceeded},
            {"exit_code", exit_code()}}}};
}

Summary summarize(const std::vector<CheckReport>& records) {
  Summary s;
  s.records = records.size();
  for (const CheckReport& r : records) {
    switch (r.verdict) {
      case Verdict::pass: ++s.pass; break;
      case Verdict::fail: ++s.fail; break;
      case Verdict::report: ++s.report; break;
      case Verdict::error:
        ++s.error;
        if (r.error_kind == "cap_exceeded") ++s.cap_exceeded;
        break;
    }
    if (r.flagged) ++s.flagged;
  }
  return s;
}

SuiteResult run_suite(const std::vector<GroupRecipe>& corpus, const SuiteOptions& options) {
  std::vector<CorpusEntry> entries;
  for (const GroupRecipe& r : corpus) {
    CorpusEntry e;
    e.recipe = r;
    e.name = r.name;
    entries.push_back(std::move(e));
  }
  return run_suite(entries, options);
}

SuiteResult run_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& options) {
  const Caps& caps = options.caps;

  // Groups: build, choose elements, run the group-level checks.
  std::vector<GroupUnit> groups(corpus.size());
  parallel_for(corpus.size(), options.threads, [&](std::size_t i) {
    const CorpusEntry& entry = corpus[i];
    GroupUnit& unit = groups[i];
    if (!entry.recipe) {
      CheckReport r;
      r.check = "corpus";
      r.group = entry.name;
      r.params = {{"line", entry.line}};
      r.verdict = Verdict::error;
      r.error_kind = entry.error_kind;
      r.error = entry.error;
      unit.records.push_back(std::move(r));
      return;
    }
    try {
      unit.ctx = std::make_shared<const GroupContext>(build_group(*entry.recipe, caps.group_order), caps);
      const bool any_element_check = std::any_of(element_checks().begin(), element_checks().end(),
                                                 [&](const std::string& c) { return wanted(options, c); });
      if (any_element_check) unit.elements = select_elements(*unit.ctx, options);
    } catch (const std::exception& e) {
      CheckReport r = error_record("corpus", entry.recipe->name, e);
      r.recipe = entry.recipe;
      unit.records.push_back(std::move(r));
      unit.ctx.reset();
      return;
    }
    for (const std::string& check : group_checks()) {
      if (!wanted(options, check)) continue;
      CheckReport r = guarded(check, unit.ctx->name(), [&] { return check_radical_identities(*unit.ctx); });
      r.recipe = entry.recipe;
      unit.records.push_back(std::move(r));
    }
  });

  // Elements: every selected element of every group.
  std::vector<ElementUnit> elements;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t e = 0; e < groups[g].elements.size(); ++e) elements.push_back({g, e, {}});
  }
  parallel_for(elements.size(), options.threads, [&](std::size_t i) {
    ElementUnit& unit = elements[i];
    const GroupContext& ctx = *groups[unit.group].ctx;
    const auto& [label, g] = groups[unit.group].elements[unit.element];
    for (const std::string& check : element_checks()) {
      if (!wanted(options, check) || !element_check_applies(check, ctx)) continue;
      const int n_max = check == "fitting_bound" ? options.n_max_soluble : options.n_max;
      try {
        ElementContext e(ctx, g, label, n_max);
        unit.records.push_back(run_element_check(check, ctx, e));
      } catch (const std::exception& ex) {
        CheckReport r = error_record(check, ctx.name(), ex);
        r.recipe = ctx.built().recipe;
        r.element = label;
        unit.records.push_back(std::move(r));
      }
    }
  });

  // Twisted powers from the corpus and the built-in ones, and fixed instances.
  std::vector<CheckRequest> requests;
  std::vector<GroupRecipe> twisted;
  for (const CorpusEntry& entry : corpus) {
    if (entry.recipe && entry.recipe->constructor == "twisted_power") twisted.push_back(*entry.recipe);
  }
  if (options.builtin_instances) {
    for (const GroupRecipe& r : builtin_twisted_recipes()) twisted.push_back(r);
  }
  for (const GroupRecipe& recipe : twisted) {
    std::optional<TwistedPower> t;
    try {
      t = build_twisted(recipe, caps);
    } catch (const std::exception&) {
      // The corpus pass already reported the recipe; builtins always build.
      continue;
    }
    for (const std::string& check : twisted_checks()) {
      if (!wanted(options, check) || !twisted_check_applies(check, *t)) continue;
      CheckRequest req{check, recipe.name, recipe, std::nullopt, json::object()};
      if (check == "factor_commutators" || check == "regular_power" || check == "twisted_probe") {
        req.params = {{"n_max", options.n_max}};
      }
      requests.push_back(std::move(req));
    }
  }
  if (options.builtin_instances) {
    auto add_instances = [&](const std::string& check, const std::vector<std::string>& names) {
      if (!wanted(options, check)) return;
      for (const std::string& name : names) {
        requests.push_back({check, name, std::nullopt, std::nullopt, json{{"instance", name}}});
      }
    };
    add_instances("soluble_engel", soluble_engel_instances());
    add_instances("conjugator", conjugator_instances());
    add_instances("regular_vector", regular_vector_instances());
  }
  std::vector<CheckReport> instance_records(requests.size());
  parallel_for(requests.size(), options.threads,
               [&](std::size_t i) { instance_records[i] = run_check(requests[i], caps); });

  SuiteResult result;
  std::size_t next_element = 0;
  for (GroupUnit& g : groups) {
    for (CheckReport& r : g.records) result.records.push_back(std::move(r));
    for (std::size_t e = 0; e < g.elements.size(); ++e, ++next_element) {
      for (CheckReport& r : elements[next_element].records) result.records.push_back(std::move(r));
    }
  }
  for (CheckReport& r : instance_records) result.records.push_back(std::move(r));
  result.summary = summarize(result.records);
  return result;
}

json report_to_json(const SuiteResult& result) {
  json out = json::array();
  for (const CheckReport& r : result.records) out.push_back(r.to_json());
  out.push_back(result.summary.to_json());
  return out;
}

void write_report(const std::filesystem::path& path, const SuiteResult& result) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write report file " + path.string());
  out << report_to_json(result).dump(1) << '\n';
}

std::vector<CheckReport> read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open report file " + path.string(), 0);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report file: ") + e.what(), e.byte);
  }
  if (!j.is_array()) throw ParseError("report file must hold a JSON array", 0);
  std::vector<CheckReport> records;
  for (const json& item : j) {
    if (item.is_object() && item.contains("summary")) continue;
    records.push_back(CheckReport::from_json(item));
  }
  return records;
}

ReplayOutcome replay(const std::vector<CheckReport>& records, const Caps& caps, bool all_records) {
  ReplayOutcome outcome;
  for (const CheckReport& r : records) {
    if (!all_records && r.verdict != Verdict::fail && r.verdict != Verdict::report) continue;
    if (r.check == "corpus") continue;
    ++outcome.replayed;
    const CheckReport again = run_check({r.check, r.group, r.recipe, r.element, r.params}, caps);
    if (again.verdict == r.verdict && again.flagged == r.flagged) {
      ++outcome.reproduced;
    } else {
      outcome.mismatches.push_back(r.check + " on " + r.group + (r.element ? " at " + *r.element : "") + ": " +
                                   to_string(r.verdict) + " became " + to_string(again.verdict));
    }
  }
  return outcome;
}

}  // namespace engelgrp::harness
