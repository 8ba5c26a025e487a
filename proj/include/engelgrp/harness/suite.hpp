#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "engelgrp/caps.hpp"
#include "engelgrp/harness/checks.hpp"
#include "engelgrp/harness/recipe.hpp"

namespace engelgrp::harness {

enum class ElementMode { classes, all };

struct SuiteOptions {
  // Check ids to run; empty runs every check.
  std::vector<std::string> checks;
  // One representative per conjugacy class, or every element. Marked
  // elements of a recipe are always included.
  ElementMode elements = ElementMode::classes;
  // n ranges: 1..n_max for the nonsoluble checks and the twisted powers,
  // 1..n_max_soluble for the Fitting height bound.
  int n_max = 3;
  int n_max_soluble = 5;
  // Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
  // Also run the built-in fixed instances and the twisted powers that are
  // too large for the corpus.
  bool builtin_instances = true;
  Caps caps;
};

struct Summary {
  std::size_t records = 0;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t report = 0;
  std::size_t flagged = 0;
  std::size_t error = 0;
  std::size_t cap_exceeded = 0;

  // 0 all pass, 1 a failure or error, 3 only cap overruns.
  int exit_code() const;
  nlohmann::json to_json() const;
};

struct SuiteResult {
  std::vector<CheckReport> records;
  Summary summary;
};

Summary summarize(const std::vector<CheckReport>& records);

SuiteResult run_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& options);
SuiteResult run_suite(const std::vector<GroupRecipe>& corpus, const SuiteOptions& options);

// JSON array of records with the summary object appended last.
nlohmann::json report_to_json(const SuiteResult& result);
void write_report(const std::filesystem::path& path, const SuiteResult& result);
// Records of a report file (the summary object is skipped).
std::vector<CheckReport> read_report(const std::filesystem::path& path);

struct ReplayOutcome {
  std::size_t replayed = 0;
  std::size_t reproduced = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return replayed == reproduced; }
};

// Re-runs records from their stored witnesses and compares verdict and
// flag. By default only fail and report records are replayed.
ReplayOutcome replay(const std::vector<CheckReport>& records, const Caps& caps, bool all_records = false);

}  // namespace engelgrp::harness
