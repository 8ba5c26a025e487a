#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "engelgrp/caps.hpp"
#include "engelgrp/group.hpp"
#include "engelgrp/harness/recipe.hpp"
#include "engelgrp/series.hpp"
#include "engelgrp/simple_products.hpp"

namespace engelgrp::harness {

enum class Verdict { pass, fail, report, error };
const char* to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

// One check on one (group, element) pair or one fixed instance. Every record
// carries what is needed to run it again: the recipe, the element and the
// parameters, or the name of a built-in instance in params["instance"].
struct CheckReport {
  std::string check;
  std::string group;
  std::optional<GroupRecipe> recipe;
  std::optional<std::string> element;
  nlohmann::json params = nlohmann::json::object();
  Verdict verdict = Verdict::pass;
  // Report-only checks: set when the observed data contradicts the
  // statement being probed.
  bool flagged = false;
  nlohmann::json witness = nlohmann::json::object();
  std::string error_kind;
  std::string error;

  nlohmann::json to_json() const;
  static CheckReport from_json(const nlohmann::json& j);
};

struct CheckRequest {
  std::string check;
  std::string group;
  std::optional<GroupRecipe> recipe;
  std::optional<std::string> element;
  nlohmann::json params = nlohmann::json::object();
};

// Check ids by the kind of subject they run on.
const std::vector<std::string>& element_checks();
const std::vector<std::string>& group_checks();
const std::vector<std::string>& twisted_checks();
const std::vector<std::string>& instance_checks();
bool is_report_only(std::string_view check);

// Index bounds from the theorems on Engel subgroups: with k the relevant
// length of E_n(g) and m = omega(g), g lies in R_j(G) and F*_j(G) for these j.
std::uint64_t nonsoluble_bound(std::uint64_t k, std::uint64_t m);
std::uint64_t fstar_bound(std::uint64_t k, std::uint64_t m);

// Lazily computed series of one corpus group, shared between threads.
class GroupContext {
public:
  GroupContext(BuiltGroup built, const Caps& caps);

  const BuiltGroup& built() const { return built_; }
  const Group& group() const { return built_.group; }
  const std::string& name() const { return built_.recipe.name; }
  const Caps& caps() const { return caps_; }

  bool soluble() const;
  const Group& fitting() const;
  // Throws NotSoluble for a nonsoluble group.
  const SeriesReport& fitting_series() const;
  const SeriesReport& fstar_series() const;
  const NonsolubleSeries& nonsoluble() const;

private:
  BuiltGroup built_;
  Caps caps_;
  mutable std::once_flag soluble_once_, fitting_once_, fitting_series_once_, fstar_once_, nonsoluble_once_;
  mutable bool soluble_ = false;
  mutable Group fitting_;
  mutable std::optional<SeriesReport> fitting_series_;
  mutable std::optional<SeriesReport> fstar_series_;
  mutable std::optional<NonsolubleSeries> nonsoluble_;
};

// E_n(g) for n = 1..n_max and their lengths. Single-threaded.
class ElementContext {
public:
  ElementContext(const GroupContext& group, Perm g, std::string label, int n_max);

  const Perm& element() const { return g_; }
  const std::string& label() const { return label_; }
  int n_max() const { return n_max_; }
  const Group& engel(int n);
  int fitting_height(int n);
  int fstar_height(int n);
  int nonsoluble_length(int n);

private:
  const GroupContext& group_;
  Perm g_;
  std::string label_;
  int n_max_;
  std::vector<Group> engel_;
  std::vector<std::optional<int>> fitting_height_, fstar_height_, nonsoluble_length_;
};

// Element checks.
CheckReport check_baer(const GroupContext& ctx, ElementContext& e);
CheckReport check_fitting_bound(const GroupContext& ctx, ElementContext& e);
CheckReport check_nonsoluble_bound(const GroupContext& ctx, ElementContext& e);
CheckReport check_fstar_bound(const GroupContext& ctx, ElementContext& e);
CheckReport check_fstar_strong(const GroupContext& ctx, ElementContext& e);
CheckReport check_radical_strong(const GroupContext& ctx, ElementContext& e);
CheckReport check_kernel_length(const GroupContext& ctx, ElementContext& e);
CheckReport check_soluble_engel(const GroupContext& ctx, ElementContext& e);

// Group checks.
CheckReport check_radical_identities(const GroupContext& ctx);

// Twisted power checks; `recipe` is recorded for replay.
CheckReport check_d_subgroups(const TwistedPower& t, const Caps& caps);
CheckReport check_diagonal_overgroups(const TwistedPower& t, const Caps& caps);
CheckReport check_factor_commutators(const TwistedPower& t, int n_max, const Caps& caps);
CheckReport check_regular_power(const TwistedPower& t, int n_max, const Caps& caps);
CheckReport check_twisted_conjugator(const TwistedPower& t, const Caps& caps);
CheckReport check_twisted_probe(const TwistedPower& t, int n_max, const Caps& caps);
// Whether the twisted check applies to t at all (premises of the statement).
bool twisted_check_applies(std::string_view check, const TwistedPower& t);

// E_{G,1}(a), ..., E_{G,n_max}(a) for a soluble G normalized by a with
// [G, a] = G. Throws NotSoluble, NotNormalized or PremiseFailed.
std::vector<Group> soluble_engel_subgroups(const Group& ambient, const Group& g, const Perm& a,
                                           int n_max, const Caps& caps = {});

// Order of the automorphism of v induced by conjugation by alpha.
std::uint64_t induced_order(const Group& v, const Perm& alpha);
// v in V whose <alpha>-orbit has the full length induced_order(V, alpha),
// nonidentity whenever V is nontrivial and such an element exists. Throws
// PremiseFailed unless V is elementary abelian, NotNormalized unless alpha
// normalizes V.
std::optional<Perm> find_regular_vector(const Group& v, const Perm& alpha, const Caps& caps = {});

// Conditions for the conjugator statement on G<g>: the generator g0 of the
// part of <g> acting trivially on G/R, and the shape of G/R.
struct CoveringAnalysis {
  Group radical;
  Perm g0;
  std::uint64_t g0_exponent = 0;  // g0 = g^g0_exponent
  std::uint64_t factors = 0;      // r
  std::uint64_t stabilizer_order = 0;
  bool minimal_cover_certified = false;
};
// Throws PremiseFailed when a condition fails or cannot be certified.
CoveringAnalysis analyse_covering(const Group& ambient, const Group& g, const Perm& x,
                                  const Caps& caps = {});

// Subgroups H of `ambient` not containing s used to exercise the conjugator
// searches: <g>, point stabilizers, normalizer of <g> and seeded random
// 1- and 2-generated subgroups.
std::vector<std::pair<std::string, Group>> probe_subgroups(const Group& ambient, const Group& s,
                                                           const Perm& g, const Caps& caps,
                                                           std::uint64_t seed = 0x5eed);

// Built-in fixed instances, looked up by name.
const std::vector<std::string>& soluble_engel_instances();
const std::vector<std::string>& regular_vector_instances();
const std::vector<std::string>& conjugator_instances();
// Built-in twisted powers beyond the corpus caps.
std::vector<GroupRecipe> builtin_twisted_recipes();

CheckReport check_soluble_engel_instance(std::string_view name, const Caps& caps);
CheckReport check_regular_vector_instance(std::string_view name, const Caps& caps);
CheckReport check_conjugator_instance(std::string_view name, const Caps& caps);

// Runs a single request from scratch (used by replay and the CLI).
CheckReport run_check(const CheckRequest& request, const Caps& caps);

// Runs f, turning any exception into an error record.
template <typename F>
CheckReport guarded(const std::string& check, const std::string& group, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    CheckReport r;
    r.check = check;
    r.group = group;
    r.verdict = Verdict::error;
    r.error_kind = error_kind(e);
    r.error = e.what();
    return r;
  }
}

}  // namespace engelgrp::harness
