#include "engelgrp/harness/checks.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "engelgrp/classes.hpp"
#include "engelgrp/engel.hpp"
#include "engelgrp/errors.hpp"
#include "engelgrp/harness/serialize.hpp"
#include "engelgrp/homomorphism.hpp"

namespace engelgrp::harness {

using nlohmann::json;

namespace {

Caps search_caps(Caps caps) {
  caps.group_order = std::max(caps.group_order, caps.search_order);
  return caps;
}

Perm cyc(const char* text, std::size_t degree) { return Perm::from_cycles(text, degree); }

bool is_prime_power(std::uint64_t n) {
  if (n == 1) return true;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  }
  return true;
}

bool is_prime(std::uint64_t n) { return n > 1 && is_prime_power(n) && omega(n) == 1; }

// Whether <g> meets k nontrivially: some element of prime order in <g> lies in k.
bool meets_cyclic(const Group& k, const Perm& g) {
  std::uint64_t o = g.order();
  for (std::uint64_t p = 2; p <= o; ++p) {
    if (o % p != 0 || !is_prime(p)) continue;
    if (k.contains(g.pow(static_cast<std::int64_t>(o / p)))) return true;
  }
  return false;
}

CheckReport element_report(const char* check, const GroupContext& ctx, const ElementContext& e) {
  CheckReport r;
  r.check = check;
  r.group = ctx.name();
  r.recipe = ctx.built().recipe;
  r.element = e.label();
  r.params = {{"n_max", e.n_max()}};
  return r;
}

CheckReport twisted_report(const char* check) {
  CheckReport r;
  r.check = check;
  return r;
}

void settle(CheckReport& r, bool ok) { r.verdict = ok ? Verdict::pass : Verdict::fail; }

json orders(const std::vector<Group>& gs) {
  json a = json::array();
  for (const Group& g : gs) a.push_back(g.order());
  return a;
}

}  // namespace

// ---------------------------------------------------------------- records

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::report: return "report";
    case Verdict::error: return "error";
  }
  return "error";
}

Verdict verdict_from_string(std::string_view s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "report") return Verdict::report;
  if (s == "error") return Verdict::error;
  throw ParseError("unknown verdict '" + std::string(s) + "'", 0);
}

json CheckReport::to_json() const {
  json j;
  j["check"] = check;
  j["group"] = group;
  j["recipe"] = recipe ? recipe->to_json() : json(nullptr);
  j["element"] = element ? json(*element) : json(nullptr);
  j["params"] = params;
  j["verdict"] = to_string(verdict);
  j["flagged"] = flagged;
  j["witness"] = witness;
  if (verdict == Verdict::error) {
    j["error_kind"] = error_kind;
    j["error"] = error;
  }
  return j;
}

CheckReport CheckReport::from_json(const json& j) {
  if (!j.is_object() || !j.contains("check") || !j.contains("verdict")) {
    throw ParseError("report record needs 'check' and 'verdict'", 0);
  }
  CheckReport r;
  r.check = j.at("check").get<std::string>();
  r.group = j.value("group", "");
  if (j.contains("recipe") && !j["recipe"].is_null()) r.recipe = GroupRecipe::from_json(j["recipe"]);
  if (j.contains("element") && !j["element"].is_null()) r.element = j["element"].get<std::string>();
  if (j.contains("params")) r.params = j["params"];
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.flagged = j.value("flagged", false);
  if (j.contains("witness")) r.witness = j["witness"];
  r.error_kind = j.value("error_kind", "");
  r.error = j.value("error", "");
  return r;
}

const std::vector<std::string>& element_checks() {
  static const std::vector<std::string> ids{"baer",          "fitting_bound", "nonsoluble_bound",
                                            "fstar_bound",   "fstar_strong",  "radical_strong",
                                            "kernel_length", "soluble_engel"};
  return ids;
}

const std::vector<std::string>& group_checks() {
  static const std::vector<std::string> ids{"radical_identities"};
  return ids;
}

const std::vector<std::string>& twisted_checks() {
  static const std::vector<std::string> ids{"d_subgroups",    "diagonal_overgroups", "factor_commutators",
                                            "regular_power",  "conjugator",          "twisted_probe"};
  return ids;
}

const std::vector<std::string>& instance_checks() {
  static const std::vector<std::string> ids{"soluble_engel", "conjugator", "regular_vector"};
  return ids;
}

bool is_report_only(std::string_view check) {
  return check == "fstar_strong" || check == "radical_strong" || check == "twisted_probe";
}

std::uint64_t nonsoluble_bound(std::uint64_t k, std::uint64_t m) { return (k + 1) * m * (m + 1) / 2; }

std::uint64_t fstar_bound(std::uint64_t k, std::uint64_t m) {
  return ((k + 1) * m * (m + 1) + 2) * (k + 3) / 2;
}

// ---------------------------------------------------------------- contexts

GroupContext::GroupContext(BuiltGroup built, const Caps& caps) : built_(std::move(built)), caps_(caps) {}

bool GroupContext::soluble() const {
  std::call_once(soluble_once_, [&] { soluble_ = is_soluble(group()); });
  return soluble_;
}

const Group& GroupContext::fitting() const {
  std::call_once(fitting_once_, [&] { fitting_ = engelgrp::fitting(group(), caps_); });
  return fitting_;
}

const SeriesReport& GroupContext::fitting_series() const {
  if (!soluble()) throw NotSoluble(name() + " is not soluble");
  std::call_once(fitting_series_once_, [&] { fitting_series_ = engelgrp::fitting_series(group(), caps_); });
  return *fitting_series_;
}

const SeriesReport& GroupContext::fstar_series() const {
  std::call_once(fstar_once_, [&] { fstar_series_ = generalized_fitting_series(group(), caps_); });
  return *fstar_series_;
}

const NonsolubleSeries& GroupContext::nonsoluble() const {
  std::call_once(nonsoluble_once_, [&] { nonsoluble_ = nonsoluble_series(group(), caps_); });
  return *nonsoluble_;
}

ElementContext::ElementContext(const GroupContext& group, Perm g, std::string label, int n_max)
    : group_(group), g_(std::move(g)), label_(std::move(label)), n_max_(n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be positive");
  if (!group.group().contains(g_)) throw NotMember(label_ + " is not in " + group.name());
  fitting_height_.resize(static_cast<std::size_t>(n_max));
  fstar_height_.resize(static_cast<std::size_t>(n_max));
  nonsoluble_length_.resize(static_cast<std::size_t>(n_max));
}

const Group& ElementContext::engel(int n) {
  if (n < 1 || n > n_max_) throw std::out_of_range("n outside 1..n_max");
  if (engel_.empty()) engel_ = engel_subgroups_aut(group_.group(), group_.group(), g_, n_max_, group_.caps());
  return engel_[static_cast<std::size_t>(n - 1)];
}

int ElementContext::fitting_height(int n) {
  auto& slot = fitting_height_[static_cast<std::size_t>(n - 1)];
  if (!slot) slot = fitting_series(engel(n), group_.caps()).height;
  return *slot;
}

int ElementContext::fstar_height(int n) {
  auto& slot = fstar_height_[static_cast<std::size_t>(n - 1)];
  if (!slot) slot = generalized_fitting_series(engel(n), group_.caps()).height;
  return *slot;
}

int ElementContext::nonsoluble_length(int n) {
  auto& slot = nonsoluble_length_[static_cast<std::size_t>(n - 1)];
  if (!slot) slot = engelgrp::nonsoluble_length(engel(n), group_.caps());
  return *slot;
}

// ---------------------------------------------------------------- element checks

CheckReport check_baer(const GroupContext& ctx, ElementContext& e) {
  CheckReport r = element_report("baer", ctx, e);
  const EngelTrace trace = engel_verdict(ctx.group(), e.element(), ctx.caps());
  const bool in_fitting = ctx.fitting().contains(e.element());
  r.witness = {{"trace", trace_to_json(trace)},
               {"in_fitting", in_fitting},
               {"fitting_order", ctx.fitting().order()}};
  settle(r, trace.is_engel() == in_fitting);
  return r;
}

CheckReport check_fitting_bound(const GroupContext& ctx, ElementContext& e) {
  CheckReport r = element_report("fitting_bound", ctx, e);
  const SeriesReport& series = ctx.fitting_series();
  bool ok = true;
  json rows = json::array();
  for (int n = 1; n <= e.n_max(); ++n) {
    const int k = e.fitting_height(n);
    const bool holds = series.term(k + 1).contains(e.element());
    ok = ok && holds;
    rows.push_back({{"n", n}, {"engel_order", e.engel(n).order()}, {"k", k}, {"term", k + 1}, {"holds", holds}});
  }
  r.witness = {{"fitting_height", series.height}, {"rows", rows}};
  settle(r, ok);
  return r;
}

CheckReport check_nonsoluble_bound(const GroupContext& ctx, ElementContext& e) {
  CheckReport r = element_report("nonsoluble_bound", ctx, e);
  const NonsolubleSeries& series = ctx.nonsoluble();
  const auto m = static_cast<std::uint64_t>(omega(e.element()));
  bool ok = true;
  json rows = json::array();
  for (int n = 1; n <= e.n_max(); ++n) {
    const int k = e.nonsoluble_length(n);
    const std::uint64_t j = nonsoluble_bound(static_cast<std::uint64_t>(k), m);
    const int index = static_cast<int>(std::min<std::uint64_t>(j, static_cast<std::uint64_t>(series.length())));
    const bool holds = series.radical(index).contains(e.element());
    ok = ok && holds;
    rows.push_back({{"n", n}, {"engel_order", e.engel(n).order()}, {"k", k}, {"bound", j}, {"holds", holds}});
  }
  r.witness = {{"m", m}, {"nonsoluble_length", series.length()}, {"rows", rows}};
  settle(r, ok);
  return r;
}

CheckReport check_fstar_bound(const GroupContext& ctx, ElementContext& e) {
  CheckReport r = element_report("fstar_bound", ctx, e);
  const SeriesReport& series = ctx.fstar_series();
  const auto m = static_cast<std::uint64_t>(omega(e.element()));
  bool ok = true;
  json rows = json::array();
  for (int n = 1; n <= e.n_max(); ++n) {
    const int k = e.fstar_height(n);
    const std::uint64_t j = fstar_bound(static_cast<std::uint64_t>(k), m);
    const int index = static_cast<int>(std::min<std::uint64_t>(j, static_cast<std::uint64_t>(series.height)));
    const bool holds = series.term(index).contains(e.element());
    ok = ok && holds;
    rows.push_back({{"n", n}, {"engel_order", e.engel(n).order()}, {"k", k}, {"bound", j}, {"holds", holds}});
  }
  r.witness = {{"m", m}, {"fstar_height", series.height}, {"rows", rows}};
  settle(r, ok);
  return r;
}

CheckReport check_fstar_strong(const GroupContext& ctx, ElementContext& e) {
  CheckReport r = element_report("fstar_strong", ctx, e);
  const SeriesReport& series = ctx.fstar_series();
  json rows = json::array();
  bool violated = false;
  for (int n = 1; n <= e.n_max(); ++n) {
    const int k = e.fstar_height(n);
    const bool holds = series.term(k + 1).contains(e.element());
    violated = violated || !holds;
    rows.push_back({{"n", n}, {"k", k}, {"term", k + 1}, {"holds", holds}});
  }
  r.verdict = Verdict::report;
  r.flagged = violated;
  r.witness = {{"fstar_height", series.height}, {"rows", rows}};
  return r;
}

CheckReport check_radical_strong(const GroupContext& ctx, ElementContext& e) {
  CheckReport r = element_report("radical_strong", ctx, e);
  const NonsolubleSeries& series = ctx.nonsoluble();
  json rows = json::array();
  bool violated = false;
  for (int n = 1; n <= e.n_max(); ++n) {
    const int k = e.nonsoluble_length(n);
    const bool holds = series.radical(k).contains(e.element());
    violated = violated || !holds;
    rows.push_back({{"n", n}, {"k", k}, {"holds", holds}});
  }
  r.verdict = Verdict::report;
  r.flagged = violated;
  r.witness = {{"nonsoluble_length", series.length()}, {"rows", rows}};
  return r;
}

CheckReport check_kernel_length(const GroupContext& ctx, ElementContext& e) {
  CheckReport r = element_report("kernel_length", ctx, e);
  const NonsolubleSeries& series = ctx.nonsoluble();
  const int m = omega(e.element());
  bool ok = true;
  json rows = json::array();
  for (int s = 1; m > 0 && m * s <= series.length(); ++s) {
    const Group& kernel = series.kernel(m * s);
    if (meets_cyclic(kernel, e.element())) {
      rows.push_back({{"s", s}, {"kernel_order", kernel.order()}, {"premise", false}});
      continue;
    }
    json lengths = json::array();
    bool holds = true;
    for (int n = 1; n <= e.n_max(); ++n) {
      const int k = e.nonsoluble_length(n);
      lengths.push_back(k);
      holds = holds && k >= s;
    }
    ok = ok && holds;
    rows.push_back({{"s", s}, {"kernel_order", kernel.order()}, {"premise", true}, {"lengths", lengths}, {"holds", holds}});
  }
  r.witness = {{"m", m}, {"nonsoluble_length", series.length()}, {"rows", rows}, {"vacuous", rows.empty()}};
  settle(r, ok);
  return r;
}

CheckReport check_soluble_engel(const GroupContext& ctx, ElementContext& e) {
  CheckReport r = element_report("soluble_engel", ctx, e);
  // The stable term H of G >= [G, g] >= ... satisfies [H, g] = H; when it
  // is soluble the Engel subgroups of the induced automorphism must be H.
  const CommutatorChain chain = commutator_chain(ctx.group(), e.element());
  const Group& h = chain.stable();
  r.witness = {{"chain_orders", orders(chain.terms)}};
  if (h.is_trivial() || !is_soluble(h)) {
    r.witness["vacuous"] = true;
    r.witness["stable_soluble"] = !h.is_trivial() && is_soluble(h);
    settle(r, true);
    return r;
  }
  const std::vector<Group> es = soluble_engel_subgroups(ctx.group(), h, e.element(), e.n_max(), ctx.caps());
  const bool ok = std::all_of(es.begin(), es.end(), [&](const Group& x) { return x == h; });
  r.witness["vacuous"] = false;
  r.witness["stable_order"] = h.order();
  r.witness["engel_orders"] = orders(es);
  settle(r, ok);
  return r;
}

// ---------------------------------------------------------------- group checks

CheckReport check_radical_identities(const GroupContext& ctx) {
  CheckReport r;
  r.check = "radical_identities";
  r.group = ctx.name();
  r.recipe = ctx.built().recipe;
  const Group& g = ctx.group();
  const Caps& caps = ctx.caps();

  std::vector<std::pair<std::string, Group>> normals;
  auto add = [&](std::string label, const Group& n) {
    for (const auto& [l, k] : normals) {
      if (k == n) return;
    }
    normals.emplace_back(std::move(label), n);
  };
  const DerivedSeries derived = derived_series(g);
  for (std::size_t i = 0; i < derived.terms.size(); ++i) add("G^(" + std::to_string(i) + ")", derived.terms[i]);
  if (ctx.soluble()) {
    for (const SeriesTerm& t : ctx.fitting_series().terms) add(t.label, t.group);
  } else {
    add("F1", ctx.fitting());
  }
  for (const SeriesTerm& t : ctx.fstar_series().terms) add(t.label, t.group);
  for (const SeriesTerm& t : ctx.nonsoluble().report.terms) add(t.label, t.group);
  add("Z", center(g, caps));

  const int lambda = ctx.nonsoluble().length();
  const int hstar = ctx.fstar_series().height;
  bool ok = lambda <= hstar;
  json rows = json::array();
  for (const auto& [label, n] : normals) {
    json failures = json::array();
    if (ctx.soluble()) {
      const SeriesReport fn = fitting_series(n, caps);
      const SeriesReport& fg = ctx.fitting_series();
      for (int i = 0; i <= fg.height; ++i) {
        if (!(fn.term(i) == intersection(n, fg.term(i), caps))) failures.push_back("F" + std::to_string(i));
      }
    } else if (!(fitting(n, caps) == intersection(n, ctx.fitting(), caps))) {
      failures.push_back("F1");
    }
    const SeriesReport sn = generalized_fitting_series(n, caps);
    for (int i = 0; i <= hstar; ++i) {
      if (!(sn.term(i) == intersection(n, ctx.fstar_series().term(i), caps))) {
        failures.push_back("F*" + std::to_string(i));
      }
    }
    const NonsolubleSeries rn = nonsoluble_series(n, caps);
    for (int i = 0; i <= lambda; ++i) {
      if (!(rn.radical(i) == intersection(n, ctx.nonsoluble().radical(i), caps))) {
        failures.push_back("R" + std::to_string(i));
      }
    }
    ok = ok && failures.empty();
    rows.push_back({{"normal", label}, {"order", n.order()}, {"failures", failures}});
  }
  r.witness = {{"nonsoluble_length", lambda}, {"fstar_height", hstar}, {"normals", rows}};
  settle(r, ok);
  return r;
}

// ---------------------------------------------------------------- twisted powers

bool twisted_check_applies(std::string_view check, const TwistedPower& t) {
  const bool trivial = t.trivial_twist();
  if (check == "d_subgroups") return trivial;
  if (check == "diagonal_overgroups") return trivial && (t.r == 1 || is_prime(t.r));
  if (check == "factor_commutators") return trivial && is_prime(t.r);
  if (check == "regular_power") return trivial && t.r >= 2;
  if (check == "conjugator") return trivial || is_prime_power(t.phi.order() / t.r);
  if (check == "twisted_probe") return !(trivial && t.r == 1);
  return false;
}

namespace {

void require_applies(std::string_view check, const TwistedPower& t) {
  if (!twisted_check_applies(check, t)) {
    throw PremiseFailed(std::string(check) + " does not apply to this twisted power");
  }
}

}  // namespace

CheckReport check_d_subgroups(const TwistedPower& t, const Caps& caps) {
  require_applies("d_subgroups", t);
  CheckReport r = twisted_report("d_subgroups");
  const Caps big = search_caps(caps);
  std::mt19937_64 rng(0x5eed);

  std::vector<DSubgroup> all;
  for (std::size_t mask = 1; mask < (std::size_t{1} << t.r); ++mask) {
    std::vector<std::size_t> index_set;
    for (std::size_t j = 0; j < t.r; ++j) {
      if (mask >> j & 1) index_set.push_back(j);
    }
    all.push_back(d_subgroup(t, index_set));
  }
  auto is_d_subgroup = [&](const Group& k) {
    return std::any_of(all.begin(), all.end(), [&](const DSubgroup& d) { return d.group == k; });
  };

  bool ok = true;
  json rows = json::array();
  for (const DSubgroup& d : all) {
    const Group n = normalizer(t.s, d.group, big);
    const Group c = centralizer(t.s, d.group, big);
    std::vector<Group> others;
    for (std::size_t j = 0; j < t.r; ++j) {
      if (std::find(d.index_set.begin(), d.index_set.end(), j) == d.index_set.end()) others.push_back(t.factors[j]);
    }
    const Group expected_c = join(others, t.degree());
    const bool centralizer_ok = c == expected_c;
    const bool normalizer_ok = n == join(d.group, c) && n.order() == d.group.order() * c.order();

    // Conjugates of K that are again d-subgroups only come from N_S(K).
    int premise_hits = 0;
    bool conjugation_ok = true;
    for (int trial = 0; trial < 64; ++trial) {
      const Perm x = trial % 2 == 0 ? t.s.random_element(rng)
                                    : n.random_element(rng) * t.factors[d.index_set.front()].random_element(rng);
      std::vector<Perm> gens;
      for (const Perm& y : d.group.generators()) gens.push_back(conjugate(y, x));
      const Group kx(t.degree(), std::move(gens));
      if (!is_d_subgroup(kx)) continue;
      ++premise_hits;
      conjugation_ok = conjugation_ok && n.contains(x);
    }
    ok = ok && centralizer_ok && normalizer_ok && conjugation_ok;
    rows.push_back({{"index_set", d.index_set},
                    {"order", d.group.order()},
                    {"normalizer_order", n.order()},
                    {"centralizer_order", c.order()},
                    {"centralizer_is_complement_product", centralizer_ok},
                    {"normalizer_is_direct", normalizer_ok},
                    {"conjugation_samples", 64},
                    {"conjugation_premise_hits", premise_hits},
                    {"conjugation_ok", conjugation_ok}});
  }
  r.witness = {{"r", t.r}, {"subgroups", rows}};
  settle(r, ok);
  return r;
}

CheckReport check_diagonal_overgroups(const TwistedPower& t, const Caps& caps) {
  require_applies("diagonal_overgroups", t);
  CheckReport r = twisted_report("diagonal_overgroups");
  std::vector<std::size_t> all(t.r);
  for (std::size_t j = 0; j < t.r; ++j) all[j] = j;
  const Group d = d_subgroup(t, all).group;
  const std::vector<Group> found = diagonal_overgroups(t, caps);
  std::vector<Group> expected{d};
  if (!(d == t.s)) expected.push_back(t.s);
  bool ok = found.size() == expected.size();
  for (std::size_t i = 0; ok && i < found.size(); ++i) ok = found[i] == expected[i];
  r.witness = {{"r", t.r}, {"diagonal_order", d.order()}, {"overgroup_orders", orders(found)}};
  settle(r, ok);
  return r;
}

CheckReport check_factor_commutators(const TwistedPower& t, int n_max, const Caps& caps) {
  require_applies("factor_commutators", t);
  CheckReport r = twisted_report("factor_commutators");
  r.params = {{"n_max", n_max}};
  // Asserted: x over all factors. The single-factor subgroups are recorded
  // only; for r > 2 they lie in a product of fewer than r factors when n < r.
  bool ok = true;
  json rows = json::array();
  json single = json::array();
  for (int n = 1; n <= n_max; ++n) {
    const Group f = factor_commutator_subgroup(t, n, caps);
    const bool equal = f == t.s;
    ok = ok && equal;
    rows.push_back({{"n", n}, {"order", f.order()}, {"equals_s", equal}});
    for (std::size_t block = 0; block < t.r; ++block) {
      const Group fb = factor_commutator_subgroup(t, block, n, caps);
      single.push_back({{"block", block}, {"n", n}, {"order", fb.order()}, {"equals_s", fb == t.s}});
    }
  }
  r.witness = {{"r", t.r}, {"s_order", t.s.order()}, {"rows", rows}, {"single_factor", single}};
  settle(r, ok);
  return r;
}

CheckReport check_regular_power(const TwistedPower& t, int n_max, const Caps& caps) {
  require_applies("regular_power", t);
  CheckReport r = twisted_report("regular_power");
  r.params = {{"n_max", n_max}};
  const TwistedEngelReport q = twisted_engel_probe(t, n_max, caps);
  json rows = json::array();
  for (const TwistedEngelRow& row : q.rows) rows.push_back({{"n", row.n}, {"order", row.order}, {"equals_s", row.equals_s}});
  r.witness = {{"r", t.r}, {"s_order", q.s_order}, {"phi_order", q.phi_order}, {"rows", rows}};
  settle(r, q.all_equal());
  return r;
}

CheckReport check_twisted_probe(const TwistedPower& t, int n_max, const Caps& caps) {
  require_applies("twisted_probe", t);
  CheckReport r = twisted_report("twisted_probe");
  r.params = {{"n_max", n_max}};
  const TwistedEngelReport q = twisted_engel_probe(t, n_max, caps);
  json rows = json::array();
  for (const TwistedEngelRow& row : q.rows) rows.push_back({{"n", row.n}, {"order", row.order}, {"equals_s", row.equals_s}});
  r.verdict = Verdict::report;
  r.flagged = !q.all_equal();
  r.witness = {{"r", t.r},
               {"twist", t.twist.to_cycles()},
               {"trivial_twist", q.trivial_twist},
               {"s_order", q.s_order},
               {"phi_order", q.phi_order},
               {"rows", rows}};
  return r;
}

std::vector<std::pair<std::string, Group>> probe_subgroups(const Group& ambient, const Group& s, const Perm& g,
                                                           const Caps& caps, std::uint64_t seed) {
  std::vector<std::pair<std::string, Group>> out;
  auto add = [&](std::string name, Group h) {
    if (h.contains(s)) return;
    for (const auto& [n, k] : out) {
      if (k == h) return;
    }
    out.emplace_back(std::move(name), std::move(h));
  };
  const std::size_t degree = ambient.degree();
  add("<g>", cyclic_subgroup(g));

  // One point stabilizer per orbit.
  std::vector<bool> seen(degree, false);
  for (std::size_t p = 0; p < degree; ++p) {
    if (seen[p]) continue;
    std::vector<std::size_t> orbit{p};
    seen[p] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (const Perm& x : ambient.generators()) {
        const std::size_t q = x[orbit[k]];
        if (!seen[q]) {
          seen[q] = true;
          orbit.push_back(q);
        }
      }
    }
    if (orbit.size() > 1) add("Stab(" + std::to_string(p + 1) + ")", point_stabilizer(ambient, static_cast<Point>(p)));
  }
  if (ambient.order() <= caps.group_order) {
    const Group cg = cyclic_subgroup(g);
    add("N(<g>)", normalizer(ambient, cg, caps));
    add("C(g)", centralizer(ambient, cg, caps));
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 8; ++i) {
    const Perm y = ambient.random_element(rng);
    add("<y" + std::to_string(i) + ">", cyclic_subgroup(y));
    add("<g,y" + std::to_string(i) + ">", Group(degree, {g, y}));
  }
  return out;
}

namespace {

// Runs the conjugator search for every subgroup; pass iff each finds a witness.
bool run_searches(const Group& ambient, const Group& s, const Perm& g, const Group& allowed,
                  const std::vector<std::pair<std::string, Group>>& subgroups, const Caps& caps, json& rows) {
  bool ok = true;
  for (const auto& [name, h] : subgroups) {
    const ConjugatorSearch found = search_conjugator(ambient, s, h, g, allowed, caps);
    ok = ok && found.witness.has_value();
    rows.push_back({{"subgroup", name},
                    {"order", h.order()},
                    {"scanned", found.scanned},
                    {"witness", found.witness ? json(found.witness->to_cycles()) : json(nullptr)}});
  }
  return ok;
}

}  // namespace

CheckReport check_twisted_conjugator(const TwistedPower& t, const Caps& caps) {
  require_applies("conjugator", t);
  CheckReport r = twisted_report("conjugator");
  auto subgroups = probe_subgroups(t.realized, t.s, t.phi, caps);
  if (t.trivial_twist()) {
    std::vector<std::size_t> all(t.r);
    for (std::size_t j = 0; j < t.r; ++j) all[j] = j;
    const Group dphi = join(d_subgroup(t, all).group, cyclic_subgroup(t.phi));
    if (!dphi.contains(t.s)) subgroups.emplace_back("D<phi>", dphi);
  }
  json rows = json::array();
  const bool ok = run_searches(t.realized, t.s, t.phi, Group(t.degree()), subgroups, caps, rows);
  r.witness = {{"premise", t.trivial_twist() ? "orbits of full length" : "prime-power factor stabilizer"},
               {"phi_order", t.phi.order()},
               {"r", t.r},
               {"searches", rows}};
  settle(r, ok);
  return r;
}

// ---------------------------------------------------------------- soluble automorphisms

std::vector<Group> soluble_engel_subgroups(const Group& ambient, const Group& g, const Perm& a, int n_max,
                                           const Caps& caps) {
  if (!is_soluble(g)) throw NotSoluble("the group is not soluble");
  if (!g.is_normalized_by(a)) throw NotNormalized("the automorphism does not normalize the group");
  std::vector<Perm> commutators;
  for (const Perm& x : g.generators()) commutators.push_back(commutator(x, a));
  if (!(normal_closure(g, commutators) == g)) throw PremiseFailed("[G, a] is a proper subgroup");
  return engel_subgroups_aut(ambient, g, a, n_max, caps);
}

namespace {

struct SolubleInstance {
  Group ambient;
  Group g;
  Perm a;
  int n_max;
};

SolubleInstance soluble_instance(std::string_view name) {
  auto make = [](std::size_t degree, std::vector<Perm> gens, Perm a, int n_max) {
    Group g(degree, gens);
    gens.push_back(a);
    return SolubleInstance{Group(degree, std::move(gens)), std::move(g), std::move(a), n_max};
  };
  if (name == "c7_inverting") return make(7, {cyc("(1 2 3 4 5 6 7)", 7)}, cyc("(2 7)(3 6)(4 5)", 7), 4);
  if (name == "c5_order4") return make(5, {cyc("(1 2 3 4 5)", 5)}, cyc("(2 3 5 4)", 5), 4);
  if (name == "c3xc3_inverting") return make(6, {cyc("(1 2 3)", 6), cyc("(4 5 6)", 6)}, cyc("(2 3)(5 6)", 6), 3);
  if (name == "c3xc3_order4") return make(6, {cyc("(1 2 3)", 6), cyc("(4 5 6)", 6)}, cyc("(1 4)(2 5 3 6)", 6), 3);
  if (name == "klein_by_3cycle") return make(4, {cyc("(1 2)(3 4)", 4), cyc("(1 3)(2 4)", 4)}, cyc("(1 2 3)", 4), 3);
  throw std::invalid_argument("unknown soluble automorphism instance '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& soluble_engel_instances() {
  static const std::vector<std::string> names{"c7_inverting", "c5_order4", "c3xc3_inverting", "c3xc3_order4",
                                              "klein_by_3cycle"};
  return names;
}

CheckReport check_soluble_engel_instance(std::string_view name, const Caps& caps) {
  const SolubleInstance inst = soluble_instance(name);
  CheckReport r;
  r.check = "soluble_engel";
  r.group = std::string(name);
  r.params = {{"instance", name}, {"n_max", inst.n_max}};
  const std::vector<Group> es = soluble_engel_subgroups(inst.ambient, inst.g, inst.a, inst.n_max, caps);
  const bool ok = std::all_of(es.begin(), es.end(), [&](const Group& x) { return x == inst.g; });
  r.witness = {{"group_order", inst.g.order()}, {"automorphism", inst.a.to_cycles()}, {"engel_orders", orders(es)}};
  settle(r, ok);
  return r;
}

// ---------------------------------------------------------------- regular vectors

std::uint64_t induced_order(const Group& v, const Perm& alpha) {
  const std::uint64_t o = alpha.order();
  for (std::uint64_t j = 1; j <= o; ++j) {
    if (o % j != 0) continue;
    const Perm aj = alpha.pow(static_cast<std::int64_t>(j));
    if (std::all_of(v.generators().begin(), v.generators().end(),
                    [&](const Perm& x) { return conjugate(x, aj) == x; })) {
      return j;
    }
  }
  return o;
}

std::optional<Perm> find_regular_vector(const Group& v, const Perm& alpha, const Caps& caps) {
  if (!v.is_abelian()) throw PremiseFailed("V is not abelian");
  std::uint64_t p = 0;
  for (const Perm& x : v.generators()) {
    const std::uint64_t o = x.order();
    if (o == 1) continue;
    if (!is_prime(o) || (p != 0 && o != p)) throw PremiseFailed("V is not elementary abelian");
    p = o;
  }
  if (!v.is_normalized_by(alpha)) throw NotNormalized("alpha does not normalize V");
  const std::uint64_t t = induced_order(v, alpha);
  std::vector<Perm> powers;
  for (std::uint64_t j = 1; j < t; ++j) powers.push_back(alpha.pow(static_cast<std::int64_t>(j)));
  auto regular = [&](const Perm& x) {
    return std::none_of(powers.begin(), powers.end(), [&](const Perm& a) { return conjugate(x, a) == x; });
  };
  std::optional<Perm> found;
  v.for_each_element(caps.group_order, [&](const Perm& x) {
    if (x.is_identity() || !regular(x)) return true;
    found = x;
    return false;
  });
  if (!found && regular(v.identity())) found = v.identity();
  return found;
}

namespace {

struct VectorInstance {
  Group v;
  Perm alpha;
};

// The additive group of GF(q^k) acting regularly on itself by translations,
// with alpha multiplication by a primitive element. Elements are base-q
// digit vectors; `modulus` holds the low coefficients of a monic
// irreducible polynomial of degree k.
VectorInstance singer(unsigned q, unsigned k, std::vector<unsigned> modulus) {
  unsigned size = 1;
  for (unsigned i = 0; i < k; ++i) size *= q;
  auto digits = [&](unsigned x) {
    std::vector<unsigned> d(k);
    for (unsigned i = 0; i < k; ++i, x /= q) d[i] = x % q;
    return d;
  };
  auto number = [&](const std::vector<unsigned>& d) {
    unsigned x = 0;
    for (unsigned i = k; i-- > 0;) x = x * q + d[i];
    return x;
  };
  auto times_x = [&](unsigned x) {
    std::vector<unsigned> d = digits(x);
    const unsigned top = d[k - 1];
    for (unsigned i = k - 1; i > 0; --i) d[i] = d[i - 1];
    d[0] = 0;
    for (unsigned i = 0; i < k; ++i) d[i] = (d[i] + q * q - top * modulus[i] % q) % q;
    return number(d);
  };
  std::vector<Perm> gens;
  for (unsigned i = 0; i < k; ++i) {
    std::vector<Point> images(size);
    for (unsigned x = 0; x < size; ++x) {
      std::vector<unsigned> d = digits(x);
      d[i] = (d[i] + 1) % q;
      images[x] = static_cast<Point>(number(d));
    }
    gens.emplace_back(std::move(images));
  }
  std::vector<Point> images(size);
  for (unsigned x = 0; x < size; ++x) images[x] = static_cast<Point>(times_x(x));
  return {Group(size, std::move(gens)), Perm(std::move(images))};
}

VectorInstance vector_instance(std::string_view name) {
  const Group c3c3(6, {cyc("(1 2 3)", 6), cyc("(4 5 6)", 6)});
  if (name == "c5_inverting") return {Group(5, {cyc("(1 2 3 4 5)", 5)}), cyc("(2 5)(3 4)", 5)};
  if (name == "c3xc3_order4") return {c3c3, cyc("(1 4)(2 5 3 6)", 6)};
  if (name == "c3xc3_swap") return {c3c3, cyc("(1 4)(2 5)(3 6)", 6)};
  if (name == "c3xc3_trivial") return {c3c3, Perm(6)};
  if (name == "c2^4_rotation") {
    return {Group(8, {cyc("(1 2)", 8), cyc("(3 4)", 8), cyc("(5 6)", 8), cyc("(7 8)", 8)}),
            cyc("(1 3 5 7)(2 4 6 8)", 8)};
  }
  if (name == "gf8_singer") return singer(2, 3, {1, 1, 0});  // x^3 = x + 1
  if (name == "gf9_singer") return singer(3, 2, {2, 2});     // x^2 = x + 1
  throw std::invalid_argument("unknown regular vector instance '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& regular_vector_instances() {
  static const std::vector<std::string> names{"c5_inverting", "c3xc3_order4",  "c3xc3_swap", "c3xc3_trivial",
                                              "c2^4_rotation", "gf8_singer", "gf9_singer"};
  return names;
}

CheckReport check_regular_vector_instance(std::string_view name, const Caps& caps) {
  const VectorInstance inst = vector_instance(name);
  CheckReport r;
  r.check = "regular_vector";
  r.group = std::string(name);
  r.params = {{"instance", name}};
  const std::uint64_t t = induced_order(inst.v, inst.alpha);
  const std::optional<Perm> v = find_regular_vector(inst.v, inst.alpha, caps);
  std::uint64_t orbit = 0;
  if (v) {
    std::vector<Perm> seen{*v};
    for (Perm x = conjugate(*v, inst.alpha); x != *v; x = conjugate(x, inst.alpha)) seen.push_back(x);
    orbit = seen.size();
  }
  r.witness = {{"v_order", inst.v.order()},
               {"alpha", inst.alpha.to_cycles()},
               {"induced_order", t},
               {"vector", v ? json(v->to_cycles()) : json(nullptr)},
               {"orbit_length", orbit}};
  settle(r, v.has_value() && orbit == t);
  return r;
}

// ---------------------------------------------------------------- covering conditions

CoveringAnalysis analyse_covering(const Group& ambient, const Group& g, const Perm& x, const Caps& caps) {
  if (!ambient.contains(g) || !ambient.contains(x)) throw NotSubgroup("G and g must lie in the ambient group");
  if (!g.is_normalized_by(x)) throw NotNormalized("g does not normalize G");
  CoveringAnalysis a;
  a.radical = soluble_radical(g, caps);
  auto acts_trivially = [&](const Perm& y) {
    return std::all_of(g.generators().begin(), g.generators().end(),
                       [&](const Perm& h) { return a.radical.contains(commutator(h, y)); });
  };
  const std::uint64_t o = x.order();
  for (std::uint64_t k = 1; k <= o; ++k) {
    if (o % k == 0 && acts_trivially(x.pow(static_cast<std::int64_t>(k)))) {
      a.g0_exponent = k;
      break;
    }
  }
  a.g0 = x.pow(static_cast<std::int64_t>(a.g0_exponent));
  for (std::uint64_t i = 1; i < o; ++i) {
    if (g.contains(x.pow(static_cast<std::int64_t>(i))) && i % a.g0_exponent != 0) {
      throw PremiseFailed("a power of g in G acts nontrivially on G/R");
    }
  }

  const Group top = join(g, cyclic_subgroup(x));
  const Homomorphism q = quotient(top, a.radical, caps);
  const Group gbar = q.map(g);
  const Socle soc = socle(gbar, caps);
  if (!(soc.socle == gbar) || soc.minimal_normals.empty()) {
    throw PremiseFailed("G/R is not a direct product of simple groups");
  }
  for (const Group& m : soc.minimal_normals) {
    if (classify_simplicity(m, caps) != Simplicity::nonabelian_simple ||
        m.order() != soc.minimal_normals.front().order()) {
      throw PremiseFailed("G/R is not a product of isomorphic nonabelian simple groups");
    }
  }
  a.factors = soc.minimal_normals.size();
  const Perm xbar = q.map(x);
  std::vector<std::size_t> orbit{0};
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    std::vector<Perm> gens;
    for (const Perm& y : soc.minimal_normals[orbit[k]].generators()) gens.push_back(conjugate(y, xbar));
    const Group image(gbar.degree(), std::move(gens));
    for (std::size_t j = 0; j < soc.minimal_normals.size(); ++j) {
      if (soc.minimal_normals[j] == image && std::find(orbit.begin(), orbit.end(), j) == orbit.end()) {
        orbit.push_back(j);
      }
    }
  }
  if (orbit.size() != a.factors) throw PremiseFailed("g does not permute the simple factors transitively");
  a.stabilizer_order = a.g0_exponent / a.factors;
  if (!is_prime_power(a.stabilizer_order)) throw PremiseFailed("factor stabilizer in <g> is not a p-group");

  // A perfect G with central R has no proper subgroup covering G/R: if
  // BR = G then G = [G, G] = [B, B] <= B.
  const bool central = std::all_of(a.radical.generators().begin(), a.radical.generators().end(), [&](const Perm& z) {
    return std::all_of(g.generators().begin(), g.generators().end(),
                       [&](const Perm& h) { return commutator(z, h).is_identity(); });
  });
  a.minimal_cover_certified = a.radical.is_trivial() || (central && is_perfect(g));
  if (!a.minimal_cover_certified) throw PremiseFailed("minimality of the cover could not be certified");
  return a;
}

namespace {

struct ConjugatorInstance {
  Group ambient;
  Group s;
  Perm g;
  std::optional<Group> only;  // fixed H, otherwise probe_subgroups
  bool expect_witness = true;
  bool covering = false;  // analyse the covering conditions and allow <g0>
};

ConjugatorInstance conjugator_instance(std::string_view name) {
  if (name == "alt5_order6_point_stabilizer") {
    return {symmetric_group(5), alternating_group(5), cyc("(1 2 3)(4 5)", 5),
            point_stabilizer(symmetric_group(5), 0), false, false};
  }
  if (name == "sl2_5_semilinear") {
    const Perm t = cyc("(5 6 7 8 9)(10 12 14 11 13)(15 18 16 19 17)(20 24 23 22 21)", 24);
    const Perm w = cyc("(1 5 4 20)(2 10 3 15)(6 9 24 21)(7 14 23 16)(8 19 22 11)(12 13 18 17)", 24);
    const Perm d = cyc("(1 2 4 3)(6 7 9 8)(11 12 14 13)(16 17 19 18)(21 22 24 23)", 24);
    return {Group(24, {t, w, d}), Group(24, {t, w}), d, std::nullopt, true, true};
  }
  if (name == "alt5_times_c3") {
    return {Group(8, {cyc("(1 2 3 4 5)", 8), cyc("(1 2)", 8), cyc("(6 7 8)", 8)}),
            Group(8, {cyc("(1 2 3)", 8), cyc("(1 2 3 4 5)", 8)}), cyc("(1 2)(6 7 8)", 8), std::nullopt, true, true};
  }
  throw std::invalid_argument("unknown conjugator instance '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& conjugator_instances() {
  static const std::vector<std::string> names{"alt5_order6_point_stabilizer", "sl2_5_semilinear", "alt5_times_c3"};
  return names;
}

CheckReport check_conjugator_instance(std::string_view name, const Caps& caps) {
  const ConjugatorInstance inst = conjugator_instance(name);
  CheckReport r;
  r.check = "conjugator";
  r.group = std::string(name);
  r.params = {{"instance", name}};
  Group allowed(inst.ambient.degree());
  if (inst.covering) {
    const CoveringAnalysis a = analyse_covering(inst.ambient, inst.s, inst.g, caps);
    allowed = cyclic_subgroup(a.g0);
    r.witness["covering"] = {{"radical_order", a.radical.order()},
                             {"g0", a.g0.to_cycles()},
                             {"g0_exponent", a.g0_exponent},
                             {"factors", a.factors},
                             {"stabilizer_order", a.stabilizer_order},
                             {"minimal_cover", "perfect group with central radical"}};
  }
  std::vector<std::pair<std::string, Group>> subgroups;
  if (inst.only) {
    subgroups.emplace_back("Stab(1)", *inst.only);
  } else {
    subgroups = probe_subgroups(inst.ambient, inst.s, inst.g, caps);
  }
  json rows = json::array();
  const bool all_found = run_searches(inst.ambient, inst.s, inst.g, allowed, subgroups, caps, rows);
  r.witness["expect_witness"] = inst.expect_witness;
  r.witness["s_order"] = inst.s.order();
  r.witness["searches"] = rows;
  if (inst.expect_witness) {
    settle(r, all_found);
  } else {
    // Every search must fail after scanning all of S.
    const bool exhaustive = std::all_of(rows.begin(), rows.end(), [&](const json& row) {
      return row["witness"].is_null() && row["scanned"].get<std::uint64_t>() == inst.s.order();
    });
    settle(r, exhaustive);
  }
  return r;
}

std::vector<GroupRecipe> builtin_twisted_recipes() {
  GroupRecipe cube;
  cube.name = "alt5^3";
  cube.constructor = "twisted_power";
  cube.params = {{"base", "alt(5)"}, {"r", 3}};
  GroupRecipe twisted_cube = cube;
  twisted_cube.name = "alt5^3_twist_(1 2)";
  twisted_cube.params["twist"] = "(1 2)";
  return {cube, twisted_cube};
}

// ---------------------------------------------------------------- dispatch

namespace {

bool contains_id(const std::vector<std::string>& ids, std::string_view id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

CheckReport dispatch(const CheckRequest& req, const Caps& caps) {
  const int n_max = req.params.value("n_max", 3);
  if (req.params.contains("instance")) {
    const std::string name = req.params["instance"].get<std::string>();
    if (req.check == "soluble_engel") return check_soluble_engel_instance(name, caps);
    if (req.check == "regular_vector") return check_regular_vector_instance(name, caps);
    if (req.check == "conjugator") return check_conjugator_instance(name, caps);
    throw std::invalid_argument("check '" + req.check + "' has no built-in instances");
  }
  if (!req.recipe) throw std::invalid_argument("check '" + req.check + "' needs a recipe");
  if (contains_id(twisted_checks(), req.check)) {
    const TwistedPower t = build_twisted(*req.recipe, caps);
    if (req.check == "d_subgroups") return check_d_subgroups(t, caps);
    if (req.check == "diagonal_overgroups") return check_diagonal_overgroups(t, caps);
    if (req.check == "factor_commutators") return check_factor_commutators(t, n_max, caps);
    if (req.check == "regular_power") return check_regular_power(t, n_max, caps);
    if (req.check == "conjugator") return check_twisted_conjugator(t, caps);
    return check_twisted_probe(t, n_max, caps);
  }
  const GroupContext ctx(build_group(*req.recipe, caps.group_order), caps);
  if (req.check == "radical_identities") return check_radical_identities(ctx);
  if (!contains_id(element_checks(), req.check)) throw std::invalid_argument("unknown check '" + req.check + "'");
  if (!req.element) throw std::invalid_argument("check '" + req.check + "' needs an element");
  ElementContext e(ctx, resolve_element(ctx.built(), *req.element), *req.element, n_max);
  if (req.check == "baer") return check_baer(ctx, e);
  if (req.check == "fitting_bound") return check_fitting_bound(ctx, e);
  if (req.check == "nonsoluble_bound") return check_nonsoluble_bound(ctx, e);
  if (req.check == "fstar_bound") return check_fstar_bound(ctx, e);
  if (req.check == "fstar_strong") return check_fstar_strong(ctx, e);
  if (req.check == "radical_strong") return check_radical_strong(ctx, e);
  if (req.check == "kernel_length") return check_kernel_length(ctx, e);
  return check_soluble_engel(ctx, e);
}

}  // namespace

CheckReport run_check(const CheckRequest& req, const Caps& caps) {
  CheckReport r = guarded(req.check, req.group, [&] { return dispatch(req, caps); });
  r.check = req.check;
  r.group = req.group;
  r.recipe = req.recipe;
  r.element = req.element;
  r.params = req.params;
  return r;
}

}  // namespace engelgrp::harness
