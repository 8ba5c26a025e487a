#include "engelgrp/engel.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "engelgrp/series.hpp"

namespace engelgrp {

namespace {

using PermSet = std::unordered_set<Perm>;

std::vector<Perm> sorted(const PermSet& s) {
  std::vector<Perm> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

std::size_t hash_sorted(const std::vector<Perm>& v) {
  std::size_t h = v.size();
  for (const Perm& p : v) h = h * 1000003u ^ p.hash();
  return h;
}

PermSet first_set(const Group& g, const Perm& a, const Caps& caps) {
  PermSet c;
  g.for_each_element(caps.group_order, [&](const Perm& x) { c.insert(commutator(x, a)); });
  return c;
}

PermSet next_set(const PermSet& c, const Perm& a) {
  PermSet next;
  next.reserve(c.size());
  for (const Perm& x : c) next.insert(commutator(x, a));
  return next;
}

bool is_identity_set(const PermSet& c) { return c.size() == 1 && c.begin()->is_identity(); }

// <c>, stopping early once the order reaches `ceiling` (0 for no ceiling).
Group generated(std::size_t degree, const PermSet& c, std::uint64_t ceiling) {
  SubgroupBuilder builder(degree);
  for (const Perm& x : c) {
    builder.add(x);
    if (builder.order() == ceiling) break;
  }
  return builder.build();
}

void check_aut_arguments(const Group& ambient, const Group& g, const Perm& a, int n,
                         const Caps& caps) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n > caps.engel_n) {
    throw CapExceeded("n = " + std::to_string(n) + " exceeds the cap " + std::to_string(caps.engel_n));
  }
  if (!ambient.contains(a)) throw NotMember("automorphism element outside the ambient group");
  if (!ambient.contains(g)) throw NotSubgroup("group outside the ambient group");
  if (!g.is_normalized_by(a)) throw NotNormalized("element does not normalize the group");
}

// Iterates the set map until step n, or until the sequence is seen to be
// periodic, in which case C_n is read off the cycle.
PermSet nth_set(PermSet c, const Perm& a, int n) {
  std::vector<std::vector<Perm>> history;
  std::multimap<std::size_t, int> by_hash;
  for (int k = 1; k < n; ++k) {
    if (is_identity_set(c)) return c;
    std::vector<Perm> key = sorted(c);
    const std::size_t h = hash_sorted(key);
    auto [lo, hi] = by_hash.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (history[static_cast<std::size_t>(it->second - 1)] != key) continue;
      const int start = it->second;
      const int length = k - start;
      const int target = start + (n - start) % length;
      const auto& found = history[static_cast<std::size_t>(target - 1)];
      return PermSet(found.begin(), found.end());
    }
    by_hash.emplace(h, k);
    history.push_back(std::move(key));
    c = next_set(c, a);
  }
  return c;
}

}  // namespace

const char* to_string(EngelTrace::Verdict v) {
  return v == EngelTrace::Verdict::engel ? "engel" : "non_engel";
}

EngelTrace engel_verdict(const Group& g, const Perm& x, const Caps& caps, bool with_subgroup_orders) {
  if (!g.contains(x)) throw NotMember("element outside the group");
  EngelTrace trace;
  trace.g = x;
  PermSet c = first_set(g, x, caps);
  std::vector<std::vector<Perm>> history;
  std::multimap<std::size_t, int> by_hash;
  for (int k = 1;; ++k) {
    trace.set_sizes.push_back(c.size());
    if (with_subgroup_orders) trace.subgroup_orders.push_back(generated(g.degree(), c, g.order()).order());
    if (is_identity_set(c)) {
      trace.verdict = EngelTrace::Verdict::engel;
      trace.engel_at = k;
      return trace;
    }
    std::vector<Perm> key = sorted(c);
    const std::size_t h = hash_sorted(key);
    auto [lo, hi] = by_hash.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (history[static_cast<std::size_t>(it->second - 1)] != key) continue;
      trace.verdict = EngelTrace::Verdict::non_engel;
      trace.cycle_start = it->second;
      trace.cycle_length = k - it->second;
      trace.set_sizes.pop_back();
      if (with_subgroup_orders) trace.subgroup_orders.pop_back();
      return trace;
    }
    by_hash.emplace(h, k);
    history.push_back(std::move(key));
    c = next_set(c, x);
  }
}

Group engel_subgroup(const Group& g, const Perm& x, int n, const Caps& caps) {
  if (!g.contains(x)) throw NotMember("element outside the group");
  return engel_subgroup_aut(g, g, x, n, caps);
}

Group engel_subgroup_aut(const Group& ambient, const Group& g, const Perm& a, int n,
                         const Caps& caps) {
  check_aut_arguments(ambient, g, a, n, caps);
  const PermSet c = nth_set(first_set(g, a, caps), a, n);
  return generated(g.degree(), c, g.order());
}

std::vector<Group> engel_subgroups_aut(const Group& ambient, const Group& g, const Perm& a,
                                       int n_max, const Caps& caps) {
  check_aut_arguments(ambient, g, a, n_max, caps);
  std::vector<Group> result;
  PermSet c = first_set(g, a, caps);
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) c = next_set(c, a);
    result.push_back(generated(g.degree(), c, g.order()));
  }
  return result;
}

Group iterated_commutator_subgroup(const Group& domain, const Perm& a, int n, const Caps& caps) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (a.degree() != domain.degree()) throw DegreeMismatch("commutators across degrees");
  const PermSet c = nth_set(first_set(domain, a, caps), a, n);
  return generated(domain.degree(), c, 0);
}

CommutatorChain commutator_chain(const Group& g, const Perm& x) {
  if (!g.contains(x)) throw NotMember("element outside the group");
  CommutatorChain chain;
  chain.terms.push_back(g);
  for (;;) {
    const Group& h = chain.terms.back();
    std::vector<Perm> commutators;
    for (const Perm& y : h.generators()) commutators.push_back(commutator(y, x));
    std::vector<Perm> conjugators = h.generators();
    conjugators.push_back(x);
    const Group over(g.degree(), conjugators);
    Group next = normal_closure(over, commutators);
    if (next.order() == h.order()) break;
    chain.terms.push_back(std::move(next));
  }
  return chain;
}

}  // namespace engelgrp
