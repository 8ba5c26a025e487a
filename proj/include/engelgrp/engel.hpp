#pragma once

#include <cstdint>
#include <vector>

#include "engelgrp/caps.hpp"
#include "engelgrp/group.hpp"

namespace engelgrp {

// The commutator sets C_1 = {[x, g] : x in G}, C_{k+1} = {[c, g] : c in C_k}
// for an element g, or for conjugation by g on a normal subgroup.
struct EngelTrace {
  enum class Verdict { engel, non_engel };

  Perm g;
  Verdict verdict = Verdict::non_engel;
  // |C_k| for k = 1, 2, ... as far as they were computed.
  std::vector<std::uint64_t> set_sizes;
  // |E_k(g)| for the same k, when requested.
  std::vector<std::uint64_t> subgroup_orders;
  // Least n with C_n = {1} (engel verdict).
  int engel_at = 0;
  // C_{cycle_start} = C_{cycle_start + cycle_length} (non_engel verdict).
  int cycle_start = 0;
  int cycle_length = 0;

  bool is_engel() const { return verdict == Verdict::engel; }
};

const char* to_string(EngelTrace::Verdict v);

// Decides whether g is a left-Engel element of G by iterating the C-sets
// until they reach {1} or repeat.
EngelTrace engel_verdict(const Group& g, const Perm& x, const Caps& caps = {},
                         bool with_subgroup_orders = false);

// E_n(g) = <C_n>.
Group engel_subgroup(const Group& g, const Perm& x, int n, const Caps& caps = {});

// E_{G,n}(a) for the automorphism of G induced by conjugation by a, where
// a lies in `ambient` and normalizes G.
Group engel_subgroup_aut(const Group& ambient, const Group& g, const Perm& a, int n,
                         const Caps& caps = {});

// E_{G,1}(a), ..., E_{G,n_max}(a) from a single pass over the C-sets.
std::vector<Group> engel_subgroups_aut(const Group& ambient, const Group& g, const Perm& a,
                                       int n_max, const Caps& caps = {});

// <[x, a, ..., a] : x in domain> with a repeated n times. Unlike the Engel
// subgroups, the domain need not be normalized by a.
Group iterated_commutator_subgroup(const Group& domain, const Perm& a, int n,
                                   const Caps& caps = {});

struct CommutatorChain {
  // G, [G, g], [[G, g], g], ... down to the first repeated term.
  std::vector<Group> terms;
  const Group& stable() const { return terms.back(); }
};

// [H, g] is computed as the normal closure in <H, g> of the commutators of
// the generators of H with g.
CommutatorChain commutator_chain(const Group& g, const Perm& x);

}  // namespace engelgrp
