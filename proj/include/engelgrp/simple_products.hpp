#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "engelgrp/caps.hpp"
#include "engelgrp/group.hpp"

namespace engelgrp {

// S = S_1 x ... x S_r on r blocks of d points each, with phi moving block j
// to block j+1 and applying `twist` on the way from the last block back to
// the first. phi^r acts on every factor as conjugation by the twist.
struct TwistedPower {
  Group base;  // S_1 on {0..d-1}
  Perm twist;  // normalizes base, degree d
  std::size_t r = 1;
  Group s;
  Perm phi;
  Group realized;  // <S, phi>
  std::vector<Group> factors;

  std::size_t block_degree() const { return base.degree(); }
  std::size_t degree() const { return r * base.degree(); }
  bool trivial_twist() const { return twist.is_identity(); }
  // Copy of x (degree d) acting on block j.
  Perm embed(const Perm& x, std::size_t block) const;
};

// Throws TwistNotNormalizing if the twist does not normalize the base, and
// InvariantViolation if S meets <phi> nontrivially.
TwistedPower build_twisted_power(const Group& base, std::size_t r, const Perm& twist);
TwistedPower build_twisted_power(const Group& base, std::size_t r);

struct DSubgroup {
  std::vector<std::size_t> index_set;  // 0-based block indices
  Group group;
};

// Diagonal subgroup on the blocks in I. Requires a trivial twist.
DSubgroup d_subgroup(const TwistedPower& t, const std::vector<std::size_t>& index_set);

// All phi-invariant subgroups H with D <= H <= S, ordered by increasing
// order. Requires a trivial twist and r prime (or r = 1).
std::vector<Group> diagonal_overgroups(const TwistedPower& t, const Caps& caps = {});

// Compares the prime-exponent vectors (k_2, k_3, k_5, ...) of a and b
// lexicographically, smallest prime first.
std::strong_ordering lex_prec(std::uint64_t a, std::uint64_t b);

struct ConjugatorSearch {
  std::optional<Perm> witness;
  std::uint64_t scanned = 0;
};

// First x in S (in enumeration order) with H^x meeting <g> inside `allowed`.
ConjugatorSearch search_conjugator(const Group& ambient, const Group& s, const Group& h,
                                   const Perm& g, const Group& allowed, const Caps& caps = {});

// <[x, phi, ..., phi] : x in domain> with phi repeated n times; no
// normalization is required of the domain.
Group factor_commutator_subgroup(const TwistedPower& t, std::size_t block, int n,
                                 const Caps& caps = {});
// The same with x ranging over every factor; this one is phi-invariant.
Group factor_commutator_subgroup(const TwistedPower& t, int n, const Caps& caps = {});

struct TwistedEngelRow {
  int n = 0;
  std::uint64_t order = 0;
  bool equals_s = false;
};

struct TwistedEngelReport {
  std::uint64_t s_order = 0;
  std::uint64_t phi_order = 0;
  bool trivial_twist = false;
  std::vector<TwistedEngelRow> rows;
  bool all_equal() const;
};

// E_{S,n}(phi) for n = 1..n_max. S is enumerated under the search cap.
TwistedEngelReport twisted_engel_probe(const TwistedPower& t, int n_max, const Caps& caps = {});

}  // namespace engelgrp
