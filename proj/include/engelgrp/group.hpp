#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "engelgrp/caps.hpp"
#include "engelgrp/errors.hpp"
#include "engelgrp/perm.hpp"
#include "engelgrp/stab_chain.hpp"

namespace engelgrp {

// A permutation group given by generators, with a verified stabilizer chain.
// Immutable after construction; copies share the chain.
class Group {
public:
  Group() : Group(0) {}
  explicit Group(std::size_t degree, std::vector<Perm> generators = {},
                 std::span<const Point> base_prefix = {});

  static Group trivial(std::size_t degree) { return Group(degree); }
  // Wraps an already complete chain for the group generated by `generators`.
  static Group adopt(std::vector<Perm> generators, StabChain chain);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Perm>& generators() const noexcept { return generators_; }
  const StabChain& chain() const noexcept { return *chain_; }
  std::uint64_t order() const noexcept { return order_; }
  bool is_trivial() const noexcept { return order_ == 1; }

  bool contains(const Perm& p) const;
  bool contains(const Group& h) const;
  bool is_normalized_by(const Perm& g) const;
  bool is_normal_in(const Group& g) const;
  bool is_abelian() const;

  Perm identity() const { return Perm(degree_); }
  Perm random_element(std::mt19937_64& rng) const { return chain_->random_element(rng); }

  // Every element exactly once, in the chain's fixed order.
  std::vector<Perm> elements(std::uint64_t cap) const;

  template <class F>
  void for_each_element(std::uint64_t cap, F&& f) const {
    require_enumerable(cap);
    chain_->visit([&](const Perm& p) {
      f(p);
      return true;
    });
  }

  // Same group with a chain whose base begins with `prefix`.
  Group rebased(std::span<const Point> prefix) const;

  void require_enumerable(std::uint64_t cap) const;

  // Equal iff same degree and each generating set lies in the other group.
  friend bool operator==(const Group& a, const Group& b);

private:
  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
  std::shared_ptr<const StabChain> chain_;
  std::uint64_t order_ = 1;
};

Group group_from_generators(std::size_t degree, std::vector<Perm> generators);

// Grows a subgroup one element at a time, keeping a single chain.
class SubgroupBuilder {
public:
  explicit SubgroupBuilder(std::size_t degree, std::span<const Point> base_prefix = {});
  explicit SubgroupBuilder(const Group& start);

  // Returns true if p was new (the group grew).
  bool add(const Perm& p);
  bool add_all(std::span<const Perm> ps);
  bool contains(const Perm& p) const { return chain_.contains(p); }
  std::uint64_t order() const { return chain_.order(); }
  Group build() const;

private:
  std::size_t degree_;
  std::vector<Point> prefix_;
  std::vector<Perm> generators_;
  StabChain chain_;
};

// <A, B>
Group join(const Group& a, const Group& b);
Group join(std::span<const Group> groups, std::size_t degree);
// A ∩ B by enumerating the smaller group.
Group intersection(const Group& a, const Group& b, const Caps& caps = {});
// C_G(X) for a set X of permutations, by enumeration of G.
Group centralizer(const Group& g, std::span<const Perm> xs, const Caps& caps = {});
Group centralizer(const Group& g, const Group& x, const Caps& caps = {});
// N_G(H) by enumeration of G.
Group normalizer(const Group& g, const Group& h, const Caps& caps = {});
// <g>
Group cyclic_subgroup(const Perm& g);
// Stabilizer of the point p (0-based).
Group point_stabilizer(const Group& g, Point p);

// Standard families on {1..n}.
Group symmetric_group(std::size_t n);
Group alternating_group(std::size_t n);
Group cyclic_group(std::size_t n);
// Dihedral group of order 2n acting on n points.
Group dihedral_group(std::size_t n);

}  // namespace engelgrp
