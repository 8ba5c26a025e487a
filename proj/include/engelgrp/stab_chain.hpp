#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "engelgrp/perm.hpp"

namespace engelgrp {

// Base and strong generating set built by the deterministic Schreier-Sims
// algorithm. The base starts with the requested prefix and is extended by
// the first moved point of any strong generator that fixes the current base.
//
// Transversals are stored explicitly (representative and its inverse per
// orbit point), so sifting costs one multiplication per level.
class StabChain {
public:
  StabChain() = default;
  StabChain(std::size_t degree, std::span<const Perm> generators,
            std::span<const Point> base_prefix = {});

  // Adds g to the generating set. Returns false if g was already a member.
  bool extend(const Perm& g);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t depth() const noexcept { return levels_.size(); }
  std::uint64_t order() const;

  std::vector<Point> base() const;
  const std::vector<Perm>& strong_generators() const noexcept { return strong_; }
  // Strong generators fixing the first `level` base points.
  std::vector<Perm> level_generators(std::size_t level) const;

  Point base_point(std::size_t level) const { return levels_[level].base; }
  std::span<const Point> orbit(std::size_t level) const { return levels_[level].orbit; }
  bool in_orbit(std::size_t level, Point p) const { return levels_[level].slot[p] >= 0; }
  // u with base_point(level)^u == p; p must lie in the orbit.
  const Perm& transversal(std::size_t level, Point p) const {
    return levels_[level].reps[static_cast<std::size_t>(levels_[level].slot[p])];
  }
  const Perm& transversal_inverse(std::size_t level, Point p) const {
    return levels_[level].inv_reps[static_cast<std::size_t>(levels_[level].slot[p])];
  }

  // Sifts p through levels [from, depth). Returns the residue and the level
  // at which sifting stopped (depth() if it went all the way through).
  std::pair<Perm, std::size_t> sift(const Perm& p, std::size_t from = 0) const;
  bool contains(const Perm& p) const;

  // Calls f on every element exactly once, in a fixed order. Stops early if
  // f returns false.
  template <class F>
  void visit(F&& f) const {
    Perm identity(degree_);
    if (levels_.empty()) {
      f(identity);
      return;
    }
    visit_level(levels_.size() - 1, identity, f);
  }

  Perm random_element(std::mt19937_64& rng) const;

private:
  struct Level {
    Point base = 0;
    std::vector<std::size_t> gens;  // indices into strong_
    std::vector<Point> orbit;
    std::vector<std::int32_t> slot;  // point -> index into reps, or -1
    std::vector<Perm> reps;
    std::vector<Perm> inv_reps;
  };

  template <class F>
  bool visit_level(std::size_t level, const Perm& prefix, F& f) const {
    for (const Perm& rep : levels_[level].reps) {
      Perm next = prefix * rep;
      if (level == 0) {
        if (!f(next)) return false;
      } else if (!visit_level(level - 1, next, f)) {
        return false;
      }
    }
    return true;
  }

  void add_level(Point base);
  void add_strong_generator(const Perm& g, std::size_t last_level);
  void rebuild_level(std::size_t level);
  void complete(std::size_t start_level);

  std::size_t degree_ = 0;
  std::vector<Perm> strong_;
  std::vector<Level> levels_;
};

}  // namespace engelgrp
