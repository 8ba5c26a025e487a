#include "engelgrp/stab_chain.hpp"

#include <algorithm>
#include <limits>

#include "engelgrp/errors.hpp"

namespace engelgrp {

namespace {

bool fixes_prefix(const Perm& g, const std::vector<Point>& base, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    if (g[base[i]] != base[i]) return false;
  }
  return true;
}

}  // namespace

StabChain::StabChain(std::size_t degree, std::span<const Perm> generators,
                     std::span<const Point> base_prefix)
    : degree_(degree) {
  for (Point b : base_prefix) {
    if (b >= degree) throw DegreeMismatch("base point outside the point set");
    const bool duplicate = std::any_of(levels_.begin(), levels_.end(),
                                       [b](const Level& l) { return l.base == b; });
    if (!duplicate) add_level(b);
  }
  for (const Perm& g : generators) {
    if (g.degree() != degree) throw DegreeMismatch("generator degree mismatch");
    if (g.is_identity()) continue;
    if (std::find(strong_.begin(), strong_.end(), g) != strong_.end()) continue;
    std::vector<Point> b = base();
    if (fixes_prefix(g, b, b.size())) add_level(static_cast<Point>(g.first_moved()));
    strong_.push_back(g);
  }
  std::vector<Point> b = base();
  for (std::size_t gi = 0; gi < strong_.size(); ++gi) {
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      if (!fixes_prefix(strong_[gi], b, l)) break;
      levels_[l].gens.push_back(gi);
    }
  }
  for (std::size_t l = 0; l < levels_.size(); ++l) rebuild_level(l);
  if (!levels_.empty()) complete(levels_.size() - 1);
}

void StabChain::add_level(Point base) {
  Level level;
  level.base = base;
  level.slot.assign(degree_, -1);
  level.orbit.push_back(base);
  level.slot[base] = 0;
  level.reps.emplace_back(degree_);
  level.inv_reps.emplace_back(degree_);
  levels_.push_back(std::move(level));
}

void StabChain::rebuild_level(std::size_t l) {
  Level& level = levels_[l];
  for (Point p : level.orbit) level.slot[p] = -1;
  level.orbit.assign(1, level.base);
  level.slot[level.base] = 0;
  level.reps.assign(1, Perm(degree_));
  level.inv_reps.assign(1, Perm(degree_));
  for (std::size_t k = 0; k < level.orbit.size(); ++k) {
    const Point p = level.orbit[k];
    for (std::size_t gi : level.gens) {
      const Perm& g = strong_[gi];
      const Point q = g[p];
      if (level.slot[q] >= 0) continue;
      level.slot[q] = static_cast<std::int32_t>(level.reps.size());
      level.orbit.push_back(q);
      Perm rep = level.reps[k] * g;
      level.inv_reps.push_back(rep.inverse());
      level.reps.push_back(std::move(rep));
    }
  }
}

void StabChain::add_strong_generator(const Perm& g, std::size_t last_level) {
  strong_.push_back(g);
  const std::size_t gi = strong_.size() - 1;
  for (std::size_t l = 0; l <= last_level && l < levels_.size(); ++l) {
    levels_[l].gens.push_back(gi);
  }
}

std::pair<Perm, std::size_t> StabChain::sift(const Perm& p, std::size_t from) const {
  Perm h = p;
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const Level& level = levels_[l];
    const Point image = h[level.base];
    const std::int32_t s = level.slot[image];
    if (s < 0) return {std::move(h), l};
    h = h * level.inv_reps[static_cast<std::size_t>(s)];
  }
  return {std::move(h), levels_.size()};
}

bool StabChain::contains(const Perm& p) const {
  if (p.degree() != degree_) throw DegreeMismatch("membership test across degrees");
  return sift(p).first.is_identity();
}

void StabChain::complete(std::size_t start_level) {
  // Levels above `start_level` are complete on entry.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(start_level);
  while (i >= 0) {
    const auto level_index = static_cast<std::size_t>(i);
    bool complete_here = true;
    for (std::size_t k = 0; k < levels_[level_index].orbit.size() && complete_here; ++k) {
      const Level& level = levels_[level_index];
      const Point delta = level.orbit[k];
      for (std::size_t gi : level.gens) {
        const Perm& s = strong_[gi];
        const Point target = s[delta];
        const Perm& u = level.reps[k];
        const Perm& v_inv = level.inv_reps[static_cast<std::size_t>(level.slot[target])];
        // Schreier generator u_delta * s * u_target^-1.
        Perm h = u * s * v_inv;
        if (h.is_identity()) continue;
        auto [residue, stop] = sift(h, level_index + 1);
        if (residue.is_identity()) continue;
        if (stop == levels_.size()) add_level(static_cast<Point>(residue.first_moved()));
        add_strong_generator(residue, stop);
        for (std::size_t l = level_index + 1; l <= stop; ++l) rebuild_level(l);
        i = static_cast<std::ptrdiff_t>(stop);
        complete_here = false;
        break;
      }
    }
    if (complete_here) --i;
  }
}

bool StabChain::extend(const Perm& g) {
  if (g.degree() != degree_) throw DegreeMismatch("generator degree mismatch");
  auto [residue, stop] = sift(g);
  if (residue.is_identity()) return false;
  if (stop == levels_.size()) add_level(static_cast<Point>(residue.first_moved()));
  add_strong_generator(residue, stop);
  for (std::size_t l = 0; l <= stop; ++l) rebuild_level(l);
  complete(stop);
  return true;
}

std::uint64_t StabChain::order() const {
  std::uint64_t result = 1;
  for (const Level& level : levels_) {
    const std::uint64_t len = level.orbit.size();
    if (result > std::numeric_limits<std::uint64_t>::max() / len) {
      throw CapExceeded("group order overflows 64 bits");
    }
    result *= len;
  }
  return result;
}

std::vector<Point> StabChain::base() const {
  std::vector<Point> b;
  b.reserve(levels_.size());
  for (const Level& level : levels_) b.push_back(level.base);
  return b;
}

std::vector<Perm> StabChain::level_generators(std::size_t level) const {
  std::vector<Perm> result;
  if (level >= levels_.size()) return result;
  for (std::size_t gi : levels_[level].gens) result.push_back(strong_[gi]);
  return result;
}

Perm StabChain::random_element(std::mt19937_64& rng) const {
  Perm g(degree_);
  for (std::size_t l = levels_.size(); l-- > 0;) {
    std::uniform_int_distribution<std::size_t> pick(0, levels_[l].reps.size() - 1);
    g = g * levels_[l].reps[pick(rng)];
  }
  return g;
}

}  // namespace engelgrp
