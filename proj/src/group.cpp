#include "engelgrp/group.hpp"

#include <algorithm>
#include <numeric>

namespace engelgrp {

Group::Group(std::size_t degree, std::vector<Perm> generators, std::span<const Point> base_prefix)
    : degree_(degree) {
  for (Perm& g : generators) {
    if (g.degree() != degree) throw DegreeMismatch("generator degree mismatch");
    if (g.is_identity()) continue;
    if (std::find(generators_.begin(), generators_.end(), g) != generators_.end()) continue;
    generators_.push_back(std::move(g));
  }
  chain_ = std::make_shared<const StabChain>(degree, generators_, base_prefix);
  order_ = chain_->order();
}

Group Group::adopt(std::vector<Perm> generators, StabChain chain) {
  Group g;
  g.degree_ = chain.degree();
  for (Perm& p : generators) {
    if (p.is_identity()) continue;
    if (std::find(g.generators_.begin(), g.generators_.end(), p) != g.generators_.end()) continue;
    g.generators_.push_back(std::move(p));
  }
  g.order_ = chain.order();
  g.chain_ = std::make_shared<const StabChain>(std::move(chain));
  return g;
}

Group group_from_generators(std::size_t degree, std::vector<Perm> generators) {
  return Group(degree, std::move(generators));
}

bool Group::contains(const Perm& p) const {
  if (p.degree() != degree_) throw DegreeMismatch("membership test across degrees");
  return chain_->contains(p);
}

bool Group::contains(const Group& h) const {
  if (h.degree_ != degree_) throw DegreeMismatch("subgroup test across degrees");
  if (h.order_ > order_ || order_ % h.order_ != 0) return false;
  return std::all_of(h.generators_.begin(), h.generators_.end(),
                     [this](const Perm& g) { return chain_->contains(g); });
}

bool Group::is_normalized_by(const Perm& g) const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const Perm& x) { return chain_->contains(conjugate(x, g)); });
}

bool Group::is_normal_in(const Group& g) const {
  if (!g.contains(*this)) return false;
  return std::all_of(g.generators_.begin(), g.generators_.end(),
                     [this](const Perm& x) { return is_normalized_by(x); });
}

bool Group::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      if (generators_[i] * generators_[j] != generators_[j] * generators_[i]) return false;
    }
  }
  return true;
}

void Group::require_enumerable(std::uint64_t cap) const {
  if (order_ > cap) {
    throw CapExceeded("group of order " + std::to_string(order_) + " exceeds enumeration cap " +
                      std::to_string(cap));
  }
}

std::vector<Perm> Group::elements(std::uint64_t cap) const {
  require_enumerable(cap);
  std::vector<Perm> result;
  result.reserve(order_);
  chain_->visit([&](const Perm& p) {
    result.push_back(p);
    return true;
  });
  return result;
}

Group Group::rebased(std::span<const Point> prefix) const {
  Group g;
  g.degree_ = degree_;
  g.generators_ = generators_;
  g.chain_ = std::make_shared<const StabChain>(degree_, chain_->strong_generators(), prefix);
  g.order_ = g.chain_->order();
  return g;
}

bool operator==(const Group& a, const Group& b) {
  if (a.degree_ != b.degree_ || a.order_ != b.order_) return false;
  return a.contains(b) && b.contains(a);
}

SubgroupBuilder::SubgroupBuilder(std::size_t degree, std::span<const Point> base_prefix)
    : degree_(degree),
      prefix_(base_prefix.begin(), base_prefix.end()),
      chain_(degree, std::span<const Perm>{}, base_prefix) {}

SubgroupBuilder::SubgroupBuilder(const Group& start)
    : degree_(start.degree()), generators_(start.generators()), chain_(start.chain()) {}

bool SubgroupBuilder::add(const Perm& p) {
  if (!chain_.extend(p)) return false;
  generators_.push_back(p);
  return true;
}

bool SubgroupBuilder::add_all(std::span<const Perm> ps) {
  bool grew = false;
  for (const Perm& p : ps) grew = add(p) || grew;
  return grew;
}

Group SubgroupBuilder::build() const { return Group::adopt(generators_, chain_); }

Group join(const Group& a, const Group& b) {
  if (a.degree() != b.degree()) throw DegreeMismatch("join across degrees");
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  SubgroupBuilder builder(a);
  builder.add_all(b.generators());
  return builder.build();
}

Group join(std::span<const Group> groups, std::size_t degree) {
  SubgroupBuilder builder(degree);
  for (const Group& g : groups) builder.add_all(g.generators());
  return builder.build();
}

Group intersection(const Group& a, const Group& b, const Caps& caps) {
  if (a.degree() != b.degree()) throw DegreeMismatch("intersection across degrees");
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  const Group& small = a.order() <= b.order() ? a : b;
  const Group& large = a.order() <= b.order() ? b : a;
  SubgroupBuilder builder(a.degree());
  small.for_each_element(caps.group_order, [&](const Perm& p) {
    if (!builder.contains(p) && large.contains(p)) builder.add(p);
  });
  return builder.build();
}

Group centralizer(const Group& g, std::span<const Perm> xs, const Caps& caps) {
  SubgroupBuilder builder(g.degree());
  g.for_each_element(caps.group_order, [&](const Perm& p) {
    if (builder.contains(p)) return;
    const bool commutes =
        std::all_of(xs.begin(), xs.end(), [&](const Perm& x) { return p * x == x * p; });
    if (commutes) builder.add(p);
  });
  return builder.build();
}

Group centralizer(const Group& g, const Group& x, const Caps& caps) {
  return centralizer(g, x.generators(), caps);
}

Group normalizer(const Group& g, const Group& h, const Caps& caps) {
  SubgroupBuilder builder(g.degree());
  g.for_each_element(caps.group_order, [&](const Perm& p) {
    if (builder.contains(p)) return;
    if (h.is_normalized_by(p)) builder.add(p);
  });
  return builder.build();
}

Group point_stabilizer(const Group& g, Point p) {
  if (p >= g.degree()) throw std::out_of_range("point outside the group's domain");
  const Point prefix[] = {p};
  const Group rb = g.rebased(prefix);
  if (rb.chain().depth() == 0 || rb.chain().base_point(0) != p) return g;
  return Group(g.degree(), rb.chain().level_generators(1));
}

Group cyclic_subgroup(const Perm& g) { return Group(g.degree(), {g}); }

Group symmetric_group(std::size_t n) {
  if (n < 2) return Group(n);
  std::vector<Point> cycle(n);
  std::iota(cycle.begin(), cycle.end(), Point{1});
  cycle.back() = 0;
  std::vector<Point> swap(n);
  std::iota(swap.begin(), swap.end(), Point{0});
  std::swap(swap[0], swap[1]);
  return Group(n, {Perm(swap), Perm(cycle)});
}

Group alternating_group(std::size_t n) {
  if (n < 3) return Group(n);
  // 3-cycles (1 2 k) generate Alt(n).
  std::vector<Perm> gens;
  for (std::size_t k = 2; k < n; ++k) {
    std::vector<Point> images(n);
    std::iota(images.begin(), images.end(), Point{0});
    images[0] = 1;
    images[1] = static_cast<Point>(k);
    images[k] = 0;
    gens.emplace_back(images);
  }
  return Group(n, std::move(gens));
}

Group cyclic_group(std::size_t n) {
  if (n < 2) return Group(std::max<std::size_t>(n, 1));
  std::vector<Point> cycle(n);
  std::iota(cycle.begin(), cycle.end(), Point{1});
  cycle.back() = 0;
  return Group(n, {Perm(cycle)});
}

Group dihedral_group(std::size_t n) {
  if (n < 3) {
    // Degenerate cases: D2 = C2, D4 = V4 on 4 points.
    if (n == 2) return Group(4, {Perm({1, 0, 3, 2}), Perm({2, 3, 0, 1})});
    return Group(2, {Perm({1, 0})});
  }
  std::vector<Point> rotation(n);
  std::iota(rotation.begin(), rotation.end(), Point{1});
  rotation.back() = 0;
  std::vector<Point> reflection(n);
  for (std::size_t i = 0; i < n; ++i) reflection[i] = static_cast<Point>((n - i) % n);
  return Group(n, {Perm(rotation), Perm(reflection)});
}

}  // namespace engelgrp
