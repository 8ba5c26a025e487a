#include "engelgrp/homomorphism.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace engelgrp {

namespace {

struct PointVectorHash {
  std::size_t operator()(const std::vector<Point>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Point p : v) {
      h ^= p;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Canonical label of the right coset H*x: the lexicographically least image
// of G's base over the coset. `h` must be based on a prefix of `base`.
std::vector<Point> coset_key(const Group& h, const std::vector<Point>& base, const Perm& x) {
  const StabChain& chain = h.chain();
  Perm y = x;
  for (std::size_t l = 0; l < chain.depth(); ++l) {
    const auto orbit = chain.orbit(l);
    Point best = orbit[0];
    for (Point d : orbit) {
      if (y[d] < y[best]) best = d;
    }
    if (best != chain.base_point(l)) y = chain.transversal(l, best) * y;
  }
  std::vector<Point> key;
  key.reserve(base.size());
  for (Point b : base) key.push_back(y[b]);
  return key;
}

// Images of G's generators acting on the right cosets of H.
std::vector<Perm> coset_images(const Group& g, const Group& h, std::uint64_t index_cap) {
  if (!g.contains(h)) throw NotSubgroup("coset action requires a subgroup");
  const std::uint64_t index = g.order() / h.order();
  if (index > index_cap) {
    throw IndexCapExceeded("index " + std::to_string(index) + " exceeds quotient cap " +
                           std::to_string(index_cap));
  }
  const std::vector<Point> base = g.chain().base();
  const Group hb = h.rebased(base);

  std::vector<Perm> reps{g.identity()};
  std::unordered_map<std::vector<Point>, std::size_t, PointVectorHash> index_of;
  index_of.emplace(coset_key(hb, base, reps[0]), 0);
  std::vector<std::vector<Point>> table(g.generators().size());

  for (std::size_t c = 0; c < reps.size(); ++c) {
    for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
      Perm next = reps[c] * g.generators()[gi];
      auto key = coset_key(hb, base, next);
      auto [it, inserted] = index_of.emplace(std::move(key), reps.size());
      if (inserted) reps.push_back(std::move(next));
      table[gi].push_back(static_cast<Point>(it->second));
    }
  }
  std::vector<Perm> images;
  images.reserve(table.size());
  for (auto& column : table) images.emplace_back(std::move(column));
  return images;
}

Perm prime_order_power(const Perm& x) {
  const std::uint64_t o = x.order();
  for (std::uint64_t p = 2; p * p <= o; ++p) {
    if (o % p == 0) return x.pow(static_cast<std::int64_t>(o / p));
  }
  return x;
}

}  // namespace

Homomorphism::Homomorphism(Group source, std::vector<Perm> generator_images)
    : source_(std::move(source)), generator_images_(std::move(generator_images)) {
  if (generator_images_.size() != source_.generators().size()) {
    throw InvalidHomomorphism("one image per source generator is required");
  }
  source_degree_ = source_.degree();
  target_degree_ = generator_images_.empty() ? 1 : generator_images_.front().degree();
  for (const Perm& y : generator_images_) {
    if (y.degree() != target_degree_) throw DegreeMismatch("target degree mismatch");
  }
  image_ = Group(target_degree_, generator_images_);
  if (source_degree_ + target_degree_ > kMaxDegree) {
    throw CapExceeded("graph of homomorphism exceeds the maximal degree");
  }

  std::vector<Perm> graph_gens;
  for (std::size_t i = 0; i < generator_images_.size(); ++i) {
    graph_gens.push_back(graph_element(source_.generators()[i], generator_images_[i]));
  }
  by_source_ = StabChain(source_degree_ + target_degree_, graph_gens, source_.chain().base());
  if (by_source_.order() != source_.order()) {
    throw InvalidHomomorphism("generator images do not define a homomorphism");
  }
  std::vector<Point> target_base = image_.chain().base();
  for (Point& p : target_base) p = static_cast<Point>(p + source_degree_);
  target_levels_ = target_base.size();
  by_target_ = StabChain(source_degree_ + target_degree_, graph_gens, target_base);

  std::vector<Perm> kernel_gens;
  for (const Perm& k : by_target_.level_generators(target_levels_)) {
    std::vector<Point> part(k.images().begin(), k.images().begin() + source_degree_);
    kernel_gens.emplace_back(std::move(part));
  }
  kernel_ = Group(source_degree_, std::move(kernel_gens));
}

Homomorphism Homomorphism::identity(const Group& g) {
  Homomorphism h(Group(g.degree()), {});
  h.source_ = g;
  h.generator_images_ = g.generators();
  h.image_ = g;
  h.identity_ = true;
  h.source_degree_ = g.degree();
  h.target_degree_ = g.degree();
  h.kernel_ = Group(g.degree());
  return h;
}

Perm Homomorphism::graph_element(const Perm& x, const Perm& y) const {
  std::vector<Point> images(source_degree_ + target_degree_);
  for (std::size_t i = 0; i < source_degree_; ++i) images[i] = x[i];
  for (std::size_t i = 0; i < target_degree_; ++i) {
    images[source_degree_ + i] = static_cast<Point>(y[i] + source_degree_);
  }
  return Perm(std::move(images));
}

Perm Homomorphism::map(const Perm& x) const {
  if (identity_) {
    if (!source_.contains(x)) throw NotMember("element outside the source group");
    return x;
  }
  if (!source_.contains(x)) throw NotMember("element outside the source group");
  auto [residue, stop] = by_source_.sift(graph_element(x, Perm(target_degree_)));
  std::vector<Point> part(target_degree_);
  for (std::size_t i = 0; i < target_degree_; ++i) {
    part[i] = static_cast<Point>(residue[source_degree_ + i] - source_degree_);
  }
  return Perm(std::move(part)).inverse();
}

Group Homomorphism::map(const Group& h) const {
  std::vector<Perm> gens;
  for (const Perm& x : h.generators()) gens.push_back(map(x));
  return Group(target_degree_, std::move(gens));
}

Perm Homomorphism::lift(const Perm& y) const {
  if (identity_) {
    if (!image_.contains(y)) throw NotMember("element outside the image");
    return y;
  }
  if (y.degree() != target_degree_) throw DegreeMismatch("lift across degrees");
  Perm h = graph_element(Perm(source_degree_), y);
  for (std::size_t l = 0; l < target_levels_; ++l) {
    const Point b = by_target_.base_point(l);
    const Point image = h[b];
    if (!by_target_.in_orbit(l, image)) throw NotMember("element outside the image");
    h = h * by_target_.transversal_inverse(l, image);
  }
  for (std::size_t i = source_degree_; i < source_degree_ + target_degree_; ++i) {
    if (h[i] != i) throw NotMember("element outside the image");
  }
  std::vector<Point> part(h.images().begin(), h.images().begin() + source_degree_);
  return Perm(std::move(part)).inverse();
}

Group Homomorphism::preimage(const Group& q) const {
  if (identity_) {
    if (!source_.contains(q)) throw NotSubgroup("subgroup outside the image");
    return q;
  }
  SubgroupBuilder builder(kernel_);
  for (const Perm& y : q.generators()) builder.add(lift(y));
  return builder.build();
}

Homomorphism coset_action(const Group& g, const Group& h, const Caps& caps) {
  return Homomorphism(g, coset_images(g, h, caps.quotient_index));
}

Homomorphism quotient(const Group& g, const Group& n, const Caps& caps) {
  if (!n.is_normal_in(g)) throw NotNormal("quotient by a subgroup that is not normal");
  if (n.is_trivial()) return Homomorphism::identity(g);
  const std::uint64_t index = g.order() / n.order();
  if (index > caps.quotient_index) {
    throw IndexCapExceeded("index " + std::to_string(index) + " exceeds quotient cap " +
                           std::to_string(caps.quotient_index));
  }
  if (index == 1) {
    return Homomorphism(g, std::vector<Perm>(g.generators().size(), Perm(1)));
  }

  Group stabilizer = n;
  std::vector<Perm> images = coset_images(g, stabilizer, caps.quotient_index);
  std::size_t degree = images.empty() ? 1 : images.front().degree();

  // Enlarge the point stabilizer while the action stays faithful on G/N.
  if (index > 16) {
    std::vector<Perm> candidates;
    for (const Perm& x : g.generators()) candidates.push_back(prime_order_power(x));
    std::mt19937_64 rng(0x5eedu);
    for (int k = 0; k < 48; ++k) candidates.push_back(prime_order_power(g.random_element(rng)));
    for (const Perm& x : candidates) {
      if (degree <= 2 || stabilizer.contains(x)) continue;
      SubgroupBuilder builder(stabilizer);
      builder.add(x);
      if (builder.order() == g.order()) continue;
      if (g.order() / builder.order() >= degree) continue;
      Group larger = builder.build();
      std::vector<Perm> trial = coset_images(g, larger, caps.quotient_index);
      const std::size_t trial_degree = trial.empty() ? 1 : trial.front().degree();
      if (Group(trial_degree, trial).order() == index) {
        stabilizer = std::move(larger);
        images = std::move(trial);
        degree = trial_degree;
      }
    }
  }
  Homomorphism hom(g, std::move(images));
  if (hom.image().order() != index) {
    throw InvariantViolation("quotient image has the wrong order");
  }
  return hom;
}

}  // namespace engelgrp
