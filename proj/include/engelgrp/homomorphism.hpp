#pragma once

#include <cstddef>
#include <vector>

#include "engelgrp/caps.hpp"
#include "engelgrp/group.hpp"

namespace engelgrp {

// A homomorphism from a permutation group, given by the images of the
// source generators.
//
// Internally it keeps the graph {(x, phi(x))} as a permutation group on the
// disjoint union of source and target points, with two stabilizer chains:
// one based on source points (for images) and one based on target points
// (for lifts and the kernel). The graph has order |source| exactly when the
// generator images define a homomorphism, which is how the constructor
// validates its input.
class Homomorphism {
public:
  Homomorphism(Group source, std::vector<Perm> generator_images);

  static Homomorphism identity(const Group& g);

  const Group& source() const noexcept { return source_; }
  const Group& image() const noexcept { return image_; }
  const std::vector<Perm>& generator_images() const noexcept { return generator_images_; }
  const Group& kernel() const noexcept { return kernel_; }

  Perm map(const Perm& x) const;
  Group map(const Group& h) const;
  // Some preimage of y; throws NotMember if y is outside the image.
  Perm lift(const Perm& y) const;
  // Full preimage of a subgroup of the image.
  Group preimage(const Group& q) const;

private:
  Perm graph_element(const Perm& x, const Perm& y) const;

  Group source_;
  std::vector<Perm> generator_images_;
  Group image_;
  bool identity_ = false;
  std::size_t source_degree_ = 0;
  std::size_t target_degree_ = 0;
  StabChain by_source_;
  StabChain by_target_;
  std::size_t target_levels_ = 0;
  Group kernel_;
};

// Action of G on the right cosets of H (which need not be normal). The
// kernel is core_G(H).
Homomorphism coset_action(const Group& g, const Group& h, const Caps& caps = {});

// A faithful permutation representation of G/N for normal N. The action is
// on the cosets of a subgroup M >= N with core_G(M) = N, found greedily so
// that the image has small degree. The kernel is exactly N.
Homomorphism quotient(const Group& g, const Group& n, const Caps& caps = {});

}  // namespace engelgrp
