#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace engelgrp {

using Point = std::uint16_t;

inline constexpr std::size_t kMaxDegree = 65535;

// A bijection of {0, ..., degree-1}. Products act on the right: (p * q)
// applies p first, then q, so x^(p*q) = (x^p)^q.
class Perm {
public:
  Perm() = default;
  explicit Perm(std::size_t degree);
  explicit Perm(std::vector<Point> images);
  Perm(std::initializer_list<Point> images);

  // Parses cycle notation such as "(1 2 3)(4 5)" with 1-based points. With
  // degree == 0 the degree is the largest point mentioned.
  static Perm from_cycles(std::string_view text, std::size_t degree = 0);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](std::size_t i) const noexcept { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Perm inverse() const;
  Perm pow(std::int64_t e) const;
  std::uint64_t order() const;

  // Smallest moved point, or degree() when the permutation is the identity.
  std::size_t first_moved() const noexcept;

  // Same permutation on a larger point set (extra points fixed).
  Perm extended(std::size_t degree) const;

  // 1-based cycle notation; the identity prints as "()".
  std::string to_cycles() const;

  std::size_t hash() const noexcept;

  friend Perm operator*(const Perm& a, const Perm& b);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) {
    return a.images_ <=> b.images_;
  }

private:
  std::vector<Point> images_;
};

// x^g = g^-1 x g
Perm conjugate(const Perm& x, const Perm& g);
// [x, g] = x^-1 g^-1 x g
Perm commutator(const Perm& x, const Perm& g);
// Left-normed [x, g, ..., g] with g repeated n times.
Perm iterated_commutator(const Perm& x, const Perm& g, int n);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept { return p.hash(); }
};

}  // namespace engelgrp

template <>
struct std::hash<engelgrp::Perm> {
  std::size_t operator()(const engelgrp::Perm& p) const noexcept { return p.hash(); }
};
