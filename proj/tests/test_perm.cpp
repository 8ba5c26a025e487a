#include <array>

#include "doctest.h"
#include "engelgrp/errors.hpp"
#include "engelgrp/perm.hpp"

using engelgrp::Perm;

namespace {

// Pointwise composition on raw image tables, independent of Perm::operator*.
std::vector<engelgrp::Point> apply_in_order(std::initializer_list<const Perm*> perms, std::size_t n) {
  std::vector<engelgrp::Point> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t y = x;
    for (const Perm* p : perms) y = (*p)[y];
    out[x] = static_cast<engelgrp::Point>(y);
  }
  return out;
}

}  // namespace

TEST_CASE("cycle notation round trip") {
  const Perm p = Perm::from_cycles("(1 2 3)(4 5)");
  CHECK(p.degree() == 5);
  CHECK(p.to_cycles() == "(1 2 3)(4 5)");
  CHECK(Perm(4).to_cycles() == "()");
  CHECK(Perm::from_cycles("()", 3).is_identity());
  CHECK(Perm::from_cycles("(1,3)", 4).to_cycles() == "(1 3)");
}

TEST_CASE("malformed cycles report the offset") {
  try {
    (void)Perm::from_cycles("(1 2");
    FAIL("expected a parse error");
  } catch (const engelgrp::ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS((void)Perm::from_cycles("(1 x)"), engelgrp::ParseError);
  CHECK_THROWS_AS((void)Perm::from_cycles("(0 1)"), engelgrp::ParseError);
}

TEST_CASE("products act on the right") {
  const Perm p = Perm::from_cycles("(1 2 3)", 3);
  const Perm q = Perm::from_cycles("(1 2)", 3);
  CHECK((p * q).images().size() == 3);
  const auto expected = apply_in_order({&p, &q}, 3);
  const Perm pq = p * q;
  CHECK(std::vector<engelgrp::Point>(pq.images().begin(), pq.images().end()) == expected);
  CHECK_THROWS_AS((void)(p * Perm(4)), engelgrp::DegreeMismatch);
}

TEST_CASE("conjugates and commutators") {
  const Perm p = Perm::from_cycles("(1 2 3)", 3);
  const Perm q = Perm::from_cycles("(1 2)", 3);
  CHECK(engelgrp::conjugate(Perm::from_cycles("(1 2)", 3), p) == Perm::from_cycles("(2 3)", 3));
  CHECK(engelgrp::commutator(p, Perm(3)).is_identity());

  const Perm pi = p.inverse();
  const Perm qi = q.inverse();
  const auto expected = apply_in_order({&pi, &qi, &p, &q}, 3);
  const Perm c = engelgrp::commutator(p, q);
  CHECK(std::vector<engelgrp::Point>(c.images().begin(), c.images().end()) == expected);
  CHECK(c == Perm::from_cycles("(1 2 3)", 3));

  CHECK(engelgrp::iterated_commutator(p, q, 2) ==
        engelgrp::commutator(engelgrp::commutator(p, q), q));
  CHECK(engelgrp::iterated_commutator(p, q, 0) == p);
}

TEST_CASE("order, power and inverse") {
  const Perm p = Perm::from_cycles("(1 2 3)(4 5)");
  CHECK(p.order() == 6);
  CHECK(p.pow(6).is_identity());
  CHECK(p.pow(-1) == p.inverse());
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.pow(3) == Perm::from_cycles("(4 5)", 5));
  CHECK(Perm(1).order() == 1);
}

TEST_CASE("invalid images are rejected") {
  CHECK_THROWS_AS(Perm({0, 0, 1}), engelgrp::InvalidPermutation);
  CHECK_THROWS_AS(Perm({0, 3}), engelgrp::InvalidPermutation);
}
