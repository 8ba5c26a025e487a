#include <random>
#include <unordered_set>

#include "doctest.h"
#include "engelgrp/group.hpp"
#include "engelgrp/homomorphism.hpp"
#include "oracle/closure.hpp"

using namespace engelgrp;

namespace {

Perm cyc(const char* text, std::size_t degree) { return Perm::from_cycles(text, degree); }

std::vector<Group> sample_groups() {
  return {
      Group(3),
      symmetric_group(3),
      symmetric_group(4),
      symmetric_group(5),
      alternating_group(4),
      alternating_group(5),
      alternating_group(6),
      cyclic_group(8),
      dihedral_group(6),
      dihedral_group(2),
      Group(6, {cyc("(1 2)(3 4)", 6), cyc("(1 3 5)(2 4 6)", 6)}),
      Group(8, {cyc("(1 2 3 4)", 8), cyc("(5 6 7)", 8), cyc("(1 5)(2 6)(3 7)(4 8)", 8)}),
  };
}

}  // namespace

TEST_CASE("generated groups have the expected orders") {
  CHECK(Group(5).order() == 1);
  CHECK(Group(3, {cyc("(1 2)", 3), cyc("(1 2 3)", 3)}).order() == 6);
  CHECK(Group(5, {cyc("(1 2 3 4 5)", 5), cyc("(1 2 3)", 5)}).order() == 60);
  CHECK(symmetric_group(6).order() == 720);
  CHECK(alternating_group(6).order() == 360);
  CHECK(dihedral_group(7).order() == 14);
  CHECK(dihedral_group(2).order() == 4);
}

TEST_CASE("chain order matches exhaustive closure") {
  for (const Group& g : sample_groups()) {
    const auto all = oracle::closure(g.generators(), g.degree());
    CHECK(g.order() == all.size());
    const auto elements = g.elements(10000);
    CHECK(elements.size() == all.size());
    std::unordered_set<Perm> distinct(elements.begin(), elements.end());
    CHECK(distinct.size() == elements.size());
    for (const Perm& p : all) CHECK(distinct.count(p) == 1);
  }
}

TEST_CASE("membership agrees with enumeration") {
  std::mt19937_64 rng(7);
  for (const Group& g : sample_groups()) {
    const auto all = oracle::closure(g.generators(), g.degree());
    std::unordered_set<Perm> members(all.begin(), all.end());
    for (const Perm& p : all) CHECK(g.contains(p));
    const Group full = symmetric_group(g.degree());
    int outside = 0;
    for (int k = 0; k < 2000 && outside < 100; ++k) {
      const Perm p = full.random_element(rng);
      if (members.count(p)) continue;
      ++outside;
      CHECK_FALSE(g.contains(p));
    }
  }
  CHECK(symmetric_group(3).contains(cyc("(1 2)", 3)));
  CHECK_FALSE(alternating_group(5).contains(cyc("(1 2)", 5)));
  CHECK(Group(4, {cyc("(1 2 3 4)", 4)}).contains(cyc("(1 3)(2 4)", 4)));
}

TEST_CASE("enumeration respects caps") {
  CHECK(symmetric_group(3).elements(10).size() == 6);
  CHECK(alternating_group(4).elements(100).size() == 12);
  CHECK_THROWS_AS(alternating_group(5).elements(10), CapExceeded);
}

TEST_CASE("group equality is mutual membership") {
  const Group a(3, {cyc("(1 2)", 3), cyc("(1 2 3)", 3)});
  const Group b(3, {cyc("(2 3)", 3), cyc("(1 3)", 3)});
  CHECK(a == b);
  CHECK_FALSE(a == alternating_group(3));
  CHECK(a.rebased(std::vector<Point>{2, 1}) == a);
  CHECK(a.rebased(std::vector<Point>{2, 1}).chain().base_point(0) == 2);
}

TEST_CASE("subgroup builder grows incrementally") {
  SubgroupBuilder b(5);
  CHECK(b.add(cyc("(1 2 3)", 5)));
  CHECK_FALSE(b.add(cyc("(1 3 2)", 5)));
  CHECK(b.add(cyc("(3 4 5)", 5)));
  CHECK(b.build() == alternating_group(5));
}

TEST_CASE("intersections, centralizers, normalizers") {
  const Group s4 = symmetric_group(4);
  const Group a4 = alternating_group(4);
  const Group d8(4, {cyc("(1 2 3 4)", 4), cyc("(1 3)", 4)});
  CHECK(intersection(a4, d8).order() == 4);
  CHECK(centralizer(s4, std::vector<Perm>{cyc("(1 2)", 4)}).order() == 4);
  CHECK(centralizer(s4, s4).order() == 1);
  CHECK(normalizer(s4, Group(4, {cyc("(1 2 3 4)", 4)})).order() == 8);
}

TEST_CASE("coset actions") {
  const Group s3 = symmetric_group(3);
  const Homomorphism sign = coset_action(s3, alternating_group(3));
  CHECK(sign.image().order() == 2);
  CHECK(sign.image().degree() == 2);
  CHECK(sign.kernel() == alternating_group(3));

  const Homomorphism trivial = coset_action(s3, s3);
  CHECK(trivial.image().order() == 1);

  const Group s4 = symmetric_group(4);
  const Group v4(4, {cyc("(1 2)(3 4)", 4), cyc("(1 3)(2 4)", 4)});
  const Homomorphism q = coset_action(s4, v4);
  CHECK(q.image().order() == 6);
  CHECK(q.image().degree() == 6);
  CHECK(q.kernel() == v4);

  // Non-normal subgroup: kernel is the core.
  const Homomorphism points = coset_action(s4, Group(4, {cyc("(1 2)", 4), cyc("(1 2 3)", 4)}));
  CHECK(points.image().order() == 24);
  CHECK(points.kernel().is_trivial());

  CHECK_THROWS_AS(coset_action(alternating_group(4), Group(4, {cyc("(1 2)", 4)})), NotSubgroup);
  Caps tight;
  tight.quotient_index = 10;
  CHECK_THROWS_AS(coset_action(symmetric_group(5), Group(5), tight), IndexCapExceeded);
}

TEST_CASE("homomorphisms respect products") {
  std::mt19937_64 rng(11);
  const Group g = symmetric_group(5);
  const Homomorphism q = coset_action(g, alternating_group(5));
  const Group s4 = symmetric_group(4);
  const Group v4(4, {cyc("(1 2)(3 4)", 4), cyc("(1 3)(2 4)", 4)});
  const Homomorphism r = quotient(s4, v4);
  for (int k = 0; k < 100; ++k) {
    const Perm x = g.random_element(rng);
    const Perm y = g.random_element(rng);
    CHECK(q.map(x * y) == q.map(x) * q.map(y));
    const Perm a = s4.random_element(rng);
    const Perm b = s4.random_element(rng);
    CHECK(r.map(a * b) == r.map(a) * r.map(b));
    CHECK(r.map(r.lift(r.map(a))) == r.map(a));
  }
  CHECK_THROWS_AS(Homomorphism(symmetric_group(3), {cyc("(1 2 3)", 3), cyc("(1 2)", 3)}),
                  InvalidHomomorphism);
}

TEST_CASE("quotients are faithful on G/N") {
  const Group s4 = symmetric_group(4);
  const Group v4(4, {cyc("(1 2)(3 4)", 4), cyc("(1 3)(2 4)", 4)});
  const Homomorphism q = quotient(s4, v4);
  CHECK(q.image().order() == 6);
  CHECK(q.kernel() == v4);
  CHECK(q.preimage(q.image()) == s4);
  CHECK(q.preimage(Group(q.image().degree())) == v4);

  // Alt(5) x Alt(5) modulo one factor: index 60, reduced to a small degree.
  std::vector<Perm> gens;
  const Group a5 = alternating_group(5);
  for (const Perm& p : a5.generators()) {
    gens.push_back(p.extended(10));
    std::vector<Point> shifted(10);
    for (Point i = 0; i < 10; ++i) shifted[i] = i;
    for (Point i = 0; i < 5; ++i) shifted[5 + i] = static_cast<Point>(p[i] + 5);
    gens.emplace_back(shifted);
  }
  const Group a5a5(10, gens);
  const Group first(10, {gens[0], gens[2], gens[4]});
  CHECK(first.order() == 60);
  const Homomorphism r = quotient(a5a5, first);
  CHECK(r.image().order() == 60);
  CHECK(r.image().degree() < 60);
  CHECK(r.kernel() == first);

  CHECK_THROWS_AS(quotient(s4, Group(4, {cyc("(1 2)", 4)})), NotNormal);
  CHECK(quotient(s4, Group(4)).image() == s4);
}
