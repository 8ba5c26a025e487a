#include "doctest.h"
#include "engelgrp/classes.hpp"
#include "engelgrp/engel.hpp"
#include "engelgrp/series.hpp"
#include "oracle/naive_group.hpp"

using namespace engelgrp;

namespace {

Perm cyc(const char* text, std::size_t degree) { return Perm::from_cycles(text, degree); }

std::vector<Group> small_groups() {
  return {
      symmetric_group(3),
      symmetric_group(4),
      alternating_group(4),
      alternating_group(5),
      dihedral_group(6),
      dihedral_group(4),
      Group(6, {cyc("(1 2)", 6), cyc("(1 2 3)", 6), cyc("(1 4)(2 5)(3 6)", 6)}),
      Group(8, {cyc("(3 4 5)(6 8 7)", 8), cyc("(1 3 2 6)(4 5 8 7)", 8)}),
  };
}

}  // namespace

TEST_CASE("Engel subgroups in Sym(3)") {
  const Group s3 = symmetric_group(3);
  CHECK(engel_subgroup(s3, cyc("(1 2 3)", 3), 2).is_trivial());
  CHECK(engel_subgroup(s3, cyc("(1 2)", 3), 3).order() == 3);
  CHECK(engel_subgroup(s3, Perm(3), 1).is_trivial());
  CHECK_THROWS_AS(engel_subgroup(alternating_group(3), cyc("(1 2)", 3), 1), NotMember);
  Caps caps;
  caps.engel_n = 4;
  CHECK_THROWS_AS(engel_subgroup(s3, cyc("(1 2)", 3), 5, caps), CapExceeded);
}

TEST_CASE("Engel verdicts") {
  const Group s3 = symmetric_group(3);
  const EngelTrace a = engel_verdict(s3, cyc("(1 2 3)", 3));
  CHECK(a.is_engel());
  CHECK(a.engel_at == 2);
  const EngelTrace b = engel_verdict(s3, cyc("(1 2)", 3), {}, true);
  CHECK_FALSE(b.is_engel());
  CHECK(b.cycle_length >= 1);
  CHECK(b.subgroup_orders.back() == 3);
  const EngelTrace c = engel_verdict(dihedral_group(4), cyc("(1 2 3 4)", 4));
  CHECK(c.is_engel());
}

TEST_CASE("commutator chains") {
  const Group s3 = symmetric_group(3);
  const CommutatorChain c = commutator_chain(s3, cyc("(1 2)", 3));
  REQUIRE(c.terms.size() == 2);
  CHECK(c.stable() == alternating_group(3));
  CHECK(commutator_chain(cyclic_group(5), cyc("(1 2 3 4 5)", 5)).stable().is_trivial());
  const CommutatorChain d = commutator_chain(symmetric_group(5), cyc("(1 2)", 5));
  CHECK(d.stable() == alternating_group(5));
}

TEST_CASE("Engel subgroups of automorphisms") {
  const Group c7 = cyclic_group(7);
  const Group d14 = dihedral_group(7);
  const Perm inv = d14.generators()[1];
  CHECK(engel_subgroup_aut(d14, c7, inv, 3) == c7);
  CHECK(engel_subgroup_aut(d14, c7, c7.generators()[0], 1).is_trivial());

  const Group w(10, {cyc("(1 2 3 4 5)", 10), cyc("(1 2 3)", 10), cyc("(6 7 8 9 10)", 10),
                     cyc("(6 7 8)", 10), cyc("(1 6)(2 7)(3 8)(4 9)(5 10)", 10)});
  const Group s(10, {cyc("(1 2 3 4 5)", 10), cyc("(1 2 3)", 10), cyc("(6 7 8 9 10)", 10),
                     cyc("(6 7 8)", 10)});
  CHECK(engel_subgroup_aut(w, s, cyc("(1 6)(2 7)(3 8)(4 9)(5 10)", 10), 2) == s);
  CHECK_THROWS_AS(engel_subgroup_aut(symmetric_group(4), Group(4, {cyc("(1 2)", 4)}),
                                     cyc("(1 3)", 4), 1),
                  NotNormalized);
}

TEST_CASE("Engel subgroups agree with brute force") {
  for (const Group& g : small_groups()) {
    const oracle::NaiveGroup naive(g.generators(), g.degree());
    CAPTURE(g.order());
    for (const auto& cls : conjugacy_classes(g)) {
      const Perm& x = cls.representative;
      for (int n = 1; n <= 5; ++n) {
        const Group e = engel_subgroup(g, x, n);
        CHECK(naive.to_set(e.elements(10000)) == naive.engel_subgroup(naive.index(x), n));
      }
    }
  }
}

TEST_CASE("outer involution of Alt(5) against brute force") {
  const Group s5 = symmetric_group(5);
  const Group a5 = alternating_group(5);
  const oracle::NaiveGroup naive(s5.generators(), 5);
  const auto domain = naive.to_set(a5.elements(100));
  const Perm t = cyc("(1 2)", 5);
  for (int n = 1; n <= 3; ++n) {
    const Group e = engel_subgroup_aut(s5, a5, t, n);
    CHECK(naive.to_set(e.elements(100)) == naive.engel_subgroup(domain, naive.index(t), n));
    CHECK(e == a5);
  }
}

TEST_CASE("properties of Engel traces") {
  for (const Group& g : small_groups()) {
    const Group f = fitting(g);
    for (const auto& cls : conjugacy_classes(g)) {
      const Perm& x = cls.representative;
      CHECK(engel_verdict(g, x).is_engel() == f.contains(x));
      const Group cent = centralizer(g, std::vector<Perm>{x});
      for (int n = 1; n <= 3; ++n) {
        const Group e = engel_subgroup(g, x, n);
        for (const Perm& c : cent.generators()) CHECK(e.is_normalized_by(c));
      }
      const CommutatorChain chain = commutator_chain(g, x);
      for (std::size_t i = 1; i < chain.terms.size(); ++i) {
        CHECK(chain.terms[i] == engel_subgroup_aut(g, chain.terms[i - 1], x, 1));
        CHECK(is_subnormal(g, chain.terms[i]));
      }
      const Group& h = chain.stable();
      CHECK(engel_subgroup_aut(g, h, x, 1) == h);
    }
  }
}
