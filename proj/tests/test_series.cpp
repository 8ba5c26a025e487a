#include "doctest.h"
#include "engelgrp/classes.hpp"
#include "engelgrp/series.hpp"
#include "oracle/naive_group.hpp"

using namespace engelgrp;

namespace {

Perm cyc(const char* text, std::size_t degree) { return Perm::from_cycles(text, degree); }

Group v4() { return Group(4, {cyc("(1 2)(3 4)", 4), cyc("(1 3)(2 4)", 4)}); }

// Alt(5) on {1..5} and {6..10}, optionally with the swap of the two blocks.
Group a5_squared(bool with_swap) {
  std::vector<Perm> gens{cyc("(1 2 3 4 5)", 10), cyc("(1 2 3)", 10), cyc("(6 7 8 9 10)", 10),
                         cyc("(6 7 8)", 10)};
  if (with_swap) gens.push_back(cyc("(1 6)(2 7)(3 8)(4 9)(5 10)", 10));
  return Group(10, gens);
}

std::vector<std::uint64_t> orders(const SeriesReport& r) {
  std::vector<std::uint64_t> out;
  for (const auto& t : r.terms) out.push_back(t.group.order());
  return out;
}

std::vector<Group> small_groups() {
  return {
      symmetric_group(3),
      symmetric_group(4),
      alternating_group(4),
      alternating_group(5),
      symmetric_group(5),
      dihedral_group(6),
      dihedral_group(4),
      cyclic_group(6),
      // Sym(3) wr C2
      Group(6, {cyc("(1 2)", 6), cyc("(1 2 3)", 6), cyc("(1 4)(2 5)(3 6)", 6)}),
      // Alt(5) x C2 and Alt(5) x Sym(3)
      Group(7, {cyc("(1 2 3 4 5)", 7), cyc("(1 2 3)", 7), cyc("(6 7)", 7)}),
      // SL(2,3) on the 8 nonzero vectors of F_3^2
      Group(8, {cyc("(3 4 5)(6 8 7)", 8), cyc("(1 3 2 6)(4 5 8 7)", 8)}),
  };
}

}  // namespace

TEST_CASE("normal closures") {
  const Group s3 = symmetric_group(3);
  CHECK(normal_closure(s3, Group(3, {cyc("(1 2 3)", 3)})).order() == 3);
  CHECK(normal_closure(symmetric_group(4), Group(4, {cyc("(1 2)", 4)})).order() == 24);
  CHECK(normal_closure(alternating_group(4), Group(4, {cyc("(1 2)(3 4)", 4)})) == v4());
  CHECK_THROWS_AS(normal_closure(alternating_group(4), Group(4, {cyc("(1 2)", 4)})), NotSubgroup);
}

TEST_CASE("derived series and solubility") {
  const DerivedSeries s4 = derived_series(symmetric_group(4));
  std::vector<std::uint64_t> o;
  for (const Group& t : s4.terms) o.push_back(t.order());
  CHECK(o == std::vector<std::uint64_t>{24, 12, 4, 1});
  CHECK(s4.soluble);
  const DerivedSeries a5 = derived_series(alternating_group(5));
  CHECK(a5.terms.size() == 1);
  CHECK_FALSE(a5.soluble);
  CHECK(derived_series(Group(3)).soluble);
}

TEST_CASE("Fitting subgroup and radical") {
  CHECK(fitting(symmetric_group(4)) == v4());
  CHECK(fitting(alternating_group(5)).is_trivial());
  CHECK(fitting(dihedral_group(4)) == dihedral_group(4));
  CHECK(soluble_radical(symmetric_group(4)) == symmetric_group(4));
  CHECK(soluble_radical(alternating_group(5)).is_trivial());
  CHECK(soluble_radical(symmetric_group(5)).is_trivial());
  const Group a5c2(7, {cyc("(1 2 3 4 5)", 7), cyc("(1 2 3)", 7), cyc("(6 7)", 7)});
  CHECK(soluble_radical(a5c2).order() == 2);
}

TEST_CASE("socle") {
  CHECK(socle(alternating_group(5)).socle == alternating_group(5));
  const Socle s4 = socle(symmetric_group(4));
  CHECK(s4.socle == v4());
  CHECK(s4.minimal_normals.size() == 1);
  const Socle a5a5 = socle(a5_squared(false));
  CHECK(a5a5.socle.order() == 3600);
  CHECK(a5a5.minimal_normals.size() == 2);
}

TEST_CASE("generalized Fitting subgroup") {
  CHECK(generalized_fitting(symmetric_group(5)) == alternating_group(5));
  CHECK(generalized_fitting(symmetric_group(4)) == v4());
  const Group sl23(8, {cyc("(3 4 5)(6 8 7)", 8), cyc("(1 3 2 6)(4 5 8 7)", 8)});
  CHECK(sl23.order() == 24);
  CHECK(generalized_fitting(sl23).order() == 8);
  const Group sl25(24, {cyc("(5 6 7 8 9)(10 12 14 11 13)(15 18 16 19 17)(20 24 23 22 21)", 24),
                        cyc("(1 5 4 20)(2 10 3 15)(6 9 24 21)(7 14 23 16)(8 19 22 11)(12 13 18 17)", 24)});
  CHECK(sl25.order() == 120);
  CHECK(classify_simplicity(sl25) == Simplicity::quasisimple);
  CHECK(generalized_fitting(sl25) == sl25);
  CHECK(fitting(sl25).order() == 2);
}

TEST_CASE("simplicity classification") {
  CHECK(classify_simplicity(alternating_group(5)) == Simplicity::nonabelian_simple);
  CHECK(classify_simplicity(symmetric_group(3)) == Simplicity::other);
  CHECK(classify_simplicity(cyclic_group(5)) == Simplicity::abelian);
  CHECK(classify_simplicity(Group(4)) == Simplicity::trivial);
}

TEST_CASE("subnormality") {
  const Group s4 = symmetric_group(4);
  CHECK(is_subnormal(s4, v4()));
  CHECK(is_subnormal(s4, Group(4, {cyc("(1 2)(3 4)", 4)})));
  const Group a4_in_a5(5, {cyc("(1 2 3)", 5), cyc("(2 3 4)", 5)});
  CHECK_FALSE(is_subnormal(alternating_group(5), a4_in_a5));
}

TEST_CASE("Fitting series") {
  CHECK(orders(fitting_series(symmetric_group(4))) == std::vector<std::uint64_t>{1, 4, 12, 24});
  CHECK(fitting_series(symmetric_group(4)).height == 3);
  CHECK(fitting_series(dihedral_group(4)).height == 1);
  CHECK(fitting_series(Group(3)).height == 0);
  CHECK_THROWS_AS(fitting_series(alternating_group(5)), NotSoluble);
}

TEST_CASE("generalized Fitting series") {
  CHECK(orders(generalized_fitting_series(symmetric_group(5))) ==
        std::vector<std::uint64_t>{1, 60, 120});
  CHECK(generalized_fitting_series(alternating_group(5)).height == 1);
  CHECK(generalized_fitting_series(symmetric_group(4)).height == 3);
}

TEST_CASE("upper nonsoluble series") {
  const NonsolubleSeries s4 = nonsoluble_series(symmetric_group(4));
  CHECK(s4.length() == 0);
  CHECK(s4.radical(0) == symmetric_group(4));

  const NonsolubleSeries s5 = nonsoluble_series(symmetric_group(5));
  CHECK(s5.length() == 1);
  REQUIRE(s5.sections.size() == 1);
  CHECK(s5.sections[0].simple_factors.size() == 1);
  CHECK(s5.sections[0].simple_factors[0].order() == 60);
  CHECK(s5.layers[1] == alternating_group(5));
  CHECK(s5.kernel(1) == symmetric_group(5));

  const Group w = a5_squared(true);
  const NonsolubleSeries ws = nonsoluble_series(w);
  CHECK(ws.length() == 1);
  REQUIRE(ws.sections.size() == 1);
  CHECK(ws.sections[0].simple_factors.size() == 2);
  CHECK(ws.kernel(1).order() == 3600);
  const Perm swap = cyc("(1 6)(2 7)(3 8)(4 9)(5 10)", 10);
  CHECK_FALSE(ws.sections[0].factor_action.map(swap).is_identity());

  std::vector<std::string> labels;
  for (const auto& t : ws.report.terms) labels.push_back(t.label);
  CHECK(labels == std::vector<std::string>{"L0", "R0", "L1", "R1"});
  CHECK(nonsoluble_length(w) == 1);
}

TEST_CASE("orbit classification") {
  const NonsolubleSeries s5 = nonsoluble_series(symmetric_group(5));
  const auto c = classify_orbits(s5, cyc("(1 2)", 5));
  REQUIRE(c.size() == 1);
  CHECK(c[0].r == 1);
  CHECK(c[0].t == 2);
  CHECK_FALSE(c[0].pure);

  const Group w = a5_squared(true);
  const auto d = classify_orbits(nonsoluble_series(w), cyc("(1 6)(2 7)(3 8)(4 9)(5 10)", 10));
  REQUIRE(d.size() == 1);
  CHECK(d[0].r == 2);
  CHECK(d[0].t == 2);
  CHECK(d[0].pure);

  // An inner automorphism of order 3 on a single factor.
  const auto e = classify_orbits(s5, cyc("(1 2 3)", 5));
  REQUIRE(e.size() == 1);
  CHECK(e[0].t == 3);
  CHECK_FALSE(e[0].pure);

  const Group a5c2(7, {cyc("(1 2 3 4 5)", 7), cyc("(1 2 3)", 7), cyc("(6 7)", 7)});
  const auto f = classify_orbits(nonsoluble_series(a5c2), cyc("(6 7)", 7));
  REQUIRE(f.size() == 1);
  CHECK(f[0].r == 1);
  CHECK(f[0].t == 1);
  CHECK(f[0].pure);
}

TEST_CASE("omega") {
  CHECK(omega(std::uint64_t{6}) == 2);
  CHECK(omega(std::uint64_t{8}) == 3);
  CHECK(omega(Perm(3)) == 0);
  CHECK(omega(cyc("(1 2 3)(4 5)", 5)) == 2);
}

TEST_CASE("conjugacy classes") {
  const auto classes = conjugacy_classes(symmetric_group(5));
  CHECK(classes.size() == 7);
  std::uint64_t total = 0;
  for (const auto& c : classes) total += c.size;
  CHECK(total == 120);
  CHECK(classes.front().representative.is_identity());
}

TEST_CASE("Fitting and F* agree with brute force") {
  for (const Group& g : small_groups()) {
    const oracle::NaiveGroup naive(g.generators(), g.degree());
    CAPTURE(g.order());
    const Group f = fitting(g);
    CHECK(naive.to_set(f.elements(10000)) == naive.fitting());
    const Group fs = generalized_fitting(g);
    CHECK(naive.to_set(fs.elements(10000)) == naive.generalized_fitting());
    CHECK(is_soluble(g) == naive.is_soluble(naive.full()));
    CHECK(is_nilpotent(g) == naive.is_nilpotent(naive.full()));
  }
}
