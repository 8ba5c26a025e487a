#include <random>

#include "doctest.h"
#include "engelgrp/engel.hpp"
#include "engelgrp/series.hpp"
#include "engelgrp/simple_products.hpp"

using namespace engelgrp;

namespace {

Perm cyc(const char* text, std::size_t degree) { return Perm::from_cycles(text, degree); }

std::uint64_t naive_exponent(std::uint64_t n, std::uint64_t p) {
  std::uint64_t k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

// Exponent vectors compared prime by prime, by trial over all candidates.
int naive_prec(std::uint64_t a, std::uint64_t b) {
  for (std::uint64_t p = 2; p <= std::max(a, b); ++p) {
    bool prime = true;
    for (std::uint64_t q = 2; q * q <= p; ++q) prime = prime && p % q != 0;
    if (!prime) continue;
    const auto ka = naive_exponent(a, p);
    const auto kb = naive_exponent(b, p);
    if (ka != kb) return ka < kb ? -1 : 1;
  }
  return 0;
}

}  // namespace

TEST_CASE("twisted powers") {
  const Group a5 = alternating_group(5);
  const TwistedPower t2 = build_twisted_power(a5, 2);
  CHECK(t2.realized.order() == 60 * 60 * 2);
  CHECK(t2.phi.order() == 2);

  const TwistedPower t1 = build_twisted_power(a5, 1, cyc("(1 2)", 5));
  CHECK(t1.realized == symmetric_group(5));
  CHECK(t1.phi == cyc("(1 2)", 5));

  const TwistedPower tw = build_twisted_power(a5, 2, cyc("(1 2)", 5));
  CHECK(tw.phi.order() == 4);
  // phi^2 induces the transposition on each factor.
  const Perm phi2 = tw.phi.pow(2);
  CHECK(phi2 == tw.embed(cyc("(1 2)", 5), 0) * tw.embed(cyc("(1 2)", 5), 1));
  CHECK(tw.realized.order() == 3600 * 4);

  CHECK_THROWS_AS(build_twisted_power(a5, 2, cyc("(1 2 3 4 5 6)", 6)), DegreeMismatch);
  CHECK_THROWS_AS(build_twisted_power(Group(5, {cyc("(1 2 3)", 5)}), 2, cyc("(1 4)", 5)),
                  TwistNotNormalizing);
  CHECK_THROWS_AS(build_twisted_power(a5, 2, cyc("(1 2 3)", 5)), InvariantViolation);
}

TEST_CASE("d-subgroups") {
  const Group a5 = alternating_group(5);
  const TwistedPower t2 = build_twisted_power(a5, 2);
  const DSubgroup d = d_subgroup(t2, {0, 1});
  CHECK(d.group.order() == 60);
  CHECK(d.group == centralizer(t2.s, std::vector<Perm>{t2.phi}));
  CHECK(d_subgroup(t2, {0}).group == t2.factors[0]);

  const TwistedPower t3 = build_twisted_power(a5, 3);
  const DSubgroup k = d_subgroup(t3, {0, 2});
  CHECK(k.group.order() == 60);
  Caps caps;
  caps.group_order = caps.search_order;
  const Group n = normalizer(t3.s, k.group, caps);
  CHECK(n.order() == 3600);
  const Group c = centralizer(t3.s, k.group, caps);
  CHECK(c == t3.factors[1]);
  CHECK(n == join(k.group, c));
}

TEST_CASE("overgroups of the diagonal") {
  const Group a5 = alternating_group(5);
  const TwistedPower t2 = build_twisted_power(a5, 2);
  const auto over2 = diagonal_overgroups(t2);
  REQUIRE(over2.size() == 2);
  CHECK(over2[0].order() == 60);
  CHECK(over2[1] == t2.s);

  const auto over1 = diagonal_overgroups(build_twisted_power(a5, 1));
  REQUIRE(over1.size() == 1);
  CHECK(over1[0] == a5);

  // For r = 4 the phi^2-diagonal of each pair gives extra overgroups.
  CHECK_THROWS_AS(diagonal_overgroups(build_twisted_power(Group(3, {cyc("(1 2 3)", 3)}), 4)),
                  PremiseFailed);
}

TEST_CASE("lexicographic prime order") {
  CHECK(lex_prec(4, 12) == std::strong_ordering::less);
  CHECK(lex_prec(6, 4) == std::strong_ordering::less);
  CHECK(lex_prec(3, 2) == std::strong_ordering::less);
  CHECK(lex_prec(7, 7) == std::strong_ordering::equal);
  CHECK(lex_prec(1, 5) == std::strong_ordering::less);
  for (std::uint64_t a = 1; a <= 300; ++a) {
    for (std::uint64_t b = 1; b <= 300; ++b) {
      const int expected = naive_prec(a, b);
      const auto got = lex_prec(a, b);
      CHECK((got < 0) == (expected < 0));
      CHECK((got == 0) == (expected == 0));
      if (b % a == 0) CHECK(got <= 0);
    }
  }
}

TEST_CASE("conjugator searches") {
  const Group a5 = alternating_group(5);
  const TwistedPower t2 = build_twisted_power(a5, 2);
  const Group h = join(d_subgroup(t2, {0, 1}).group, cyclic_subgroup(t2.phi));
  const ConjugatorSearch found = search_conjugator(t2.realized, t2.s, h, t2.phi, Group(10));
  REQUIRE(found.witness.has_value());
  CHECK(t2.s.contains(*found.witness));

  // The instance where the stabilizer of the factor in <phi> is not a p-group.
  const Group s5 = symmetric_group(5);
  const Group stab(5, {cyc("(2 3)", 5), cyc("(2 3 4 5)", 5)});
  const ConjugatorSearch none = search_conjugator(s5, a5, stab, cyc("(1 2 3)(4 5)", 5), Group(5));
  CHECK_FALSE(none.witness.has_value());
  CHECK(none.scanned == 60);

  const ConjugatorSearch trivial = search_conjugator(s5, a5, Group(5), cyc("(1 2)", 5), Group(5));
  REQUIRE(trivial.witness.has_value());
  CHECK(trivial.witness->is_identity());

  CHECK_THROWS_AS(search_conjugator(s5, Group(5, {cyc("(1 2 3)", 5)}), stab, cyc("(1 2)", 5), Group(5)),
                  NotNormal);
}

TEST_CASE("iterated commutators of a single factor") {
  const Group a5 = alternating_group(5);
  const TwistedPower t2 = build_twisted_power(a5, 2);
  for (int n = 1; n <= 3; ++n) CHECK(factor_commutator_subgroup(t2, 0, n) == t2.s);
}

TEST_CASE("iterated commutators over all factors of a cube") {
  const Group a5 = alternating_group(5);
  const TwistedPower t3 = build_twisted_power(a5, 3);
  // [x, phi] for x in the first factor only touches the first two factors.
  const Group single = factor_commutator_subgroup(t3, 0, 1);
  CHECK(single.order() == 3600);
  std::vector<Perm> gens = t3.factors[0].generators();
  gens.insert(gens.end(), t3.factors[1].generators().begin(), t3.factors[1].generators().end());
  CHECK(Group(t3.s.degree(), gens).contains(single));
  for (int n = 1; n <= 2; ++n) CHECK(factor_commutator_subgroup(t3, n) == t3.s);
}

TEST_CASE("Engel subgroups of twisted powers") {
  const Group a5 = alternating_group(5);
  const TwistedEngelReport r2 = twisted_engel_probe(build_twisted_power(a5, 2), 3);
  REQUIRE(r2.rows.size() == 3);
  CHECK(r2.all_equal());
  CHECK(r2.trivial_twist);

  const TwistedEngelReport r1 = twisted_engel_probe(build_twisted_power(a5, 1, cyc("(1 2)", 5)), 3);
  CHECK(r1.all_equal());
  CHECK_FALSE(r1.trivial_twist);
}
