#include "engelgrp/simple_products.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "engelgrp/engel.hpp"

namespace engelgrp {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::map<std::uint64_t, int> factorize(std::uint64_t n) {
  std::map<std::uint64_t, int> f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

Caps with_search_enumeration(Caps caps) {
  caps.group_order = std::max(caps.group_order, caps.search_order);
  return caps;
}

}  // namespace

Perm TwistedPower::embed(const Perm& x, std::size_t block) const {
  const std::size_t d = block_degree();
  std::vector<Point> images(degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = static_cast<Point>(i);
  for (std::size_t p = 0; p < d; ++p) images[block * d + p] = static_cast<Point>(block * d + x[p]);
  return Perm(std::move(images));
}

TwistedPower build_twisted_power(const Group& base, std::size_t r) {
  return build_twisted_power(base, r, base.identity());
}

TwistedPower build_twisted_power(const Group& base, std::size_t r, const Perm& twist) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  if (twist.degree() != base.degree()) throw DegreeMismatch("twist and base degrees differ");
  if (r * base.degree() > kMaxDegree) throw CapExceeded("twisted power exceeds the maximal degree");
  if (!base.is_normalized_by(twist)) {
    throw TwistNotNormalizing("twist " + twist.to_cycles() + " does not normalize the base");
  }
  const std::uint64_t twist_order = twist.order();
  for (std::uint64_t m = 1; m < twist_order; ++m) {
    if (base.contains(twist.pow(static_cast<std::int64_t>(m)))) {
      throw InvariantViolation("a power of phi lies in S");
    }
  }

  TwistedPower t;
  t.base = base;
  t.twist = twist;
  t.r = r;
  const std::size_t d = base.degree();
  std::vector<Perm> s_gens;
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<Perm> block_gens;
    for (const Perm& x : base.generators()) block_gens.push_back(t.embed(x, j));
    s_gens.insert(s_gens.end(), block_gens.begin(), block_gens.end());
    t.factors.emplace_back(t.degree(), std::move(block_gens));
  }
  t.s = Group(t.degree(), s_gens);

  std::vector<Point> images(t.degree());
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t p = 0; p < d; ++p) {
      images[j * d + p] = static_cast<Point>(j + 1 < r ? (j + 1) * d + p : twist[p]);
    }
  }
  t.phi = Perm(std::move(images));
  s_gens.push_back(t.phi);
  t.realized = Group(t.degree(), std::move(s_gens));
  if (t.realized.order() != t.s.order() * t.phi.order()) {
    throw InvariantViolation("S is not normal in <S, phi> or meets <phi>");
  }
  return t;
}

DSubgroup d_subgroup(const TwistedPower& t, const std::vector<std::size_t>& index_set) {
  if (!t.trivial_twist()) throw PremiseFailed("d-subgroups need a trivial twist");
  if (index_set.empty()) throw std::invalid_argument("index set must be nonempty");
  std::vector<std::size_t> blocks = index_set;
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
  if (blocks.back() >= t.r) throw std::out_of_range("block index out of range");
  std::vector<Perm> gens;
  for (const Perm& x : t.base.generators()) {
    Perm g(t.degree());
    for (std::size_t j : blocks) g = g * t.embed(x, j);
    gens.push_back(std::move(g));
  }
  return {blocks, Group(t.degree(), std::move(gens))};
}

std::vector<Group> diagonal_overgroups(const TwistedPower& t, const Caps& caps) {
  if (!t.trivial_twist()) throw PremiseFailed("diagonal overgroups need a trivial twist");
  if (t.r != 1 && !is_prime(t.r)) throw PremiseFailed("diagonal overgroups need r prime");
  std::vector<std::size_t> all(t.r);
  for (std::size_t j = 0; j < t.r; ++j) all[j] = j;
  const Group d = d_subgroup(t, all).group;

  // Every element of S is D times an element trivial on the first block, and
  // the subgroup generated by D and the phi-orbit of x only depends on the
  // D-conjugacy class of that element.
  const Group rest = join(std::vector<Group>(t.factors.begin() + 1, t.factors.end()), t.degree());
  const std::vector<Perm> elements = rest.elements(caps.search_order);
  std::unordered_map<Perm, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
  std::vector<bool> seen(elements.size(), false);

  std::vector<Group> found;
  auto remember = [&](Group h) {
    const bool known = std::any_of(found.begin(), found.end(), [&](const Group& k) { return k == h; });
    if (!known) found.push_back(std::move(h));
  };
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> orbit{i};
    seen[i] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (const Perm& g : d.generators()) {
        const std::size_t j = index.at(conjugate(elements[orbit[k]], g));
        if (!seen[j]) {
          seen[j] = true;
          orbit.push_back(j);
        }
      }
    }
    SubgroupBuilder builder(d);
    Perm y = elements[i];
    for (std::size_t k = 0; k < t.r; ++k) {
      builder.add(y);
      y = conjugate(y, t.phi);
    }
    remember(builder.build());
  }
  for (std::size_t a = 0; a < found.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) remember(join(found[a], found[b]));
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const Group& a, const Group& b) { return a.order() < b.order(); });
  return found;
}

std::strong_ordering lex_prec(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("lex_prec needs positive integers");
  const auto fa = factorize(a);
  const auto fb = factorize(b);
  auto ia = fa.begin();
  auto ib = fb.begin();
  while (ia != fa.end() || ib != fb.end()) {
    // The smaller of the two current primes is the first coordinate where
    // the vectors can differ; the other vector has exponent 0 there.
    if (ib == fb.end() || (ia != fa.end() && ia->first < ib->first)) return std::strong_ordering::greater;
    if (ia == fa.end() || ib->first < ia->first) return std::strong_ordering::less;
    if (ia->second != ib->second) return ia->second <=> ib->second;
    ++ia;
    ++ib;
  }
  return std::strong_ordering::equal;
}

ConjugatorSearch search_conjugator(const Group& ambient, const Group& s, const Group& h,
                                   const Perm& g, const Group& allowed, const Caps& caps) {
  if (!ambient.contains(h)) throw NotSubgroup("H is not a subgroup of the ambient group");
  if (!s.is_normal_in(ambient)) throw NotNormal("S is not normal in the ambient group");
  if (!ambient.contains(g)) throw NotMember("g is outside the ambient group");
  const Group cyclic = cyclic_subgroup(g);
  if (!cyclic.contains(allowed)) throw NotSubgroup("allowed subgroup is not inside <g>");
  s.require_enumerable(caps.search_order);

  std::vector<Perm> forbidden;
  const std::uint64_t o = g.order();
  for (std::uint64_t k = 1; k < o; ++k) {
    Perm p = g.pow(static_cast<std::int64_t>(k));
    if (!allowed.contains(p)) forbidden.push_back(std::move(p));
  }
  ConjugatorSearch result;
  s.chain().visit([&](const Perm& x) {
    ++result.scanned;
    const Perm xi = x.inverse();
    // g^k lies in H^x = x^-1 H x exactly when x g^k x^-1 lies in H.
    const bool clear = std::none_of(forbidden.begin(), forbidden.end(),
                                    [&](const Perm& p) { return h.contains(x * p * xi); });
    if (clear) {
      result.witness = x;
      return false;
    }
    return true;
  });
  return result;
}

Group factor_commutator_subgroup(const TwistedPower& t, std::size_t block, int n, const Caps& caps) {
  if (block >= t.r) throw std::out_of_range("block index out of range");
  return iterated_commutator_subgroup(t.factors[block], t.phi, n, caps);
}

Group factor_commutator_subgroup(const TwistedPower& t, int n, const Caps& caps) {
  std::vector<Perm> gens;
  for (std::size_t block = 0; block < t.r; ++block) {
    const Group f = factor_commutator_subgroup(t, block, n, caps);
    gens.insert(gens.end(), f.generators().begin(), f.generators().end());
  }
  return Group(t.s.degree(), gens);
}

bool TwistedEngelReport::all_equal() const {
  return std::all_of(rows.begin(), rows.end(), [](const TwistedEngelRow& r) { return r.equals_s; });
}

TwistedEngelReport twisted_engel_probe(const TwistedPower& t, int n_max, const Caps& caps) {
  TwistedEngelReport report;
  report.s_order = t.s.order();
  report.phi_order = t.phi.order();
  report.trivial_twist = t.trivial_twist();
  const auto subgroups = engel_subgroups_aut(t.realized, t.s, t.phi, n_max, with_search_enumeration(caps));
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    report.rows.push_back({static_cast<int>(i + 1), subgroups[i].order(),
                           subgroups[i].order() == t.s.order()});
  }
  return report;
}

}  // namespace engelgrp
