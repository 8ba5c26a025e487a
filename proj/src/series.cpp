#include "engelgrp/series.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "engelgrp/classes.hpp"

namespace engelgrp {

namespace {

bool is_prime_power_of(std::uint64_t n, std::uint64_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    primes.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

bool is_prime(std::uint64_t n) { return n > 1 && prime_divisors(n) == std::vector<std::uint64_t>{n}; }

// Normal closure of x in G, abandoned (nullopt) as soon as its order stops
// being a power of p.
std::optional<SubgroupBuilder> p_closure(const Group& g, const Perm& x, std::uint64_t p) {
  SubgroupBuilder builder(g.degree());
  std::vector<Perm> gens{x};
  builder.add(x);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const Perm& s : g.generators()) {
      Perm c = conjugate(gens[i], s);
      if (!builder.add(c)) continue;
      if (!is_prime_power_of(builder.order(), p)) return std::nullopt;
      gens.push_back(std::move(c));
    }
  }
  return builder;
}

Group largest_normal_p_subgroup(const Group& g, std::uint64_t p,
                                const std::vector<ConjugacyClass>& classes) {
  SubgroupBuilder result(g.degree());
  if (g.order() % p != 0) return result.build();
  for (const ConjugacyClass& c : classes) {
    const Perm& x = c.representative;
    if (x.is_identity() || !is_prime_power_of(x.order(), p) || result.contains(x)) continue;
    auto closure = p_closure(g, x, p);
    if (!closure) continue;
    result.add_all(closure->build().generators());
  }
  return result.build();
}

Group fitting_from_classes(const Group& g, const std::vector<ConjugacyClass>& classes) {
  SubgroupBuilder result(g.degree());
  for (std::uint64_t p : prime_divisors(g.order())) {
    result.add_all(largest_normal_p_subgroup(g, p, classes).generators());
  }
  return result.build();
}

Group soluble_radical_of_quotient(const Group& g, const Group& n, const Caps& caps) {
  const Homomorphism q = quotient(g, n, caps);
  return q.preimage(soluble_radical(q.image(), caps));
}

std::string indexed(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

}  // namespace

Group normal_closure(const Group& g, std::span<const Perm> xs) {
  SubgroupBuilder builder(g.degree());
  std::vector<Perm> gens;
  for (const Perm& x : xs) {
    if (builder.add(x)) gens.push_back(x);
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const Perm& s : g.generators()) {
      Perm c = conjugate(gens[i], s);
      if (builder.add(c)) gens.push_back(std::move(c));
    }
  }
  return builder.build();
}

Group normal_closure(const Group& g, const Group& s) {
  if (!g.contains(s)) throw NotSubgroup("normal closure of a non-subgroup");
  return normal_closure(g, s.generators());
}

Group derived_subgroup(const Group& g) {
  std::vector<Perm> commutators;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      commutators.push_back(commutator(gens[i], gens[j]));
    }
  }
  return normal_closure(g, commutators);
}

DerivedSeries derived_series(const Group& g) {
  DerivedSeries series;
  series.terms.push_back(g);
  while (!series.terms.back().is_trivial()) {
    Group next = derived_subgroup(series.terms.back());
    if (next.order() == series.terms.back().order()) break;
    series.terms.push_back(std::move(next));
  }
  series.soluble = series.terms.back().is_trivial();
  return series;
}

bool is_soluble(const Group& g) { return derived_series(g).soluble; }

bool is_perfect(const Group& g) { return derived_subgroup(g).order() == g.order(); }

bool is_nilpotent(const Group& g) {
  if (is_p_group(g)) return true;
  Group term = g;
  while (!term.is_trivial()) {
    std::vector<Perm> commutators;
    for (const Perm& x : term.generators()) {
      for (const Perm& s : g.generators()) commutators.push_back(commutator(x, s));
    }
    Group next = normal_closure(g, commutators);
    if (next.order() == term.order()) return false;
    term = std::move(next);
  }
  return true;
}

bool is_p_group(const Group& g) {
  const auto primes = prime_divisors(g.order());
  return primes.size() <= 1;
}

Group center(const Group& g, const Caps& caps) { return centralizer(g, g.generators(), caps); }

Group largest_normal_p_subgroup(const Group& g, std::uint64_t p, const Caps& caps) {
  if (g.order() % p != 0) return Group(g.degree());
  return largest_normal_p_subgroup(g, p, conjugacy_classes(g, caps));
}

Group fitting(const Group& g, const Caps& caps) {
  if (is_nilpotent(g)) return g;
  return fitting_from_classes(g, conjugacy_classes(g, caps));
}

Group soluble_radical(const Group& g, const Caps& caps) {
  if (is_soluble(g)) return g;
  Group radical = fitting(g, caps);
  while (!radical.is_trivial()) {
    const Homomorphism q = quotient(g, radical, caps);
    const Group f = fitting(q.image(), caps);
    if (f.is_trivial()) break;
    radical = q.preimage(f);
  }
  return radical;
}

Socle socle(const Group& g, const Caps& caps) {
  std::vector<Group> candidates;
  for (const ConjugacyClass& c : conjugacy_classes(g, caps)) {
    if (!is_prime(c.representative.order())) continue;
    Group n = normal_closure(g, std::span<const Perm>(&c.representative, 1));
    const bool seen = std::any_of(candidates.begin(), candidates.end(),
                                  [&](const Group& m) { return m == n; });
    if (!seen) candidates.push_back(std::move(n));
  }
  Socle result{Group(g.degree()), {}};
  for (const Group& n : candidates) {
    const bool minimal = std::none_of(candidates.begin(), candidates.end(), [&](const Group& m) {
      return m.order() < n.order() && n.contains(m);
    });
    if (minimal) result.minimal_normals.push_back(n);
  }
  result.socle = join(result.minimal_normals, g.degree());
  return result;
}

Group generalized_fitting(const Group& g, const Caps& caps) {
  if (is_nilpotent(g)) return g;
  const Group f = fitting(g, caps);
  const Group c = centralizer(g, f, caps);
  if (f.contains(c)) return f;
  // F*(G)/F(G) is the socle of C_G(F)F/F.
  const Homomorphism q = quotient(g, f, caps);
  const Group cf = q.map(join(c, f));
  return q.preimage(socle(cf, caps).socle);
}

const char* to_string(Simplicity s) {
  switch (s) {
    case Simplicity::trivial: return "trivial";
    case Simplicity::abelian: return "abelian";
    case Simplicity::nonabelian_simple: return "nonabelian_simple";
    case Simplicity::quasisimple: return "quasisimple";
    case Simplicity::other: return "other";
  }
  return "other";
}

Simplicity classify_simplicity(const Group& h, const Caps& caps) {
  if (h.is_trivial()) return Simplicity::trivial;
  if (h.is_abelian()) return Simplicity::abelian;
  if (!is_perfect(h)) return Simplicity::other;
  const Group z = center(h, caps);
  for (const ConjugacyClass& c : conjugacy_classes(h, caps)) {
    if (z.contains(c.representative)) continue;
    const Group n = normal_closure(h, std::span<const Perm>(&c.representative, 1));
    if (n.order() != h.order()) return Simplicity::other;
  }
  return z.is_trivial() ? Simplicity::nonabelian_simple : Simplicity::quasisimple;
}

bool is_subnormal(const Group& g, const Group& h) {
  if (!g.contains(h)) throw NotSubgroup("subnormality of a non-subgroup");
  Group current = g;
  while (current.order() != h.order()) {
    Group next = normal_closure(current, h.generators());
    if (next.order() == current.order()) return false;
    current = std::move(next);
  }
  return true;
}

const char* to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::fitting: return "fitting";
    case SeriesKind::generalized_fitting: return "generalized_fitting";
    case SeriesKind::nonsoluble: return "nonsoluble";
  }
  return "fitting";
}

const Group& SeriesReport::term(int i) const {
  const auto index = std::min<std::size_t>(static_cast<std::size_t>(std::max(i, 0)), terms.size() - 1);
  return terms[index].group;
}

SeriesReport fitting_series(const Group& g, const Caps& caps) {
  if (!is_soluble(g)) throw NotSoluble("Fitting height is defined for soluble groups only");
  SeriesReport report;
  report.kind = SeriesKind::fitting;
  report.terms.push_back({"F0", Group(g.degree())});
  while (report.terms.back().group.order() != g.order()) {
    const Group& current = report.terms.back().group;
    Group next = current.is_trivial() ? fitting(g, caps) : [&] {
      const Homomorphism q = quotient(g, current, caps);
      return q.preimage(fitting(q.image(), caps));
    }();
    report.terms.push_back({indexed("F", report.terms.size()), std::move(next)});
  }
  report.height = static_cast<int>(report.terms.size()) - 1;
  return report;
}

SeriesReport generalized_fitting_series(const Group& g, const Caps& caps) {
  SeriesReport report;
  report.kind = SeriesKind::generalized_fitting;
  report.terms.push_back({"F*0", Group(g.degree())});
  while (report.terms.back().group.order() != g.order()) {
    const Group& current = report.terms.back().group;
    Group next = current.is_trivial() ? generalized_fitting(g, caps) : [&] {
      const Homomorphism q = quotient(g, current, caps);
      return q.preimage(generalized_fitting(q.image(), caps));
    }();
    report.terms.push_back({indexed("F*", report.terms.size()), std::move(next)});
  }
  report.height = static_cast<int>(report.terms.size()) - 1;
  return report;
}

const Group& NonsolubleSeries::radical(int i) const {
  if (i >= static_cast<int>(radicals.size())) return radicals.back();
  return radicals[static_cast<std::size_t>(std::max(i, 0))];
}

const Group& NonsolubleSeries::kernel(int i) const {
  if (i < 1) throw std::out_of_range("kernels are indexed from 1");
  if (i > length()) return radicals.back();
  return sections[static_cast<std::size_t>(i - 1)].kernel;
}

NonsolubleSeries nonsoluble_series(const Group& g, const Caps& caps) {
  NonsolubleSeries series;
  series.report.kind = SeriesKind::nonsoluble;
  series.layers.push_back(Group(g.degree()));
  series.radicals.push_back(soluble_radical(g, caps));
  series.report.terms.push_back({"L0", series.layers.back()});
  series.report.terms.push_back({"R0", series.radicals.back()});

  while (series.radicals.back().order() != g.order()) {
    const int level = static_cast<int>(series.radicals.size());
    Homomorphism q = quotient(g, series.radicals.back(), caps);
    const Socle soc = socle(q.image(), caps);

    std::vector<Group> factors;
    for (const Group& m : soc.minimal_normals) {
      if (m.is_abelian()) throw InvariantViolation("abelian minimal normal subgroup above the radical");
      for (Group& t : socle(m, caps).minimal_normals) factors.push_back(std::move(t));
    }
    // Conjugation action on the simple factors; a nontrivial element of a
    // factor lies in no other factor.
    std::vector<Perm> action_images;
    for (const Perm& s : g.generators()) {
      const Perm image = q.map(s);
      std::vector<Point> points(factors.size());
      for (std::size_t j = 0; j < factors.size(); ++j) {
        const Perm moved = conjugate(factors[j].generators().front(), image);
        const auto it = std::find_if(factors.begin(), factors.end(),
                                     [&](const Group& f) { return f.contains(moved); });
        if (it == factors.end()) throw InvariantViolation("simple factors are not permuted");
        points[j] = static_cast<Point>(it - factors.begin());
      }
      action_images.emplace_back(std::move(points));
    }
    Homomorphism action(g, std::move(action_images));
    Group layer = q.preimage(soc.socle);
    Group kernel = action.kernel();
    Group radical = soluble_radical_of_quotient(g, layer, caps);
    if (!kernel.contains(layer) || !radical.contains(kernel)) {
      throw InvariantViolation("kernel of the action on simple factors is out of range");
    }
    series.report.terms.push_back({indexed("L", static_cast<std::size_t>(level)), layer});
    series.report.terms.push_back({indexed("R", static_cast<std::size_t>(level)), radical});
    series.layers.push_back(std::move(layer));
    series.radicals.push_back(std::move(radical));
    series.sections.push_back(
        {level, std::move(q), std::move(factors), std::move(action), std::move(kernel)});
  }
  series.report.height = static_cast<int>(series.radicals.size()) - 1;
  return series;
}

int nonsoluble_length(const Group& g, const Caps& caps) {
  Group radical = soluble_radical(g, caps);
  int length = 0;
  while (radical.order() != g.order()) {
    const Homomorphism q = quotient(g, radical, caps);
    const Group layer = q.preimage(socle(q.image(), caps).socle);
    radical = soluble_radical_of_quotient(g, layer, caps);
    ++length;
  }
  return length;
}

std::vector<OrbitClassification> classify_orbits(const NonsolubleSeries& series, const Perm& g) {
  std::vector<OrbitClassification> result;
  for (const SectionDecomposition& section : series.sections) {
    const Perm on_factors = section.factor_action.map(g);
    const Perm bar = section.quotient.map(g);
    const std::uint64_t bar_order = bar.order();
    std::vector<bool> done(section.simple_factors.size(), false);
    for (std::size_t start = 0; start < done.size(); ++start) {
      if (done[start]) continue;
      OrbitClassification c;
      c.level = section.level;
      for (std::size_t j = start; !done[j]; j = on_factors[j]) {
        done[j] = true;
        c.orbit.push_back(j);
      }
      c.r = c.orbit.size();
      std::vector<Perm> gens;
      for (std::size_t j : c.orbit) {
        const auto& fg = section.simple_factors[j].generators();
        gens.insert(gens.end(), fg.begin(), fg.end());
      }
      for (std::uint64_t t = 1; t <= bar_order; ++t) {
        if (bar_order % t != 0) continue;
        const Perm power = bar.pow(static_cast<std::int64_t>(t));
        const bool centralizes = std::all_of(gens.begin(), gens.end(), [&](const Perm& x) {
          return x * power == power * x;
        });
        if (centralizes) {
          c.t = t;
          break;
        }
      }
      c.pure = c.t == c.r;
      result.push_back(std::move(c));
    }
  }
  return result;
}

int omega(std::uint64_t n) {
  int count = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      n /= p;
      ++count;
    }
  }
  if (n > 1) ++count;
  return count;
}

int omega(const Perm& g) { return omega(g.order()); }

}  // namespace engelgrp
