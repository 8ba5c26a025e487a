#pragma once

// Brute-force group computations on an explicit multiplication table. Used
// only by tests, as an independent check of the chain-based library code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "engelgrp/perm.hpp"
#include "oracle/closure.hpp"

namespace oracle {

using engelgrp::Perm;

class NaiveGroup {
public:
  using Set = std::vector<bool>;

  NaiveGroup(const std::vector<Perm>& gens, std::size_t degree, std::size_t cap = 2000)
      : elements_(closure(gens, degree)) {
    if (elements_.size() > cap) throw std::length_error("naive group too large");
    const std::size_t n = elements_.size();
    for (std::size_t i = 0; i < n; ++i) index_.emplace(elements_[i], static_cast<int>(i));
    mul_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        mul_[i * n + j] = index_.at(elements_[i] * elements_[j]);
      }
    }
    inv_.resize(n);
    order_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      inv_[i] = index_.at(elements_[i].inverse());
      order_[i] = static_cast<int>(elements_[i].order());
    }
    for (const Perm& g : gens) gens_.push_back(index_.at(g));
  }

  std::size_t size() const { return elements_.size(); }
  const Perm& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  int index(const Perm& p) const { return index_.at(p); }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * size() + b]; }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int order_of(int a) const { return order_[static_cast<std::size_t>(a)]; }
  int conj(int x, int g) const { return mul(mul(inv(g), x), g); }
  int comm(int x, int g) const { return mul(mul(inv(x), inv(g)), mul(x, g)); }

  Set full() const { return Set(size(), true); }
  Set single(int x) const {
    Set s(size(), false);
    s[static_cast<std::size_t>(index_.at(Perm(elements_[0].degree())))] = true;
    s[static_cast<std::size_t>(x)] = true;
    return s;
  }
  static std::size_t count(const Set& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }
  static bool subset(const Set& a, const Set& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] && !b[i]) return false;
    }
    return true;
  }
  static Set meet(const Set& a, const Set& b) {
    Set r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
    return r;
  }
  std::vector<int> members(const Set& s) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i]) out.push_back(static_cast<int>(i));
    }
    return out;
  }
  Set to_set(const std::vector<Perm>& ps) const {
    Set s(size(), false);
    for (const Perm& p : ps) s[static_cast<std::size_t>(index_.at(p))] = true;
    return s;
  }

  // Subgroup generated by the members of s.
  Set generate(const Set& s) const {
    const std::vector<int> gens = members(s);
    Set result(size(), false);
    const int id = identity();
    result[static_cast<std::size_t>(id)] = true;
    std::vector<int> queue{id};
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (int g : gens) {
        const int next = mul(queue[k], g);
        if (!result[static_cast<std::size_t>(next)]) {
          result[static_cast<std::size_t>(next)] = true;
          queue.push_back(next);
        }
      }
    }
    return result;
  }

  // Smallest subgroup of `ambient` containing s and normalized by `ambient`.
  Set normal_closure(const Set& s, const Set& ambient) const {
    Set current = generate(s);
    const std::vector<int> conjugators = members(ambient);
    for (;;) {
      Set next = current;
      for (int x : members(current)) {
        for (int g : conjugators) next[static_cast<std::size_t>(conj(x, g))] = true;
      }
      next = generate(next);
      if (next == current) return current;
      current = std::move(next);
    }
  }

  Set derived(const Set& h) const {
    Set s(size(), false);
    const std::vector<int> hs = members(h);
    for (int a : hs) {
      for (int b : hs) s[static_cast<std::size_t>(comm(a, b))] = true;
    }
    return generate(s);
  }

  // A finite group is nilpotent iff elements of coprime orders commute.
  bool is_nilpotent(const Set& h) const {
    const std::vector<int> hs = members(h);
    for (int a : hs) {
      for (int b : hs) {
        if (std::gcd(order_of(a), order_of(b)) == 1 && mul(a, b) != mul(b, a)) return false;
      }
    }
    return true;
  }

  bool is_soluble(const Set& h) const {
    Set current = h;
    for (;;) {
      Set next = derived(current);
      if (count(next) == 1) return true;
      if (next == current) return false;
      current = std::move(next);
    }
  }

  Set center(const Set& h) const {
    Set z(size(), false);
    const std::vector<int> hs = members(h);
    for (int a : hs) {
      z[static_cast<std::size_t>(a)] =
          std::all_of(hs.begin(), hs.end(), [&](int b) { return mul(a, b) == mul(b, a); });
    }
    return z;
  }

  // Perfect, and every non-central element has normal closure h.
  bool is_quasisimple(const Set& h) const {
    if (count(h) == 1 || derived(h) != h) return false;
    const Set z = center(h);
    for (int x : members(h)) {
      if (z[static_cast<std::size_t>(x)]) continue;
      if (normal_closure(single(x), h) != h) return false;
    }
    return true;
  }

  bool is_subnormal(const Set& h) const {
    Set current = full();
    while (current != h) {
      Set next = normal_closure(h, current);
      if (next == current) return false;
      current = std::move(next);
    }
    return true;
  }

  // Elements x whose normal closure is nilpotent form F(G).
  Set fitting() const {
    Set f(size(), false);
    for (int x = 0; x < static_cast<int>(size()); ++x) {
      if (f[static_cast<std::size_t>(x)]) continue;
      if (!is_nilpotent(normal_closure(single(x), full()))) continue;
      for (int g = 0; g < static_cast<int>(size()); ++g) f[static_cast<std::size_t>(conj(x, g))] = true;
    }
    return f;
  }

  // F(G) times every subnormal quasisimple subgroup. Quasisimple groups are
  // 2-generated, so every component is <x, y> with x up to conjugacy.
  Set generalized_fitting() const {
    const Set f = fitting();
    Set components(size(), false);
    components[static_cast<std::size_t>(identity())] = true;
    std::unordered_set<std::vector<bool>> tried;
    for (int x : class_representatives()) {
      if (order_of(x) == 1) continue;
      for (int y = 0; y < static_cast<int>(size()); ++y) {
        Set pair = single(x);
        pair[static_cast<std::size_t>(y)] = true;
        Set q = generate(pair);
        if (subset(q, components) || !tried.insert(q).second) continue;
        if (is_quasisimple(q) && is_subnormal(q)) {
          for (int e : members(q)) components[static_cast<std::size_t>(e)] = true;
          components = generate(components);
        }
      }
    }
    Set joined = components;
    for (int e : members(f)) joined[static_cast<std::size_t>(e)] = true;
    return normal_closure(joined, full());
  }

  std::vector<int> class_representatives() const {
    std::vector<bool> seen(size(), false);
    std::vector<int> reps;
    for (int x = 0; x < static_cast<int>(size()); ++x) {
      if (seen[static_cast<std::size_t>(x)]) continue;
      reps.push_back(x);
      for (int g = 0; g < static_cast<int>(size()); ++g) seen[static_cast<std::size_t>(conj(x, g))] = true;
    }
    return reps;
  }

  // The commutator sets C_1, ..., C_n for g, and <C_n>. C_1 ranges over
  // the elements of `domain`.
  Set engel_subgroup(int g, int n) const { return engel_subgroup(full(), g, n); }
  Set engel_subgroup(const Set& domain, int g, int n) const {
    std::unordered_set<int> c;
    for (int x : members(domain)) c.insert(comm(x, g));
    for (int k = 1; k < n; ++k) {
      std::unordered_set<int> next;
      for (int x : c) next.insert(comm(x, g));
      c = std::move(next);
    }
    Set s(size(), false);
    for (int x : c) s[static_cast<std::size_t>(x)] = true;
    return generate(s);
  }

  int identity() const { return index_.at(Perm(elements_[0].degree())); }

private:
  std::vector<Perm> elements_;
  std::unordered_map<Perm, int> index_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<int> order_;
  std::vector<int> gens_;
};

}  // namespace oracle
