#include "engelgrp/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "engelgrp/errors.hpp"

namespace engelgrp {

namespace {

void check_degree(std::size_t degree) {
  if (degree > kMaxDegree) {
    throw InvalidPermutation("degree " + std::to_string(degree) + " exceeds " +
                             std::to_string(kMaxDegree));
  }
}

void check_bijection(const std::vector<Point>& images) {
  std::vector<bool> seen(images.size(), false);
  for (Point p : images) {
    if (p >= images.size() || seen[p]) {
      throw InvalidPermutation("image list is not a bijection");
    }
    seen[p] = true;
  }
}

}  // namespace

Perm::Perm(std::size_t degree) : images_(degree) {
  check_degree(degree);
  std::iota(images_.begin(), images_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  check_degree(images_.size());
  check_bijection(images_);
}

Perm::Perm(std::initializer_list<Point> images) : Perm(std::vector<Point>(images)) {}

Perm Perm::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t max_point = 0;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };

  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') {
      throw ParseError("expected '(' in cycle notation", i);
    }
    ++i;
    std::vector<std::size_t> cycle;
    for (;;) {
      skip_space();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_space();
      }
      if (i >= text.size()) {
        throw ParseError("unterminated cycle", i);
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw ParseError(std::string("unexpected character '") + text[i] + "' in cycle", i);
      }
      const std::size_t start = i;
      std::size_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::size_t>(text[i] - '0');
        if (value > kMaxDegree) throw ParseError("point out of range", start);
        ++i;
      }
      if (value == 0) throw ParseError("points are 1-based", start);
      if (std::find(cycle.begin(), cycle.end(), value - 1) != cycle.end()) {
        throw ParseError("point repeated within a cycle", start);
      }
      cycle.push_back(value - 1);
      max_point = std::max(max_point, value);
    }
    cycles.push_back(std::move(cycle));
    skip_space();
  }

  if (degree == 0) degree = max_point;
  if (max_point > degree) {
    throw ParseError("point " + std::to_string(max_point) + " exceeds degree " +
                         std::to_string(degree),
                     0);
  }

  Perm result(degree);
  for (const auto& cycle : cycles) {
    if (cycle.size() < 2) continue;
    Perm c(degree);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      c.images_[cycle[k]] = static_cast<Point>(cycle[(k + 1) % cycle.size()]);
    }
    result = result * c;
  }
  return result;
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  Perm r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    r.images_[images_[i]] = static_cast<Point>(i);
  }
  return r;
}

Perm Perm::pow(std::int64_t e) const {
  Perm base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Perm result(degree());
  while (k > 0) {
    if (k & 1u) result = result * base;
    base = base * base;
    k >>= 1u;
  }
  return result;
}

std::uint64_t Perm::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

std::size_t Perm::first_moved() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return i;
  }
  return images_.size();
}

Perm Perm::extended(std::size_t degree) const {
  if (degree < images_.size()) {
    throw DegreeMismatch("cannot shrink a permutation");
  }
  Perm r(degree);
  std::copy(images_.begin(), images_.end(), r.images_.begin());
  return r;
}

std::string Perm::to_cycles() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out << '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (!first) out << ' ';
      out << j + 1;
      first = false;
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

std::size_t Perm::hash() const noexcept {
  // FNV-1a over the image words.
  std::uint64_t h = 1469598103934665603ull;
  for (Point p : images_) {
    h ^= p;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) {
    throw DegreeMismatch("degree mismatch: " + std::to_string(a.degree()) + " vs " +
                         std::to_string(b.degree()));
  }
  Perm r;
  r.images_.resize(a.images_.size());
  for (std::size_t i = 0; i < a.images_.size(); ++i) {
    r.images_[i] = b.images_[a.images_[i]];
  }
  return r;
}

Perm conjugate(const Perm& x, const Perm& g) { return g.inverse() * x * g; }

Perm commutator(const Perm& x, const Perm& g) {
  return x.inverse() * g.inverse() * x * g;
}

Perm iterated_commutator(const Perm& x, const Perm& g, int n) {
  const Perm g_inv = g.inverse();
  Perm c = x;
  for (int k = 0; k < n; ++k) {
    c = c.inverse() * g_inv * c * g;
  }
  return c;
}

}  // namespace engelgrp
