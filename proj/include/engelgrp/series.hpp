#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "engelgrp/caps.hpp"
#include "engelgrp/group.hpp"
#include "engelgrp/homomorphism.hpp"

namespace engelgrp {

// <S^G>. Throws NotSubgroup unless S <= G.
Group normal_closure(const Group& g, const Group& s);
// <X^G> for elements X of G (membership is not checked).
Group normal_closure(const Group& g, std::span<const Perm> xs);

Group derived_subgroup(const Group& g);

struct DerivedSeries {
  std::vector<Group> terms;  // G = G^(0) > G^(1) > ... (strictly descending, last term stable)
  bool soluble = false;
};
DerivedSeries derived_series(const Group& g);
bool is_soluble(const Group& g);
bool is_perfect(const Group& g);
bool is_nilpotent(const Group& g);
bool is_p_group(const Group& g);

Group center(const Group& g, const Caps& caps = {});

// Largest normal p-subgroup.
Group largest_normal_p_subgroup(const Group& g, std::uint64_t p, const Caps& caps = {});
Group fitting(const Group& g, const Caps& caps = {});
Group soluble_radical(const Group& g, const Caps& caps = {});

struct Socle {
  Group socle;
  std::vector<Group> minimal_normals;
};
Socle socle(const Group& g, const Caps& caps = {});

Group generalized_fitting(const Group& g, const Caps& caps = {});

enum class Simplicity { trivial, abelian, nonabelian_simple, quasisimple, other };
const char* to_string(Simplicity s);
Simplicity classify_simplicity(const Group& h, const Caps& caps = {});

bool is_subnormal(const Group& g, const Group& h);

enum class SeriesKind { fitting, generalized_fitting, nonsoluble };
const char* to_string(SeriesKind k);

struct SeriesTerm {
  std::string label;
  Group group;
};

struct SeriesReport {
  SeriesKind kind = SeriesKind::fitting;
  std::vector<SeriesTerm> terms;
  // h, h* or the nonsoluble length.
  int height = 0;

  // terms[i], or the last term (G) past the end of the chain.
  const Group& term(int i) const;
};

// One section U_i = L_i / R_{i-1} of the upper nonsoluble series.
struct SectionDecomposition {
  int level = 0;
  // G -> G/R_{i-1}, faithful on the quotient.
  Homomorphism quotient;
  // Nonabelian simple subgroups of the quotient whose product is U_i.
  std::vector<Group> simple_factors;
  // Action of G on simple_factors by conjugation (factor j is point j).
  Homomorphism factor_action;
  Group kernel;
  std::uint64_t kernel_order() const { return kernel.order(); }
};

SeriesReport fitting_series(const Group& g, const Caps& caps = {});
SeriesReport generalized_fitting_series(const Group& g, const Caps& caps = {});

struct NonsolubleSeries {
  SeriesReport report;  // labels L_0, R_0, L_1, R_1, ...
  std::vector<Group> radicals;  // R_0, R_1, ..., R_lambda = G
  std::vector<Group> layers;    // L_0 = 1, L_1, ..., L_lambda
  std::vector<SectionDecomposition> sections;  // sections[i-1] describes U_i

  int length() const { return report.height; }
  // R_i, with R_i = G for i >= length.
  const Group& radical(int i) const;
  // K_i for 1 <= i <= length; G beyond that.
  const Group& kernel(int i) const;
};
NonsolubleSeries nonsoluble_series(const Group& g, const Caps& caps = {});
// lambda(G) only, without section decompositions.
int nonsoluble_length(const Group& g, const Caps& caps = {});

struct OrbitClassification {
  int level = 0;
  std::vector<std::size_t> orbit;  // indices into the section's simple_factors
  std::uint64_t r = 0;             // orbit length
  std::uint64_t t = 0;             // order of the induced automorphism of the orbit product
  bool pure = false;
};
std::vector<OrbitClassification> classify_orbits(const NonsolubleSeries& series, const Perm& g);

// Number of prime factors of |g|, with multiplicity.
int omega(const Perm& g);
int omega(std::uint64_t n);

}  // namespace engelgrp
