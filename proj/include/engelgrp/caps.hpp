#pragma once

#include <cstdint>

namespace engelgrp {

// Size limits for every exhaustive computation. These are configuration:
// the CLI exposes each of them.
struct Caps {
  // Largest group that may be enumerated element by element.
  std::uint64_t group_order = 20000;
  // Largest index |G:N| for which a coset-action quotient is built.
  std::uint64_t quotient_index = 5000;
  // Largest group on which brute-force subgroup enumeration is attempted.
  std::uint64_t subgroup_enumeration = 500;
  // Largest group scanned by the twisted-power searches (conjugators,
  // overgroups of the diagonal, twisted Engel subgroups).
  std::uint64_t search_order = 250000;
  // Upper bound on n for the explicit E_n API.
  int engel_n = 40;
};

}  // namespace engelgrp
