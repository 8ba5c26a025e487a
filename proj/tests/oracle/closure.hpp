#pragma once

#include <unordered_set>
#include <vector>

#include "engelgrp/perm.hpp"

namespace oracle {

// Breadth-first closure of a generating set under right multiplication.
inline std::vector<engelgrp::Perm> closure(const std::vector<engelgrp::Perm>& gens,
                                           std::size_t degree) {
  std::vector<engelgrp::Perm> out{engelgrp::Perm(degree)};
  std::unordered_set<engelgrp::Perm> seen(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const engelgrp::Perm& g : gens) {
      engelgrp::Perm next = out[i] * g;
      if (seen.insert(next).second) out.push_back(std::move(next));
    }
  }
  return out;
}

}  // namespace oracle
