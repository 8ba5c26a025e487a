#pragma once

#include <cstdint>
#include <vector>

#include "engelgrp/caps.hpp"
#include "engelgrp/group.hpp"

namespace engelgrp {

struct ConjugacyClass {
  Perm representative;
  std::uint64_t size = 0;
};

// Classes in order of first appearance during element enumeration; each
// representative is the first class member enumerated.
std::vector<ConjugacyClass> conjugacy_classes(const Group& g, const Caps& caps = {});

}  // namespace engelgrp
