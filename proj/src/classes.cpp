#include "engelgrp/classes.hpp"

#include <unordered_map>

namespace engelgrp {

std::vector<ConjugacyClass> conjugacy_classes(const Group& g, const Caps& caps) {
  const std::vector<Perm> elements = g.elements(caps.group_order);
  std::unordered_map<Perm, std::size_t> index;
  index.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);

  std::vector<bool> seen(elements.size(), false);
  std::vector<ConjugacyClass> classes;
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (seen[i]) continue;
    seen[i] = true;
    queue.assign(1, i);
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (const Perm& s : g.generators()) {
        const std::size_t j = index.at(conjugate(elements[queue[k]], s));
        if (!seen[j]) {
          seen[j] = true;
          queue.push_back(j);
        }
      }
    }
    classes.push_back({elements[i], queue.size()});
  }
  return classes;
}

}  // namespace engelgrp
