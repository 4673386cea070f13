#pragma once

#include <string>
#include <vector>

#include "equitree/tree.hpp"

namespace testing {

struct O {
  equitree::Int id;
  equitree::Int parent;  // -1 for the root
  equitree::Int a, b, stab;
};

inline equitree::RawTree raw_tree(equitree::Int m, const std::vector<O>& orbits,
                                  equitree::TreeType type = equitree::TreeType::I) {
  equitree::RawTree raw{m, type, {}};
  for (const O& o : orbits) {
    equitree::RawOrbit r;
    r.id = o.id;
    if (o.parent >= 0) r.parent = o.parent;
    r.a = o.a;
    r.b = o.b;
    r.stab = o.stab;
    raw.orbits.push_back(r);
  }
  return raw;
}

inline equitree::AdmissibleTree tree(equitree::Int m, const std::vector<O>& orbits,
                                     equitree::TreeType type = equitree::TreeType::I) {
  return equitree::validate_or_throw(raw_tree(m, orbits, type));
}

inline std::vector<std::string> clauses(const equitree::ValidationResult& r) {
  std::vector<std::string> out;
  if (auto* v = std::get_if<std::vector<equitree::Violation>>(&r))
    for (const auto& x : *v) out.push_back(x.clause);
  return out;
}

}  // namespace testing
