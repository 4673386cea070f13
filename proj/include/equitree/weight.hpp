#pragma once

#include <array>
#include <string>
#include <vector>

#include "equitree/arith.hpp"

namespace equitree {

/// Rotation numbers (a, b) of a block, residues mod the stabilizer order m.
/// Stored reduced into [0, m); zero residues are stored as 0.
struct Weight {
  Int a = 0;
  Int b = 0;
  Int m = 1;

  Weight() = default;
  Weight(Int a_, Int b_, Int m_);

  Weight swapped() const { return {b, a, m}; }
  Weight negated() const { return {-a, -b, m}; }
  Int difference() const { return mod(a - b, m); }

  /// gcd(a, b, m) == 1
  bool primitive() const { return gcd3(a, b, m) == 1; }

  /// Lexicographically least of (a,b), (b,a), (-a,-b), (-b,-a): the class
  /// of the weight up to swap and global sign.
  Weight canonical() const;

  bool operator==(const Weight&) const = default;
  auto operator<=>(const Weight&) const = default;

  std::string to_string() const;  // "(a,b;m)"
};

/// Equal up to swap and global sign.
inline bool same_class(const Weight& x, const Weight& y) {
  return x.m == y.m && x.canonical() == y.canonical();
}

/// Weights a level-1 fixed vertex may carry under the root (a,b;m):
/// {(a,-b), (a,b-a), (b,a-b)}, compared up to swap and sign.
std::array<Weight, 3> root_child_weights(const Weight& root);

/// Weights a fixed child may carry under a non-root vertex of the same
/// stabilizer: {(a,b-a), (a-b,b)}, compared up to swap and sign.
std::array<Weight, 2> chain_child_weights(const Weight& parent);

/// Representatives of the block class under the moves (a,b)->(b,a),
/// (a,b)->(a-b,-b), (a,b)->(-a,b-a): all (x-z, y-z) for orderings
/// (x,y,z) of (a,b,0).
std::array<Weight, 6> block_class(const Weight& w);

bool contains_class(const auto& set, const Weight& w) {
  for (const Weight& s : set)
    if (same_class(s, w)) return true;
  return false;
}

}  // namespace equitree
