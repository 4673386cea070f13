#pragma once

#include <array>
#include <string>
#include <vector>

#include "equitree/rep_ring.hpp"
#include "equitree/weight.hpp"

namespace equitree {

class AdmissibleTree;

/// Tangential representations of CP^2(a,b;m) at its three fixed points
/// [1,0,0], [0,1,0], [0,0,1]:
///   l^{b-a} + l^{-a},  l^{a-b} + l^{-b},  l^a + l^b.
std::array<VirtualRep, 3> tangential_reps(const Weight& w);

/// Whether CP^2(w1) # CP^2(w2) can be formed (same group): some block-class
/// representative of w2 lies in {(a,-b), (a-b,b), (a,b-a)} up to swap and sign.
bool compatible_same_group(const Weight& w1, const Weight& w2);

/// Whether CP^2(w) # G x_{C_m'} CP^2(w') can be formed, m' a proper divisor
/// of m_w: one of a, b, a-b has gcd(., m_w) = m', and w' has one zero entry,
/// the other equal up to sign to a value of {-a, -b, b-a} not divisible by m'.
/// For m' = 1 the residue condition is vacuous. An S4 block S^{l^a+l^b}
/// has C_m'-fixed points off the poles only when m' divides a or b, so
/// there a - b is not offered.
enum class Block { CP2, S4 };

bool compatible_subgroup(const Weight& w, const Weight& child, Block block = Block::CP2);

struct FixedCensus {
  Int isolated_points = 0;
  Int sphere_components = 0;
  bool whole_space = false;

  /// Euler characteristic of the fixed set (whole space excluded).
  Int euler() const { return isolated_points + 2 * sphere_components; }
  bool operator==(const FixedCensus&) const = default;
};

/// Fixed set of C_d acting on a single block P(l^a + l^b + 1) or S^{l^a+l^b}.
FixedCensus fixed_census_block(const Weight& w, Int d, Block block);

struct FiltrationStep {
  enum class Kind { BaseCell, RootMiddleCell, RootTopCell, OrbitAttach };
  Kind kind = Kind::BaseCell;
  Int orbit = 0;
  Int stab = 1;
  VirtualRep grading;  // over C_stab

  /// {"kind":"orbit","stab":5,"grading":"l^4"}
  std::string to_json() const;
};

/// Cell-attachment order of X(T): base point, non-root orbits deepest first
/// (orbit id among equal levels) each contributing the punctured block
/// S^{l^{a-b}} over its stabilizer, then the root middle cell D(l^{a0-b0})
/// (type I only) and the top cell D(l^{a0} + l^{b0}).
std::vector<FiltrationStep> filtration_steps(const AdmissibleTree& t);

}  // namespace equitree
