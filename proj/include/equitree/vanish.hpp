#pragma once

#include <string>

#include "equitree/rep_ring.hpp"

namespace equitree {

/// Names of the Mackey functors that occur as pi_a(HZ) over C_p.
struct MackeyName {
  enum class Tag { ConstantZ, DualZstar, BracketZmodP, Zero };
  Tag tag = Tag::Zero;
  Int prime = 0;  // only meaningful for BracketZmodP

  static MackeyName constant_z() { return {Tag::ConstantZ, 0}; }
  static MackeyName dual_z() { return {Tag::DualZstar, 0}; }
  static MackeyName bracket(Int p) { return {Tag::BracketZmodP, p}; }
  static MackeyName zero() { return {Tag::Zero, 0}; }

  bool operator==(const MackeyName&) const = default;
  std::string to_string() const;  // "Z", "Z*", "Z/p", "0"
};

struct Verdict {
  enum class Tag { Vanishes, Inconclusive, NonzeroGroup };
  Tag tag = Tag::Inconclusive;
  MackeyName group;  // set for NonzeroGroup

  static Verdict vanishes() { return {Tag::Vanishes, {}}; }
  static Verdict inconclusive() { return {Tag::Inconclusive, {}}; }
  static Verdict nonzero(MackeyName g) { return {Tag::NonzeroGroup, g}; }

  bool is_vanishing() const { return tag == Tag::Vanishes; }
  bool operator==(const Verdict&) const = default;

  /// "vanishes" | "inconclusive" | "nonzero:Z" | "nonzero:Z*" | "nonzero:Z/p"
  std::string to_string() const;
};

/// Sufficient vanishing criterion for pi_a(HZ) over an odd cyclic group:
/// |a| odd, and for every chain of subgroups C_h <= C_k, |a^{C_h}| > -1
/// forces |a^{C_k}| >= -1. Never claims non-vanishing.
Verdict criterion_vanishes(const VirtualRep& alpha);

/// The complete C_p value of pi_a(HZ), keyed on |a|, |a^{C_p}| and parity.
MackeyName pi_cp(const VirtualRep& alpha);

/// Obstruction group for a map HZ ^ S^beta -> HZ ^ S^{gamma+1} evaluated
/// over C_d: a = (beta - gamma - 1) restricted to C_d. Definitive at prime
/// d, criterion-level otherwise.
Verdict obstruction_verdict(const VirtualRep& beta, const VirtualRep& gamma, Int level);

/// Same as above for an already formed grading restricted to C_d.
Verdict verdict_at_level(const VirtualRep& alpha, Int level);

}  // namespace equitree
