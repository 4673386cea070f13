#include "equitree/vanish.hpp"

namespace equitree {

std::string MackeyName::to_string() const {
  switch (tag) {
    case Tag::ConstantZ: return "Z";
    case Tag::DualZstar: return "Z*";
    case Tag::BracketZmodP: return "Z/" + std::to_string(prime);
    case Tag::Zero: break;
  }
  return "0";
}

std::string Verdict::to_string() const {
  switch (tag) {
    case Tag::Vanishes: return "vanishes";
    case Tag::Inconclusive: return "inconclusive";
    case Tag::NonzeroGroup: break;
  }
  return "nonzero:" + group.to_string();
}

Verdict criterion_vanishes(const VirtualRep& alpha) {
  const Int m = alpha.order();
  if (m % 2 == 0) throw DomainError("criterion_vanishes: group order must be odd");
  if (mod(alpha.dim(), 2) != 1) return Verdict::inconclusive();
  const auto divs = divisors(m);
  for (Int h : divs) {
    if (alpha.fixed_dim(h) <= -1) continue;
    for (Int k : divs)
      if (k % h == 0 && alpha.fixed_dim(k) < -1) return Verdict::inconclusive();
  }
  return Verdict::vanishes();
}

MackeyName pi_cp(const VirtualRep& alpha) {
  const Int p = alpha.order();
  if (!is_prime(p)) throw DomainError("pi_cp: group order " + std::to_string(p) + " is not prime");
  const Int d = alpha.dim();
  const Int f = alpha.fixed_dim(p);
  const bool even = mod(d, 2) == 0;
  if (d == 0) return f >= 0 ? MackeyName::constant_z() : MackeyName::dual_z();
  if (d < 0 && f >= 0 && even) return MackeyName::bracket(p);
  if (d > 0 && f < -1 && !even) return MackeyName::bracket(p);
  return MackeyName::zero();
}

Verdict verdict_at_level(const VirtualRep& alpha, Int level) {
  VirtualRep restricted = alpha.order() == level ? alpha : alpha.restrict_to(level);
  if (is_prime(level)) {
    MackeyName g = pi_cp(restricted);
    return g.tag == MackeyName::Tag::Zero ? Verdict::vanishes() : Verdict::nonzero(g);
  }
  return criterion_vanishes(restricted);
}

Verdict obstruction_verdict(const VirtualRep& beta, const VirtualRep& gamma, Int level) {
  return verdict_at_level(beta - gamma - 1, level);
}

}  // namespace equitree
