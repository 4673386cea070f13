#pragma once

#include <array>
#include <string>
#include <vector>

#include "equitree/decomp.hpp"
#include "equitree/vanish.hpp"

namespace equitree {

/// One connecting-map check: the map from a summand HZ ^ S^beta of the
/// current stage to the suspended cell HZ ^ S^{gamma+1}, evaluated over
/// C_level. beta and gamma are stored restricted to C_level.
struct ObstructionRecord {
  int step = 0;
  Int orbit = 0;
  VirtualRep beta;
  VirtualRep gamma;
  Int level = 1;
  VirtualRep alpha;  // beta - gamma - 1
  Verdict verdict;

  /// {"step":2,"beta":"l^1+l^2","gamma":"l^1","level":15,"alpha":"l^2-1","verdict":"vanishes","orbit":0}
  std::string to_json() const;
};

ObstructionRecord make_record(int step, Int orbit, const VirtualRep& beta, const VirtualRep& gamma, Int level);

struct ReplayResult {
  std::vector<ObstructionRecord> records;
  Decomposition final_stage;  // partial decomposition after the last attachment
  std::vector<Int> attach_order;

  bool all_vanish() const;
};

/// Re-runs the inductive construction behind the decomposition chosen by
/// decompose(): the root cells first, then one orbit at a time, checking
/// every summand of the current stage against the attached cell.
/// Throws DomainError when decompose() has no formula for the tree.
ReplayResult replay(const AdmissibleTree& t);

/// Single obstruction of CP^2(w) built from P(l^x + l^y + l^z) with the
/// summands taken in the order (x, y, z) = a permutation of (a, b, 0).
/// `order` holds indices into {a, b, 0}.
std::vector<ObstructionRecord> replay_cp2_orders(const Weight& w, const std::array<int, 3>& order);

/// All six orderings of {0, 1, 2}.
std::array<std::array<int, 3>, 6> all_orders();

/// Counting identity along a fixed path v_0..v_l over C_{p^n}: for every
/// s < tau, #{1<=i<=l : v_p(a_i+b_i)=s} == #{0<=j<=l-1 : v_p(a_j-b_j)=s}.
bool claim_card_eq(const std::vector<Weight>& path, int tau);

/// Over C_{p^n} with tau > 0 and p^tau dividing neither root entry: every
/// non-fixed orbit has stabilizer order at most p^tau. DomainError when the
/// hypothesis fails.
bool stab_bound_check(const AdmissibleTree& t);

}  // namespace equitree
