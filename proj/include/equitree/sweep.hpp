#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equitree/tree.hpp"

namespace equitree {

struct SweepConfig {
  std::vector<Int> orders{15};
  Int count = 100;  // trees in total, orders used round robin
  std::uint64_t seed = 1;
  int max_level = 3;
  int max_orbits = 6;
  std::optional<TreeType> type;  // unset: generator picks
  bool homology = true;          // compare level homology in the coherence check
};

/// Outcome of every check on one generated tree.
struct TreeCheck {
  Int index = 0;
  Int order = 0;
  std::uint64_t seed = 0;
  std::string tree;     // JSON
  std::string theorem;  // empty when no formula applies
  bool betti_ok = true;
  bool replay_ok = true;
  bool replay_final_ok = true;  // last replay stage equals the decomposition
  bool coherence_checked = false;
  bool coherence_ok = true;
  bool overlap_checked = false;
  bool overlap_ok = true;
  bool lemma_checked = false;
  bool lemma_ok = true;
  std::string failure;  // first failure message

  bool ok() const { return betti_ok && replay_ok && replay_final_ok && coherence_ok && overlap_ok && lemma_ok; }
  bool operator==(const TreeCheck&) const = default;
};

struct SweepReport {
  std::vector<TreeCheck> trees;  // in index order

  Int count_if(bool TreeCheck::*flag, bool value = true) const;
  bool all_ok() const;
  /// Summary counters plus the failing trees, as one JSON object.
  std::string to_json() const;
};

/// Seed of the i-th tree of a sweep.
std::uint64_t tree_seed(std::uint64_t seed, Int index);

/// Runs every check on one tree.
TreeCheck check_tree(const AdmissibleTree& t);

/// Reference implementation, one tree after another.
SweepReport sweep_serial(const SweepConfig& config);

/// Same checks with trees distributed over OpenMP threads; the report is
/// identical to sweep_serial.
SweepReport sweep_parallel(const SweepConfig& config);

}  // namespace equitree
