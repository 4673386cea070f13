#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "equitree/weight.hpp"

namespace equitree {

enum class TreeType { I, II };

std::string to_string(TreeType t);

/// One orbit as read from a tree file; no semantic checks applied.
struct RawOrbit {
  Int id = 0;
  std::optional<Int> parent;
  Int a = 0;
  Int b = 0;
  Int stab = 1;
  std::optional<Int> level;    // optional cross-check of the derived level
  std::optional<Int> modulus;  // optional weight modulus "m", must equal stab
};

struct RawTree {
  Int order = 1;
  TreeType type = TreeType::I;
  std::vector<RawOrbit> orbits;
};

class TreeParseError : public std::invalid_argument {
public:
  TreeParseError(const std::string& what, std::optional<std::size_t> offset = std::nullopt);
  std::optional<std::size_t> offset() const { return offset_; }

private:
  std::optional<std::size_t> offset_;
};

/// Structural decode of the JSON tree format:
///   {"order":15,"type":"I","orbits":[{"id":0,"parent":null,"a":1,"b":5,"stab":15}, ...]}
/// Rejects syntax errors (with byte offset), duplicate ids, unknown parents,
/// and anything that is not a rooted tree.
RawTree parse_tree(std::string_view source);

std::string tree_to_json(const RawTree& raw);

struct OrbitNode {
  Int id = 0;
  std::optional<Int> parent;
  Weight weight;  // weight.m is the stabilizer order
  Int level = 0;

  Int stab() const { return weight.m; }
};

/// Orbit-level admissible weighted tree. Only produced by validate(), so
/// every instance satisfies all clauses of the admissibility definition.
class AdmissibleTree {
public:
  Int order() const { return order_; }
  TreeType type() const { return type_; }
  const std::vector<OrbitNode>& orbits() const { return orbits_; }

  const OrbitNode& root() const { return orbits_[root_index_]; }
  const OrbitNode& node(Int id) const;
  bool has(Int id) const { return index_.count(id) != 0; }
  std::vector<Int> children(Int id) const;
  bool is_fixed(Int id) const { return node(id).stab() == order_; }

  /// Orbit ids from the root to `id`, inclusive.
  std::vector<Int> path_from_root(Int id) const;

  /// Number of vertices in the orbit: m / stab.
  Int orbit_size(Int id) const { return order_ / node(id).stab(); }

  RawTree to_raw() const;

private:
  friend struct TreeBuilder;
  Int order_ = 1;
  TreeType type_ = TreeType::I;
  std::vector<OrbitNode> orbits_;  // sorted by id
  std::map<Int, std::size_t> index_;
  std::size_t root_index_ = 0;
};

struct Violation {
  std::string clause;  // "order", "1".."6", "7", "7a", "7b"
  std::vector<Int> orbits;

  bool operator==(const Violation&) const = default;
  std::string to_json() const;  // {"clause":"7a","orbits":[1]}
};

using ValidationResult = std::variant<AdmissibleTree, std::vector<Violation>>;

/// Whether two children of one vertex may share a weight class. Only the
/// replay route relaxes this; its formulas never read sibling distinctness.
enum class Siblings { Distinct, MayRepeat };

/// Checks every clause of the admissibility definition on a parsed tree.
ValidationResult validate(const RawTree& raw, Siblings siblings = Siblings::Distinct);

/// Validates and throws DomainError listing the violations on failure.
AdmissibleTree validate_or_throw(const RawTree& raw);

struct Strata {
  std::vector<Int> fixed;                    // T_0: orbits with stab = m
  std::map<Int, std::vector<Int>> by_stab;   // T_d for proper divisors d
  Int n_t = 0;                               // vertex count, minus 1 for type II
  TreeType type = TreeType::I;
};

Strata strata(const AdmissibleTree& t);

/// Re-roots a type I tree at the fixed vertex `target`, reversing the path
/// from the old root. The new root gets (a-b, -b; m); each former path
/// vertex takes ±(a', -b') of its former child on the path. Off-path
/// subtrees are untouched.
AdmissibleTree reorient(const AdmissibleTree& t, Int target, Siblings siblings = Siblings::Distinct);

/// Replaces the root weight (a0,b0) by one of (a0,b0), (a0-b0,-b0),
/// (b0-a0,-a0) so that p divides neither entry.
AdmissibleTree normalize_root(const AdmissibleTree& t, Int p);

/// Random admissible tree, deterministic in `seed`.
AdmissibleTree generate_random(Int m, int max_level, int max_orbits, std::uint64_t seed);

/// Same, with the tree type fixed by the caller.
AdmissibleTree generate_random(Int m, int max_level, int max_orbits, std::uint64_t seed,
                               TreeType type);

}  // namespace equitree
