#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "equitree/rep_ring.hpp"
#include "equitree/tree.hpp"

namespace equitree {

/// Raised when a computed result breaks an identity that must always hold
/// (Betti numbers, agreement of overlapping formulas, ...).
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// One wedge piece of HZ ^ X(T)_+.
struct Summand {
  enum class Kind { Unit, Sphere, Induced };
  Kind kind = Kind::Unit;
  Int d = 1;       // subgroup order for Induced, m otherwise
  VirtualRep rep;  // canonical over C_d (Induced) or C_m (Sphere)

  static Summand unit(Int m) { return {Kind::Unit, m, VirtualRep(m)}; }
  /// HZ ^ S^V, V canonicalized.
  static Summand sphere(const VirtualRep& v) { return {Kind::Sphere, v.order(), v.hz_canonical()}; }
  /// HZ ^ G/C_d+ ^ S^V, V over C_d canonicalized.
  static Summand induced(const VirtualRep& v) { return {Kind::Induced, v.order(), v.hz_canonical()}; }

  /// "1", "S(l^1+2)", "Ind(5;l^1)"
  std::string to_string() const;

  bool operator==(const Summand& o) const { return kind == o.kind && d == o.d && rep == o.rep; }
};

/// Unit first, spheres by decreasing dimension, induced pieces by d; text breaks ties.
bool summand_less(const Summand& x, const Summand& y);

struct Decomposition {
  Int order = 1;
  std::vector<Summand> summands;  // kept sorted with summand_less
  std::string theorem;            // "4.3-I", "4.3-II", "4.5", "5.2", "5.3-eq", "5.4"
  std::string trace;

  void add(const Summand& s, Int copies = 1);
  /// {"theorem":"5.2","summands":["1","S(l^1+2)",...]}
  std::string to_json() const;
};

struct NoTheoremApplies {
  std::string reason;
  std::vector<Int> orbits;  // offending fixed orbits

  std::string to_json() const;
};

using DecomposeResult = std::variant<Decomposition, NoTheoremApplies>;

struct Counters {
  Int p = 0;
  int n = 0;
  Int phi = 0;  // fixed v with p not dividing a_v - b_v (order p only)
  Int psi = 0;  // fixed v with p dividing a_v - b_v (order p only)
  int tau = 0;
  std::map<int, Int> Z;  // nonzero counts of fixed v with gcd(a_v - b_v, p^n) = p^i
  std::map<int, Int> W;  // Z shifted at 0 and tau; equals Z when tau = 0
};

/// Counting functions over the fixed orbits; order must be a prime power.
Counters counters(const AdmissibleTree& t, Int p);

/// The individual decomposition formulas; each returns nullopt when its
/// hypotheses fail on `t`.
enum class Arm { TypeII, OneZero, Coprime, PrimeCase, EqualValuation, PrimePower };

std::string theorem_tag(Arm arm);
std::optional<Decomposition> try_arm(const AdmissibleTree& t, Arm arm);

/// The formula of TypeII, OneZero, Coprime or EqualValuation evaluated on
/// `t` without checking its hypotheses (used for intermediate stages).
Decomposition apply_formula(const AdmissibleTree& t, Arm arm);

/// Runs the arms in order TypeII, OneZero, Coprime, PrimeCase,
/// EqualValuation, PrimePower and returns the first that applies. When both
/// OneZero and Coprime apply their outputs are checked to agree.
DecomposeResult decompose(const AdmissibleTree& t);

/// The arm decompose() would choose, if any.
std::optional<Arm> dispatch_arm(const AdmissibleTree& t);

/// Induced summand of a non-fixed orbit: Ind(d; l^{gcd(a-b, d)}).
Summand orbit_induced(const OrbitNode& o);

/// Underlying (b0, b2, b4) read off the summands.
std::tuple<Int, Int, Int> betti_numbers(const Decomposition& d);

/// Same, checked against (1, n(T), 1); throws InvariantViolation otherwise.
std::tuple<Int, Int, Int> underlying_betti(const Decomposition& d, const AdmissibleTree& t);

/// Equal multisets of canonical summands (theorem tags ignored).
bool canonical_eq(const Decomposition& x, const Decomposition& y);

}  // namespace equitree
