#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "equitree/decomp.hpp"
#include "equitree/smith.hpp"

namespace equitree {

/// Finitely generated abelian group Z^free + Z/t_1 + ... with t_i | t_{i+1}.
struct AbGroup {
  Int free = 0;
  std::vector<Int> torsion;

  static AbGroup zero() { return {}; }
  static AbGroup z() { return {1, {}}; }
  static AbGroup cyclic(Int n) { return n == 1 ? AbGroup{} : AbGroup{0, {n}}; }

  bool is_zero() const { return free == 0 && torsion.empty(); }
  bool operator==(const AbGroup&) const = default;
  AbGroup& operator+=(const AbGroup& other);  // direct sum
  std::string to_string() const;              // "0", "Z", "Z^2+Z/3"
};

/// Homology of one degree at one subgroup level.
struct LevelData {
  Int level = 1;
  int degree = 0;
  AbGroup group;

  /// {"level":3,"degree":0,"free":0,"torsion":[3]}
  std::string to_json() const;
};

/// One G-orbit of cells G/C_stab in a fixed degree. Cells of the orbit are
/// g^r * e for 0 <= r < m/stab; only the boundary of e itself is stored, as
/// coefficients on cells (orbit index in degree-1, r).
struct CellOrbit {
  Int stab = 1;
  std::map<std::pair<std::size_t, Int>, Int> boundary;
};

/// Reduced cellular chains of a finite C_m-CW complex.
class GComplex {
public:
  explicit GComplex(Int order = 1) : order_(order) {}

  Int order() const { return order_; }
  int top_degree() const { return static_cast<int>(cells_.size()) - 1; }
  const std::vector<CellOrbit>& cells(int degree) const;
  Int orbit_size(int degree, std::size_t orbit) const { return order_ / cells(degree)[orbit].stab; }

  /// Adds an orbit and returns its index within the degree.
  std::size_t add_orbit(int degree, Int stab);
  void set_boundary(int degree, std::size_t orbit, std::size_t target, Int r, Int coef);

  /// Boundary matrix from degree n to degree n-1 on the C_level-fixed
  /// chains (basis: orbit sums of C_level on each cell orbit).
  IntMatrix level_differential(int degree, Int level) const;
  /// Rank of the C_level-fixed chains in a degree: sum of m / lcm(stab, level).
  Int level_rank(int degree, Int level) const;

  std::size_t cell_orbit_count() const;

private:
  Int order_;
  std::vector<std::vector<CellOrbit>> cells_;
};

/// Reduced complex of the sphere S^V for an actual representation V:
/// iterated smash product of S^{l^k} blocks (fixed 0-cell, one orbit of
/// 1-cells and one orbit of 2-cells with stabilizer C_{gcd(k,m)}) and
/// trivial suspensions. Throws DomainError for virtual V.
GComplex sphere_complex(const VirtualRep& v);

/// Tensor product of reduced complexes (smash product of spaces).
GComplex smash(const GComplex& x, const GComplex& y);

/// G x_{C_d} c for a complex c over C_d, d | m.
GComplex induce_complex(const GComplex& c, Int m);

/// Throws InvariantViolation if the boundary does not square to zero at
/// some level.
void check_boundary_squares(const GComplex& c);

/// Bredon homology with constant Z coefficients at level C_level, degrees
/// 0..top_degree.
std::vector<AbGroup> level_homology(const GComplex& c, Int level);

/// Direct sum of the summand homologies at one level, degrees 0..max_degree.
/// Results per summand are memoized (thread safe).
std::vector<AbGroup> decomposition_homology(const Decomposition& dec, Int level, int max_degree = 4);

/// Level data of the constant-coefficient homotopy table over C_p for the
/// grading a = n - V: Z and Z* give Z at both levels, the bracket Z/p gives
/// Z/p at the top level and 0 below, 0 gives 0.
AbGroup table_prediction(const VirtualRep& alpha, Int level);

struct TableMismatch {
  std::string sphere;  // e.g. "l^1+l^2"
  int degree = 0;
  Int level = 1;
  AbGroup expected;
  AbGroup actual;
};

struct TableReport {
  Int prime = 0;
  Int checks = 0;
  std::vector<TableMismatch> mismatches;

  bool passed() const { return mismatches.empty(); }
  std::string to_json() const;
};

/// Compares the oracle on S^{l^k} and S^{l^j + l^k}, exp_lo <= j <= k <= exp_hi,
/// degrees lo..hi, levels 1 and p, against table_prediction.
TableReport verify_table(Int p, int lo, int hi, Int exp_lo, Int exp_hi);

/// Full grid: degrees 0..4, exponents 1..p-1.
TableReport verify_table(Int p);

}  // namespace equitree
