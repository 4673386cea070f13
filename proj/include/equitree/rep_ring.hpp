#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "equitree/arith.hpp"

namespace equitree {

/// A virtual real orthogonal representation of the cyclic group C_m:
/// a trivial part plus integer multiplicities of the realified
/// characters l^k, 1 <= k <= m-1. The exponent 0 is never stored; it is
/// folded into the trivial part as +2 per copy.
class VirtualRep {
public:
  explicit VirtualRep(Int order = 1, Int trivial = 0);

  /// mult * l^k; k is reduced mod m.
  static VirtualRep character(Int order, Int k, Int mult = 1);

  Int order() const { return order_; }
  Int trivial() const { return trivial_; }
  const std::map<Int, Int>& chars() const { return chars_; }
  Int multiplicity(Int k) const;

  VirtualRep& add_trivial(Int n);
  VirtualRep& add_char(Int k, Int mult = 1);

  VirtualRep& operator+=(const VirtualRep& other);
  VirtualRep& operator-=(const VirtualRep& other);
  friend VirtualRep operator+(VirtualRep a, const VirtualRep& b) { return a += b; }
  friend VirtualRep operator-(VirtualRep a, const VirtualRep& b) { return a -= b; }
  VirtualRep operator-() const;
  VirtualRep operator+(Int n) const { return VirtualRep(*this).add_trivial(n); }
  VirtualRep operator-(Int n) const { return VirtualRep(*this).add_trivial(-n); }
  bool operator==(const VirtualRep&) const = default;

  /// Real dimension |a|.
  Int dim() const;

  /// Dimension of the C_d-fixed part |a^{C_d}|; l^k is C_d-fixed iff d | k.
  /// Throws DomainError unless d | m.
  Int fixed_dim(Int d) const;

  /// Canonical representative of the HZ-module class of S^a: each exponent
  /// k is replaced by gcd(k, m). Units of Z/m act transitively on exponents
  /// with a given gcd, so this is a complete invariant.
  VirtualRep hz_canonical() const;

  /// Restriction to the subgroup C_d: exponents taken mod d.
  VirtualRep restrict_to(Int d) const;

  /// True when every multiplicity (and the trivial part) is nonnegative.
  bool is_actual() const;
  bool is_zero() const { return trivial_ == 0 && chars_.empty(); }

  /// Text form used throughout the reports, e.g. "l^1+l^2-l^14-1",
  /// "2*l^1-3", "l^1+2", "0".
  std::string to_string() const;

private:
  Int order_;
  Int trivial_;
  std::map<Int, Int> chars_;
};

class RepParseError : public std::invalid_argument {
public:
  RepParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// Parses the textual grammar `a`, `+/- n*l^k`, `l`, `l^k` (whitespace
/// insensitive), e.g. "l^1 + l^2 - l^14 - 1". Errors carry the byte offset.
VirtualRep parse_rep(std::string_view text, Int order);

}  // namespace equitree
