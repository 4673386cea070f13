#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace equitree {

using Int = std::int64_t;

/// Raised when an operation is called outside its mathematical domain
/// (even group order, divisor that does not divide the order, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Nonnegative residue of x modulo n (n > 0).
inline Int mod(Int x, Int n) {
  Int r = x % n;
  return r < 0 ? r + n : r;
}

/// gcd with the convention gcd(0, n) = n.
inline Int gcd(Int a, Int b) { return std::gcd(a, b); }

inline Int gcd3(Int a, Int b, Int c) { return std::gcd(std::gcd(a, b), c); }

inline Int lcm(Int a, Int b) { return std::lcm(a, b); }

inline bool divides(Int d, Int x) { return d != 0 && x % d == 0; }

/// Positive divisors of n in increasing order.
std::vector<Int> divisors(Int n);

bool is_prime(Int n);

/// Prime factorization as (prime, exponent) pairs, primes increasing.
std::vector<std::pair<Int, int>> factorize(Int n);

/// If n = p^k with k >= 1, returns (p, k).
std::optional<std::pair<Int, int>> prime_power(Int n);

/// p-adic valuation of x taken modulo p^n: the exponent i with
/// gcd(x, p^n) = p^i (so the valuation of 0 is n).
int valuation_mod(Int x, Int p, int n);

/// Integer power, no overflow checks (small arguments only).
Int ipow(Int base, int exp);

}  // namespace equitree
