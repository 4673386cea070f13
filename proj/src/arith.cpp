#include "equitree/arith.hpp"

namespace equitree {

std::vector<Int> divisors(Int n) {
  if (n <= 0) throw DomainError("divisors: n must be positive");
  std::vector<Int> lo, hi;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  if (n <= 0) throw DomainError("factorize: n must be positive");
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::optional<std::pair<Int, int>> prime_power(Int n) {
  if (n < 2) return std::nullopt;
  auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

int valuation_mod(Int x, Int p, int n) {
  Int g = gcd(mod(x, ipow(p, n)), ipow(p, n));
  int i = 0;
  while (g % p == 0) {
    g /= p;
    ++i;
  }
  return i;
}

Int ipow(Int base, int exp) {
  Int r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace equitree
