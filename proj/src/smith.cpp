#include "equitree/smith.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

namespace equitree {

namespace {

using Big = boost::multiprecision::cpp_int;

struct Overflow {};

// Checked arithmetic for the 64-bit pass.
struct Checked {
  static Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
};

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <class T>
T mul_(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, Int>)
    return Checked::mul(a, b);
  else
    return a * b;
}

template <class T>
T sub_(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, Int>)
    return Checked::sub(a, b);
  else
    return a - b;
}

// Diagonalizes m in place by unimodular row and column operations and
// returns the nonzero diagonal, pivoting on the smallest absolute entry.
template <class T>
std::vector<T> diagonalize(std::vector<std::vector<T>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<T> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry in the remaining block
    std::size_t pi = rows, pj = cols;
    T best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (best == 0 || abs_value(m[i][j]) < best)) {
          best = abs_value(m[i][j]);
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    std::swap(m[t], m[pi]);
    for (auto& row : m) std::swap(row[t], row[pj]);

    bool clean = false;
    while (!clean) {
      clean = true;
      const T piv = m[t][t];
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const T q = m[i][t] / piv;
        for (std::size_t j = t; j < cols; ++j) m[i][j] = sub_(m[i][j], mul_(q, m[t][j]));
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const T q = m[t][j] / piv;
        for (std::size_t i = t; i < rows; ++i) m[i][j] = sub_(m[i][j], mul_(q, m[i][t]));
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) {
        // move the smallest remainder in row/column t to the pivot
        std::size_t bi = t, bj = t;
        T b = abs_value(m[t][t]);
        for (std::size_t i = t + 1; i < rows; ++i)
          if (m[i][t] != 0 && abs_value(m[i][t]) < b) {
            b = abs_value(m[i][t]);
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[t][j] != 0 && abs_value(m[t][j]) < b) {
            b = abs_value(m[t][j]);
            bi = t;
            bj = j;
          }
        std::swap(m[t], m[bi]);
        for (auto& row : m) std::swap(row[t], row[bj]);
      }
    }
    diag.push_back(abs_value(m[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw DomainError("multiply: shape mismatch");
  IntMatrix z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Int a = x.at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += a * y.at(k, j);
    }
  return z;
}

bool is_zero(const IntMatrix& x) {
  return std::all_of(x.data.begin(), x.data.end(), [](Int v) { return v == 0; });
}

std::vector<Int> normalize_chain(const std::vector<Int>& diagonal) {
  // elementary divisors grouped by prime, largest powers last
  std::map<Int, std::vector<Int>> by_prime;
  for (Int d : diagonal) {
    if (d <= 0) throw DomainError("normalize_chain: entries must be positive");
    if (d == 1) continue;
    for (auto [p, e] : factorize(d)) by_prime[p].push_back(ipow(p, e));
  }
  std::size_t len = 0;
  for (auto& [p, powers] : by_prime) {
    std::sort(powers.begin(), powers.end());
    len = std::max(len, powers.size());
  }
  std::vector<Int> chain(len, 1);
  for (auto& [p, powers] : by_prime) {
    const std::size_t offset = len - powers.size();
    for (std::size_t i = 0; i < powers.size(); ++i)
      if (__builtin_mul_overflow(chain[offset + i], powers[i], &chain[offset + i]))
        throw DomainError("invariant factor exceeds 64 bits");
  }
  std::vector<Int> out(diagonal.size() - len, 1);
  out.insert(out.end(), chain.begin(), chain.end());
  return out;
}

std::vector<Int> invariant_factors(const IntMatrix& x) {
  std::vector<Int> diag;
  try {
    std::vector<std::vector<Int>> m(x.rows, std::vector<Int>(x.cols));
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t j = 0; j < x.cols; ++j) m[i][j] = x.at(i, j);
    diag = diagonalize(std::move(m));
  } catch (const Overflow&) {
    std::vector<std::vector<Big>> m(x.rows, std::vector<Big>(x.cols));
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t j = 0; j < x.cols; ++j) m[i][j] = x.at(i, j);
    diag.clear();
    for (const Big& d : diagonalize(std::move(m))) {
      if (d > Big(std::numeric_limits<Int>::max())) throw DomainError("invariant factor exceeds 64 bits");
      diag.push_back(static_cast<Int>(d));
    }
  }
  return normalize_chain(diag);
}

}  // namespace equitree
