#pragma once

#include <vector>

#include "equitree/arith.hpp"

namespace equitree {

/// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  Int& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Int at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y);
bool is_zero(const IntMatrix& x);

/// Nonzero invariant factors d_1 | d_2 | ... of x (all positive). Runs in
/// checked 64-bit arithmetic and redoes the reduction with arbitrary
/// precision if an intermediate entry overflows.
std::vector<Int> invariant_factors(const IntMatrix& x);

/// Rebuilds a divisibility chain from arbitrary positive diagonal entries.
std::vector<Int> normalize_chain(const std::vector<Int>& diagonal);

}  // namespace equitree
