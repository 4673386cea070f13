#include "equitree/weight.hpp"

#include <algorithm>

namespace equitree {

Weight::Weight(Int a_, Int b_, Int m_) : m(m_) {
  if (m_ <= 0) throw DomainError("weight modulus must be positive");
  a = mod(a_, m_);
  b = mod(b_, m_);
}

Weight Weight::canonical() const {
  std::array<Weight, 4> forms{*this, swapped(), negated(), swapped().negated()};
  return *std::min_element(forms.begin(), forms.end());
}

std::string Weight::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(m) + ")";
}

std::array<Weight, 3> root_child_weights(const Weight& r) {
  return {Weight(r.a, -r.b, r.m), Weight(r.a, r.b - r.a, r.m), Weight(r.b, r.a - r.b, r.m)};
}

std::array<Weight, 2> chain_child_weights(const Weight& p) {
  return {Weight(p.a, p.b - p.a, p.m), Weight(p.a - p.b, p.b, p.m)};
}

std::array<Weight, 6> block_class(const Weight& w) {
  const Int a = w.a, b = w.b, m = w.m;
  return {Weight(a, b, m),      Weight(b, a, m),      Weight(a - b, -b, m),
          Weight(-b, a - b, m), Weight(-a, b - a, m), Weight(b - a, -a, m)};
}

}  // namespace equitree
