#include "equitree/mackey.hpp"

#include <mutex>
#include <tuple>

#include <json.hpp>

#include "equitree/vanish.hpp"

namespace equitree {

using ordered_json = nlohmann::ordered_json;

AbGroup& AbGroup::operator+=(const AbGroup& other) {
  free += other.free;
  std::vector<Int> all = torsion;
  all.insert(all.end(), other.torsion.begin(), other.torsion.end());
  torsion.clear();
  for (Int t : normalize_chain(all))
    if (t > 1) torsion.push_back(t);
  return *this;
}

std::string AbGroup::to_string() const {
  std::string out;
  if (free > 0) out = free == 1 ? "Z" : "Z^" + std::to_string(free);
  for (Int t : torsion) out += (out.empty() ? "" : "+") + std::string("Z/") + std::to_string(t);
  return out.empty() ? "0" : out;
}

std::string LevelData::to_json() const {
  ordered_json j;
  j["level"] = level;
  j["degree"] = degree;
  j["free"] = group.free;
  j["torsion"] = group.torsion;
  return j.dump();
}

const std::vector<CellOrbit>& GComplex::cells(int degree) const {
  static const std::vector<CellOrbit> none;
  if (degree < 0 || degree > top_degree()) return none;
  return cells_[degree];
}

std::size_t GComplex::add_orbit(int degree, Int stab) {
  if (stab <= 0 || order_ % stab != 0) throw DomainError("cell stabilizer must divide the group order");
  if (degree < 0) throw DomainError("negative cell degree");
  if (static_cast<int>(cells_.size()) <= degree) cells_.resize(degree + 1);
  cells_[degree].push_back({stab, {}});
  return cells_[degree].size() - 1;
}

void GComplex::set_boundary(int degree, std::size_t orbit, std::size_t target, Int r, Int coef) {
  if (coef == 0) return;
  const auto& below = cells(degree - 1);
  if (target >= below.size()) throw DomainError("boundary target out of range");
  CellOrbit& cell = cells_.at(degree).at(orbit);
  if (below[target].stab % cell.stab != 0)
    throw DomainError("boundary cell stabilizer must contain the cell stabilizer");
  const Int key_r = mod(r, order_ / below[target].stab);
  Int& slot = cell.boundary[{target, key_r}];
  slot += coef;
  if (slot == 0) cell.boundary.erase({target, key_r});
}

std::size_t GComplex::cell_orbit_count() const {
  std::size_t n = 0;
  for (const auto& d : cells_) n += d.size();
  return n;
}

Int GComplex::level_rank(int degree, Int level) const {
  Int r = 0;
  for (const auto& c : cells(degree)) r += order_ / lcm(c.stab, level);
  return r;
}

IntMatrix GComplex::level_differential(int degree, Int level) const {
  if (level <= 0 || order_ % level != 0) throw DomainError("level must divide the group order");
  const auto& src = cells(degree);
  const auto& dst = cells(degree - 1);
  const Int step = order_ / level;  // C_level is generated by g^step

  std::vector<std::size_t> row_offset(dst.size() + 1, 0);
  std::vector<Int> row_classes(dst.size());
  for (std::size_t t = 0; t < dst.size(); ++t) {
    row_classes[t] = gcd(step, order_ / dst[t].stab);
    row_offset[t + 1] = row_offset[t] + row_classes[t];
  }
  IntMatrix mat(row_offset.back(), static_cast<std::size_t>(level_rank(degree, level)));

  std::size_t col = 0;
  for (const auto& o : src) {
    const Int n_cells = order_ / o.stab;
    const Int classes = gcd(step, n_cells);
    for (Int c = 0; c < classes; ++c, ++col) {
      // boundary of the C_level orbit sum of cell c
      std::map<std::pair<std::size_t, Int>, Int> acc;
      for (Int r = c; r < n_cells; r += classes)
        for (const auto& [key, coef] : o.boundary) {
          const Int nt = order_ / dst[key.first].stab;
          acc[{key.first, mod(key.second + r, nt)}] += coef;
        }
      for (std::size_t t = 0; t < dst.size(); ++t)
        for (Int c2 = 0; c2 < row_classes[t]; ++c2) {
          auto it = acc.find({t, c2});
          if (it != acc.end()) mat.at(row_offset[t] + c2, col) = it->second;
        }
    }
  }
  return mat;
}

namespace {

Int inverse_mod(Int u, Int n) {
  if (n == 1) return 0;
  for (Int x = 1; x < n; ++x)
    if (mod(u * x, n) == 1) return x;
  throw DomainError("no inverse");
}

GComplex point_sphere(Int m, int degree) {
  GComplex c(m);
  c.add_orbit(degree, m);
  return c;
}

GComplex lambda_sphere(Int m, Int k) {
  const Int g = gcd(mod(k, m), m);
  const Int n = m / g;
  const Int u = mod(k, m) / g;
  GComplex c(m);
  c.add_orbit(0, m);
  c.add_orbit(1, g);
  c.add_orbit(2, g);
  c.set_boundary(1, 0, 0, 0, -1);
  // the sector at angular position 0 runs from ray 0 to the ray at position 1
  c.set_boundary(2, 0, 0, inverse_mod(u, n), 1);
  c.set_boundary(2, 0, 0, 0, -1);
  return c;
}

}  // namespace

GComplex smash(const GComplex& x, const GComplex& y) {
  if (x.order() != y.order()) throw DomainError("smash: complexes over different groups");
  const Int m = x.order();
  GComplex out(m);
  // first index of the product orbits of (p, i) x (q, j)
  std::map<std::tuple<int, std::size_t, int, std::size_t>, std::size_t> first;
  for (int p = 0; p <= x.top_degree(); ++p)
    for (std::size_t i = 0; i < x.cells(p).size(); ++i)
      for (int q = 0; q <= y.top_degree(); ++q)
        for (std::size_t j = 0; j < y.cells(q).size(); ++j) {
          const Int na = x.orbit_size(p, i), nb = y.orbit_size(q, j);
          const Int count = gcd(na, nb);
          const Int stab = m / lcm(na, nb);
          std::size_t idx = 0;
          for (Int c = 0; c < count; ++c) idx = out.add_orbit(p + q, stab);
          first[{p, i, q, j}] = idx + 1 - static_cast<std::size_t>(count);
        }

  // product orbit j of (A, B) contains g^s (e_A, g^j e_B); locate (g^xa e_A, g^yb e_B)
  auto locate = [&](int p, std::size_t i, Int xa, int q, std::size_t j, Int yb) {
    const Int na = x.orbit_size(p, i), nb = y.orbit_size(q, j);
    const Int count = gcd(na, nb);
    const Int jj = mod(yb - xa, count);
    for (Int s = mod(xa, na);; s += na)
      if (mod(yb - s - jj, nb) == 0) return std::pair<std::size_t, Int>{first.at({p, i, q, j}) + jj, s};
  };

  for (int p = 0; p <= x.top_degree(); ++p)
    for (std::size_t i = 0; i < x.cells(p).size(); ++i)
      for (int q = 0; q <= y.top_degree(); ++q)
        for (std::size_t j = 0; j < y.cells(q).size(); ++j) {
          const Int nb = y.orbit_size(q, j);
          const Int count = gcd(x.orbit_size(p, i), nb);
          const Int sign = p % 2 == 0 ? 1 : -1;
          for (Int jj = 0; jj < count; ++jj) {
            const std::size_t self = first.at({p, i, q, j}) + jj;
            for (const auto& [key, coef] : x.cells(p)[i].boundary) {
              auto [target, s] = locate(p - 1, key.first, key.second, q, j, jj);
              out.set_boundary(p + q, self, target, s, coef);
            }
            for (const auto& [key, coef] : y.cells(q)[j].boundary) {
              const Int nb2 = y.orbit_size(q - 1, key.first);
              auto [target, s] = locate(p, i, 0, q - 1, key.first, mod(key.second + jj, nb2));
              out.set_boundary(p + q, self, target, s, sign * coef);
            }
          }
        }
  return out;
}

GComplex sphere_complex(const VirtualRep& v) {
  if (!v.is_actual()) throw DomainError("sphere_complex: representation must be actual, got " + v.to_string());
  const Int m = v.order();
  GComplex c = point_sphere(m, 0);
  if (v.trivial() > 0) c = smash(c, point_sphere(m, static_cast<int>(v.trivial())));
  for (auto [k, mult] : v.chars())
    for (Int i = 0; i < mult; ++i) c = smash(c, lambda_sphere(m, k));
  check_boundary_squares(c);
  return c;
}

GComplex induce_complex(const GComplex& c, Int m) {
  const Int d = c.order();
  if (m <= 0 || m % d != 0) throw DomainError("induce_complex: subgroup order must divide m");
  GComplex out(m);
  for (int n = 0; n <= c.top_degree(); ++n)
    for (const auto& o : c.cells(n)) out.add_orbit(n, o.stab);
  for (int n = 1; n <= c.top_degree(); ++n)
    for (std::size_t i = 0; i < c.cells(n).size(); ++i)
      for (const auto& [key, coef] : c.cells(n)[i].boundary)
        out.set_boundary(n, i, key.first, key.second * (m / d), coef);
  return out;
}

void check_boundary_squares(const GComplex& c) {
  for (Int level : divisors(c.order()))
    for (int n = 2; n <= c.top_degree(); ++n)
      if (!is_zero(multiply(c.level_differential(n - 1, level), c.level_differential(n, level))))
        throw InvariantViolation("boundary does not square to zero in degree " + std::to_string(n) +
                                 " at level " + std::to_string(level));
}

std::vector<AbGroup> level_homology(const GComplex& c, Int level) {
  const int top = c.top_degree();
  std::vector<std::vector<Int>> factors(top + 2);
  for (int n = 1; n <= top; ++n) factors[n] = invariant_factors(c.level_differential(n, level));
  std::vector<AbGroup> out(std::max(top + 1, 0));
  for (int n = 0; n <= top; ++n) {
    const Int rank_out = static_cast<Int>(factors[n].size());
    const Int rank_in = static_cast<Int>(factors[n + 1].size());
    out[n].free = c.level_rank(n, level) - rank_out - rank_in;
    for (Int t : factors[n + 1])
      if (t > 1) out[n].torsion.push_back(t);
  }
  return out;
}

namespace {

std::vector<AbGroup> summand_homology(const Summand& s, Int m, Int level) {
  static std::mutex lock;
  static std::map<std::tuple<Int, std::string, Int>, std::vector<AbGroup>> cache;
  const auto key = std::make_tuple(m, s.to_string(), level);
  {
    std::lock_guard<std::mutex> guard(lock);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::vector<AbGroup> result;
  if (s.kind == Summand::Kind::Induced) {
    const GComplex c = induce_complex(sphere_complex(s.rep), m);
    check_boundary_squares(c);
    result = level_homology(c, level);
  } else {
    result = level_homology(sphere_complex(s.kind == Summand::Kind::Unit ? VirtualRep(m) : s.rep), level);
  }
  std::lock_guard<std::mutex> guard(lock);
  cache.emplace(key, result);
  return result;
}

}  // namespace

std::vector<AbGroup> decomposition_homology(const Decomposition& dec, Int level, int max_degree) {
  std::vector<AbGroup> total(max_degree + 1);
  for (const Summand& s : dec.summands) {
    const auto h = summand_homology(s, dec.order, level);
    for (int n = 0; n <= max_degree && n < static_cast<int>(h.size()); ++n) total[n] += h[n];
  }
  return total;
}

AbGroup table_prediction(const VirtualRep& alpha, Int level) {
  const MackeyName name = pi_cp(alpha);
  switch (name.tag) {
    case MackeyName::Tag::ConstantZ:
    case MackeyName::Tag::DualZstar:
      return AbGroup::z();
    case MackeyName::Tag::BracketZmodP:
      return level == alpha.order() ? AbGroup::cyclic(name.prime) : AbGroup::zero();
    case MackeyName::Tag::Zero:
      return AbGroup::zero();
  }
  return AbGroup::zero();
}

std::string TableReport::to_json() const {
  ordered_json j;
  j["prime"] = prime;
  j["checks"] = checks;
  j["passed"] = passed();
  j["mismatches"] = ordered_json::array();
  for (const auto& mm : mismatches) {
    ordered_json e;
    e["sphere"] = mm.sphere;
    e["degree"] = mm.degree;
    e["level"] = mm.level;
    e["expected"] = mm.expected.to_string();
    e["actual"] = mm.actual.to_string();
    j["mismatches"].push_back(e);
  }
  return j.dump();
}

TableReport verify_table(Int p, int lo, int hi, Int exp_lo, Int exp_hi) {
  if (!is_prime(p) || p == 2) throw DomainError("verify_table: p must be an odd prime");
  TableReport report;
  report.prime = p;
  std::vector<VirtualRep> spheres;
  for (Int k = exp_lo; k <= exp_hi; ++k) {
    spheres.push_back(VirtualRep::character(p, k));
    for (Int j = exp_lo; j <= k; ++j) spheres.push_back(VirtualRep::character(p, j) + VirtualRep::character(p, k));
  }
  for (const VirtualRep& v : spheres) {
    const GComplex c = sphere_complex(v);
    for (Int level : {Int{1}, p}) {
      const auto h = level_homology(c, level);
      for (int n = lo; n <= hi; ++n) {
        const AbGroup actual = n < static_cast<int>(h.size()) ? h[n] : AbGroup::zero();
        const AbGroup expected = table_prediction(VirtualRep(p, n) - v, level);
        ++report.checks;
        if (!(actual == expected)) report.mismatches.push_back({v.to_string(), n, level, expected, actual});
      }
    }
  }
  return report;
}

TableReport verify_table(Int p) { return verify_table(p, 0, 4, 1, p - 1); }

}  // namespace equitree
