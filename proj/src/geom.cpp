#include "equitree/geom.hpp"

#include <algorithm>

#include <json.hpp>

#include "equitree/tree.hpp"

namespace equitree {

std::array<VirtualRep, 3> tangential_reps(const Weight& w) {
  const Int a = w.a, b = w.b, m = w.m;
  return {VirtualRep::character(m, b - a) + VirtualRep::character(m, -a),
          VirtualRep::character(m, a - b) + VirtualRep::character(m, -b),
          VirtualRep::character(m, a) + VirtualRep::character(m, b)};
}

bool compatible_same_group(const Weight& w1, const Weight& w2) {
  if (w1.m != w2.m) return false;
  const Int a = w1.a, b = w1.b, m = w1.m;
  const std::array<Weight, 3> targets{Weight(a, -b, m), Weight(a - b, b, m), Weight(a, b - a, m)};
  for (const Weight& rep : block_class(w2))
    if (contains_class(targets, rep)) return true;
  return false;
}

bool compatible_subgroup(const Weight& w, const Weight& child, Block block) {
  const Int mv = w.m, mu = child.m;
  if (mu == mv || mv % mu != 0) return false;
  if (!child.primitive()) return false;
  bool level_ok = false;
  const std::array<Int, 3> xs{w.a, w.b, w.a - w.b};
  for (std::size_t i = 0; i < (block == Block::S4 ? 2u : 3u); ++i)
    if (gcd(mod(xs[i], mv), mv) == mu) level_ok = true;
  if (!level_ok) return false;
  if (mu == 1) return true;
  if (child.a != 0 && child.b != 0) return false;
  const Int other = child.a == 0 ? child.b : child.a;
  for (Int y : {-w.a, -w.b, w.b - w.a}) {
    if (mod(y, mu) == 0) continue;
    if (mod(other - y, mu) == 0 || mod(other + y, mu) == 0) return true;
  }
  return false;
}

FixedCensus fixed_census_block(const Weight& w, Int d, Block block) {
  if (d <= 0 || w.m % d != 0) throw DomainError("fixed_census_block: d must divide the weight modulus");
  FixedCensus c;
  if (d == 1) {
    c.whole_space = true;
    return c;
  }
  const Int a = mod(w.a, d), b = mod(w.b, d);
  if (block == Block::CP2) {
    // Eigenvalue classes of l^a + l^b + 1 under a generator of C_d.
    if (a != b && a != 0 && b != 0) {
      c.isolated_points = 3;
    } else if (a == b && a == 0) {
      c.whole_space = true;
    } else {
      c.isolated_points = 1;
      c.sphere_components = 1;
    }
  } else {
    if (a != 0 && b != 0)
      c.isolated_points = 2;
    else if (a == 0 && b == 0)
      c.whole_space = true;
    else
      c.sphere_components = 1;
  }
  return c;
}

std::string FiltrationStep::to_json() const {
  static const char* names[] = {"base", "root_middle", "root_top", "orbit"};
  nlohmann::ordered_json j;
  j["kind"] = names[static_cast<int>(kind)];
  j["stab"] = stab;
  j["grading"] = grading.to_string();
  return j.dump();
}

std::vector<FiltrationStep> filtration_steps(const AdmissibleTree& t) {
  const Int m = t.order();
  const OrbitNode& root = t.root();
  std::vector<FiltrationStep> steps;
  steps.push_back({FiltrationStep::Kind::BaseCell, root.id, m, VirtualRep(m)});

  std::vector<const OrbitNode*> rest;
  for (const auto& o : t.orbits())
    if (o.parent) rest.push_back(&o);
  std::sort(rest.begin(), rest.end(), [](const OrbitNode* x, const OrbitNode* y) {
    return x->level != y->level ? x->level > y->level : x->id < y->id;
  });
  for (const OrbitNode* o : rest) {
    const Int d = o->stab();
    steps.push_back({FiltrationStep::Kind::OrbitAttach, o->id, d,
                     VirtualRep::character(d, o->weight.a - o->weight.b)});
  }

  const Weight& w = root.weight;
  if (t.type() == TreeType::I)
    steps.push_back({FiltrationStep::Kind::RootMiddleCell, root.id, m, VirtualRep::character(m, w.a - w.b)});
  steps.push_back({FiltrationStep::Kind::RootTopCell, root.id, m,
                   VirtualRep::character(m, w.a) + VirtualRep::character(m, w.b)});
  return steps;
}

}  // namespace equitree
