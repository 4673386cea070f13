#include "equitree/obstruct.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace equitree {

std::string ObstructionRecord::to_json() const {
  nlohmann::ordered_json j;
  j["step"] = step;
  j["beta"] = beta.to_string();
  j["gamma"] = gamma.to_string();
  j["level"] = level;
  j["alpha"] = alpha.to_string();
  j["verdict"] = verdict.to_string();
  j["orbit"] = orbit;
  return j.dump();
}

ObstructionRecord make_record(int step, Int orbit, const VirtualRep& beta, const VirtualRep& gamma, Int level) {
  ObstructionRecord r;
  r.step = step;
  r.orbit = orbit;
  r.level = level;
  r.beta = beta.order() == level ? beta : beta.restrict_to(level);
  r.gamma = gamma.order() == level ? gamma : gamma.restrict_to(level);
  r.alpha = r.beta - r.gamma - 1;
  r.verdict = verdict_at_level(r.alpha, level);
  return r;
}

bool ReplayResult::all_vanish() const {
  return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.verdict.is_vanishing(); });
}

namespace {

// Number of parent steps from `id` up to the first orbit in `targets`.
Int distance_to(const AdmissibleTree& t, Int id, const std::set<Int>& targets) {
  Int dist = 0;
  while (!targets.count(id)) {
    id = *t.node(id).parent;
    ++dist;
  }
  return dist;
}

void sort_by_distance(const AdmissibleTree& t, std::vector<Int>& ids, const std::set<Int>& targets) {
  std::vector<std::pair<Int, Int>> keyed;
  for (Int id : ids) keyed.push_back({distance_to(t, id, targets), id});
  std::sort(keyed.begin(), keyed.end());
  ids.clear();
  for (auto [d, id] : keyed) ids.push_back(id);
}

AdmissibleTree stage_tree(const AdmissibleTree& t, const std::set<Int>& present) {
  RawTree raw = t.to_raw();
  std::erase_if(raw.orbits, [&](const RawOrbit& o) { return !present.count(o.id); });
  auto result = validate(raw, Siblings::MayRepeat);
  if (auto* st = std::get_if<AdmissibleTree>(&result)) return std::move(*st);
  throw InvariantViolation("replay: partial stage is not a tree of the same kind");
}

}  // namespace

ReplayResult replay(const AdmissibleTree& t) {
  const auto arm = dispatch_arm(t);
  if (!arm) throw DomainError("replay: no decomposition formula applies to this tree");
  const Int m = t.order();

  AdmissibleTree work = t;
  Arm formula = *arm;
  std::vector<Int> order;

  if (*arm == Arm::PrimeCase || *arm == Arm::PrimePower) {
    // Re-root at the nearest fixed vertex of maximal valuation, then grow
    // outward from the reversed path.
    const Int p = prime_power(m)->first;
    const AdmissibleTree nt = normalize_root(t, p);
    const Counters c = counters(nt, p);
    const OrbitNode* target = nullptr;
    for (const auto& o : nt.orbits()) {
      if (o.stab() != m || valuation_mod(o.weight.a - o.weight.b, p, c.n) != c.tau) continue;
      if (!target || o.level < target->level) target = &o;
    }
    // Off-path children keep their weights, so the reversed path can land a
    // former parent in the same class as an existing child.
    if (target->parent) {
      work = reorient(nt, target->id, Siblings::MayRepeat);
    } else {
      // Empty path: only the root block is relabelled.
      RawTree raw = nt.to_raw();
      for (auto& o : raw.orbits)
        if (!o.parent) {
          const Int a = o.a;
          o.a = a - o.b;
          o.b = -o.b;
        }
      auto relabelled = validate(raw, Siblings::MayRepeat);
      if (!std::holds_alternative<AdmissibleTree>(relabelled))
        throw InvariantViolation("replay: relabelled root is not admissible");
      work = std::get<AdmissibleTree>(std::move(relabelled));
    }
    formula = *arm == Arm::PrimeCase ? Arm::OneZero : Arm::EqualValuation;

    const auto gamma_path = work.path_from_root(nt.root().id);
    const std::set<Int> on_path(gamma_path.begin(), gamma_path.end());
    order.assign(gamma_path.begin() + 1, gamma_path.end());
    std::vector<Int> fixed_rest, free_rest;
    std::set<Int> fixed_ids;
    for (const auto& o : work.orbits()) {
      if (o.stab() == m) fixed_ids.insert(o.id);
      if (on_path.count(o.id)) continue;
      (o.stab() == m ? fixed_rest : free_rest).push_back(o.id);
    }
    sort_by_distance(work, fixed_rest, on_path);
    sort_by_distance(work, free_rest, fixed_ids);
    order.insert(order.end(), fixed_rest.begin(), fixed_rest.end());
    order.insert(order.end(), free_rest.begin(), free_rest.end());
  } else {
    std::vector<const OrbitNode*> rest;
    for (const auto& o : t.orbits())
      if (o.parent) rest.push_back(&o);
    std::sort(rest.begin(), rest.end(), [](const OrbitNode* x, const OrbitNode* y) {
      return x->level != y->level ? x->level < y->level : x->id < y->id;
    });
    for (const OrbitNode* o : rest) order.push_back(o->id);
  }

  ReplayResult out;
  out.attach_order = order;
  const OrbitNode& root = work.root();
  if (work.type() == TreeType::I) {
    const Weight& w = root.weight;
    out.records.push_back(make_record(0, root.id, VirtualRep::character(m, w.a) + VirtualRep::character(m, w.b),
                                      VirtualRep::character(m, w.a - w.b), m));
  }

  std::set<Int> present{root.id};
  Decomposition stage = apply_formula(stage_tree(work, present), formula);
  int step = 1;
  for (Int id : order) {
    const OrbitNode& u = work.node(id);
    const VirtualRep gamma = VirtualRep::character(u.stab(), u.weight.a - u.weight.b);
    for (const Summand& s : stage.summands) {
      const Int level = gcd(s.d, u.stab());
      out.records.push_back(make_record(step, id, s.rep, gamma, level));
    }
    present.insert(id);
    stage = apply_formula(stage_tree(work, present), formula);
    ++step;
  }
  stage.theorem = theorem_tag(*arm);
  out.final_stage = stage;
  return out;
}

std::vector<ObstructionRecord> replay_cp2_orders(const Weight& w, const std::array<int, 3>& order) {
  std::array<int, 3> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) throw DomainError("replay_cp2_orders: order must permute {0,1,2}");
  const std::array<Int, 3> exps{w.a, w.b, 0};
  const Int x = exps[order[0]], y = exps[order[1]], z = exps[order[2]];
  const Int m = w.m;
  const VirtualRep gamma = VirtualRep::character(m, y - x);
  const VirtualRep beta = VirtualRep::character(m, x - z) + VirtualRep::character(m, y - z);
  return {make_record(0, 0, beta, gamma, m)};
}

std::array<std::array<int, 3>, 6> all_orders() {
  std::array<std::array<int, 3>, 6> out;
  std::array<int, 3> perm{0, 1, 2};
  for (auto& slot : out) {
    slot = perm;
    std::next_permutation(perm.begin(), perm.end());
  }
  return out;
}

bool claim_card_eq(const std::vector<Weight>& path, int tau) {
  if (path.size() < 2) return true;
  const auto pp = prime_power(path.front().m);
  if (!pp) throw DomainError("claim_card_eq: order must be a prime power");
  const auto [p, n] = *pp;
  const std::size_t len = path.size() - 1;
  for (int s = 0; s < tau; ++s) {
    Int sums = 0, diffs = 0;
    for (std::size_t i = 1; i <= len; ++i)
      if (valuation_mod(path[i].a + path[i].b, p, n) == s) ++sums;
    for (std::size_t j = 0; j < len; ++j)
      if (valuation_mod(path[j].a - path[j].b, p, n) == s) ++diffs;
    if (sums != diffs) return false;
  }
  return true;
}

bool stab_bound_check(const AdmissibleTree& t) {
  const auto pp = prime_power(t.order());
  if (!pp) throw DomainError("stab_bound_check: order must be a prime power");
  const Int p = pp->first;
  const Counters c = counters(t, p);
  const Int bound = ipow(p, c.tau);
  const Weight& r = t.root().weight;
  if (c.tau == 0 || divides(bound, r.a) || divides(bound, r.b))
    throw DomainError("stab_bound_check: needs tau > 0 and p^tau dividing neither root entry");
  for (const auto& o : t.orbits())
    if (o.stab() != t.order() && o.stab() > bound) return false;
  return true;
}

}  // namespace equitree
