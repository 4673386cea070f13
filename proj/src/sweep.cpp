#include "equitree/sweep.hpp"

#include <json.hpp>

#include "equitree/decomp.hpp"
#include "equitree/mackey.hpp"
#include "equitree/obstruct.hpp"

namespace equitree {

std::uint64_t tree_seed(std::uint64_t seed, Int index) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void fail(TreeCheck& c, bool TreeCheck::*flag, const std::string& why) {
  c.*flag = false;
  if (c.failure.empty()) c.failure = why;
}

std::optional<Int> coherence_target(const AdmissibleTree& t, Int p) {
  const OrbitNode* best = nullptr;
  for (const auto& o : t.orbits()) {
    if (o.stab() != t.order() || !o.parent || !divides(p, o.weight.a - o.weight.b)) continue;
    if (!best || o.level < best->level) best = &o;
  }
  if (!best) return std::nullopt;
  return best->id;
}

void check_coherence(TreeCheck& c, const AdmissibleTree& t, const Decomposition& d, bool homology) {
  const auto pp = prime_power(t.order());
  if (t.type() != TreeType::I || !pp) return;
  const auto target = coherence_target(t, pp->first);
  if (!target) return;
  std::optional<AdmissibleTree> r;
  try {
    r = reorient(t, *target);
  } catch (const DomainError&) {
    return;  // reversed path collides with an off-path child
  }
  const auto other = decompose(*r);
  const auto* d2 = std::get_if<Decomposition>(&other);
  if (!d2) return;
  c.coherence_checked = true;
  if (!canonical_eq(d, *d2)) {
    fail(c, &TreeCheck::coherence_ok, "reoriented decomposition differs: " + d.to_json() + " vs " + d2->to_json());
    return;
  }
  if (!homology) return;
  for (Int level : divisors(t.order()))
    if (decomposition_homology(d, level) != decomposition_homology(*d2, level)) {
      fail(c, &TreeCheck::coherence_ok, "reoriented homology differs at level " + std::to_string(level));
      return;
    }
}

TreeCheck check_tree_impl(const AdmissibleTree& t, bool homology) {
  TreeCheck c;
  c.order = t.order();
  c.tree = tree_to_json(t.to_raw());
  try {
    const auto result = decompose(t);
    const auto* d = std::get_if<Decomposition>(&result);
    if (!d) return c;
    c.theorem = d->theorem;
    try {
      underlying_betti(*d, t);
    } catch (const InvariantViolation& e) {
      fail(c, &TreeCheck::betti_ok, e.what());
    }

    const ReplayResult rep = replay(t);
    for (const auto& rec : rep.records)
      if (!rec.verdict.is_vanishing()) {
        fail(c, &TreeCheck::replay_ok, "obstruction does not vanish: " + rec.to_json());
        break;
      }
    if (!canonical_eq(rep.final_stage, *d))
      fail(c, &TreeCheck::replay_final_ok, "replay ends at " + rep.final_stage.to_json());

    check_coherence(c, t, *d, homology);

    auto one_zero = try_arm(t, Arm::OneZero);
    auto coprime = try_arm(t, Arm::Coprime);
    if (one_zero && coprime) {
      c.overlap_checked = true;
      if (!canonical_eq(*one_zero, *coprime))
        fail(c, &TreeCheck::overlap_ok, "overlapping formulas differ");
    }
  } catch (const InvariantViolation& e) {
    fail(c, &TreeCheck::betti_ok, e.what());
  }

  if (const auto pp = prime_power(t.order()); pp && t.type() == TreeType::I) {
    const Counters cnt = counters(t, pp->first);
    const Int bound = ipow(pp->first, cnt.tau);
    const Weight& r = t.root().weight;
    if (cnt.tau > 0 && !divides(bound, r.a) && !divides(bound, r.b)) {
      c.lemma_checked = true;
      if (!stab_bound_check(t)) fail(c, &TreeCheck::lemma_ok, "non-fixed stabilizer exceeds p^tau");
    }
  }
  return c;
}

TreeCheck check_one(const SweepConfig& cfg, Int i) {
  const Int m = cfg.orders[static_cast<std::size_t>(i) % cfg.orders.size()];
  const std::uint64_t s = tree_seed(cfg.seed, i);
  const AdmissibleTree t = cfg.type ? generate_random(m, cfg.max_level, cfg.max_orbits, s, *cfg.type)
                                    : generate_random(m, cfg.max_level, cfg.max_orbits, s);
  TreeCheck c = check_tree_impl(t, cfg.homology);
  c.index = i;
  c.seed = s;
  return c;
}

}  // namespace

TreeCheck check_tree(const AdmissibleTree& t) { return check_tree_impl(t, true); }

Int SweepReport::count_if(bool TreeCheck::*flag, bool value) const {
  Int n = 0;
  for (const auto& t : trees)
    if (t.*flag == value) ++n;
  return n;
}

bool SweepReport::all_ok() const {
  for (const auto& t : trees)
    if (!t.ok()) return false;
  return true;
}

std::string SweepReport::to_json() const {
  nlohmann::ordered_json j;
  Int dispatched = 0;
  for (const auto& t : trees)
    if (!t.theorem.empty()) ++dispatched;
  j["trees"] = trees.size();
  j["dispatched"] = dispatched;
  j["no_theorem"] = static_cast<Int>(trees.size()) - dispatched;
  j["betti_failures"] = count_if(&TreeCheck::betti_ok, false);
  j["replay_failures"] = count_if(&TreeCheck::replay_ok, false) + count_if(&TreeCheck::replay_final_ok, false);
  j["coherence_checked"] = count_if(&TreeCheck::coherence_checked);
  j["coherence_failures"] = count_if(&TreeCheck::coherence_ok, false);
  j["overlap_checked"] = count_if(&TreeCheck::overlap_checked);
  j["overlap_failures"] = count_if(&TreeCheck::overlap_ok, false);
  j["lemma_checked"] = count_if(&TreeCheck::lemma_checked);
  j["lemma_failures"] = count_if(&TreeCheck::lemma_ok, false);
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& t : trees) {
    if (t.ok()) continue;
    nlohmann::ordered_json f;
    f["index"] = t.index;
    f["seed"] = t.seed;
    f["tree"] = nlohmann::ordered_json::parse(t.tree);
    f["reason"] = t.failure;
    j["failures"].push_back(f);
  }
  return j.dump();
}

SweepReport sweep_serial(const SweepConfig& config) {
  if (config.orders.empty()) throw DomainError("sweep: no orders given");
  SweepReport r;
  r.trees.reserve(static_cast<std::size_t>(config.count));
  for (Int i = 0; i < config.count; ++i) r.trees.push_back(check_one(config, i));
  return r;
}

SweepReport sweep_parallel(const SweepConfig& config) {
  if (config.orders.empty()) throw DomainError("sweep: no orders given");
  SweepReport r;
  r.trees.resize(static_cast<std::size_t>(config.count));
  std::vector<std::string> errors(static_cast<std::size_t>(config.count));
#pragma omp parallel for schedule(dynamic)
  for (Int i = 0; i < config.count; ++i) {
    try {
      r.trees[static_cast<std::size_t>(i)] = check_one(config, i);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw InvariantViolation("sweep worker failed: " + e);
  return r;
}

}  // namespace equitree
