#include "equitree/tree.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <json.hpp>

#include "equitree/geom.hpp"

namespace equitree {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string to_string(TreeType t) { return t == TreeType::I ? "I" : "II"; }

TreeParseError::TreeParseError(const std::string& what, std::optional<std::size_t> offset)
    : std::invalid_argument(offset ? what + " at byte " + std::to_string(*offset) : what),
      offset_(offset) {}

namespace {

// Empty when raw describes a rooted tree with unique ids and known parents.
std::optional<std::string> structure_error(const RawTree& raw) {
  std::map<Int, const RawOrbit*> by_id;
  for (const auto& o : raw.orbits)
    if (!by_id.emplace(o.id, &o).second) return "duplicate orbit id " + std::to_string(o.id);
  std::optional<Int> root;
  for (const auto& o : raw.orbits) {
    if (!o.parent) {
      if (root) return std::string("not a tree: multiple roots");
      root = o.id;
    } else if (!by_id.count(*o.parent)) {
      return "orbit " + std::to_string(o.id) + ": unknown parent " + std::to_string(*o.parent);
    }
  }
  if (!root) return std::string("not a tree: no root");
  for (const auto& o : raw.orbits) {
    const RawOrbit* cur = &o;
    std::size_t steps = 0;
    while (cur->parent) {
      if (++steps > raw.orbits.size()) return "not a tree: cycle through orbit " + std::to_string(o.id);
      cur = by_id.at(*cur->parent);
    }
  }
  return std::nullopt;
}

Int get_int(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw TreeParseError(where + ": missing field \"" + key + "\"");
  if (!it->is_number_integer()) throw TreeParseError(where + ": field \"" + key + "\" must be an integer");
  return it->get<Int>();
}

std::optional<Int> get_opt_int(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw TreeParseError(where + ": field \"" + key + "\" must be an integer");
  return it->get<Int>();
}

}  // namespace

RawTree parse_tree(std::string_view source) {
  json doc;
  try {
    doc = json::parse(source.begin(), source.end());
  } catch (const json::parse_error& e) {
    throw TreeParseError("syntax error: " + std::string(e.what()), e.byte);
  }
  if (!doc.is_object()) throw TreeParseError("tree document must be a JSON object");

  RawTree raw;
  raw.order = get_int(doc, "order", "tree");
  auto type = doc.find("type");
  if (type == doc.end() || !type->is_string()) throw TreeParseError("tree: missing string field \"type\"");
  if (*type == "I")
    raw.type = TreeType::I;
  else if (*type == "II")
    raw.type = TreeType::II;
  else
    throw TreeParseError("tree: type must be \"I\" or \"II\"");

  auto orbits = doc.find("orbits");
  if (orbits == doc.end() || !orbits->is_array()) throw TreeParseError("tree: missing array field \"orbits\"");
  std::size_t i = 0;
  for (const auto& o : *orbits) {
    const std::string where = "orbits[" + std::to_string(i++) + "]";
    if (!o.is_object()) throw TreeParseError(where + ": orbit must be an object");
    RawOrbit r;
    r.id = get_int(o, "id", where);
    if (!o.contains("parent")) throw TreeParseError(where + ": missing field \"parent\"");
    r.parent = get_opt_int(o, "parent", where);
    r.a = get_int(o, "a", where);
    r.b = get_int(o, "b", where);
    r.stab = get_int(o, "stab", where);
    r.level = get_opt_int(o, "level", where);
    r.modulus = get_opt_int(o, "m", where);
    raw.orbits.push_back(r);
  }
  if (auto err = structure_error(raw)) throw TreeParseError(*err);
  return raw;
}

std::string tree_to_json(const RawTree& raw) {
  ordered_json doc;
  doc["order"] = raw.order;
  doc["type"] = to_string(raw.type);
  doc["orbits"] = ordered_json::array();
  for (const auto& o : raw.orbits) {
    ordered_json j;
    j["id"] = o.id;
    j["parent"] = o.parent ? ordered_json(*o.parent) : ordered_json(nullptr);
    j["a"] = o.a;
    j["b"] = o.b;
    j["stab"] = o.stab;
    if (o.level) j["level"] = *o.level;
    if (o.modulus) j["m"] = *o.modulus;
    doc["orbits"].push_back(j);
  }
  return doc.dump();
}

const OrbitNode& AdmissibleTree::node(Int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw DomainError("no orbit with id " + std::to_string(id));
  return orbits_[it->second];
}

std::vector<Int> AdmissibleTree::children(Int id) const {
  std::vector<Int> out;
  for (const auto& o : orbits_)
    if (o.parent == id) out.push_back(o.id);
  return out;
}

std::vector<Int> AdmissibleTree::path_from_root(Int id) const {
  std::vector<Int> path{id};
  while (node(path.back()).parent) path.push_back(*node(path.back()).parent);
  std::reverse(path.begin(), path.end());
  return path;
}

RawTree AdmissibleTree::to_raw() const {
  RawTree raw{order_, type_, {}};
  for (const auto& o : orbits_) raw.orbits.push_back({o.id, o.parent, o.weight.a, o.weight.b, o.stab(), {}, {}});
  return raw;
}

std::string Violation::to_json() const {
  ordered_json j;
  j["clause"] = clause;
  j["orbits"] = orbits;
  return j.dump();
}

struct TreeBuilder {
  static AdmissibleTree build(const RawTree& raw, const std::map<Int, Int>& levels) {
    AdmissibleTree t;
    t.order_ = raw.order;
    t.type_ = raw.type;
    for (const auto& o : raw.orbits)
      t.orbits_.push_back({o.id, o.parent, Weight(o.a, o.b, o.stab), levels.at(o.id)});
    std::sort(t.orbits_.begin(), t.orbits_.end(), [](auto& x, auto& y) { return x.id < y.id; });
    for (std::size_t i = 0; i < t.orbits_.size(); ++i) {
      t.index_[t.orbits_[i].id] = i;
      if (!t.orbits_[i].parent) t.root_index_ = i;
    }
    return t;
  }
};

ValidationResult validate(const RawTree& raw, Siblings sibling_rule) {
  std::vector<Violation> out;
  if (structure_error(raw)) {
    out.push_back({"tree", {}});
    return out;
  }
  const Int m = raw.order;
  if (m <= 0 || m % 2 == 0) {
    out.push_back({"order", {}});
    return out;
  }

  std::map<Int, const RawOrbit*> by_id;
  for (const auto& o : raw.orbits) by_id[o.id] = &o;
  std::set<Int> stab_ok;
  const RawOrbit* root = nullptr;
  for (const auto& o : raw.orbits) {
    if (!o.parent) root = &o;
    if (o.stab <= 0 || m % o.stab != 0) {
      out.push_back({"3", {o.id}});
      continue;
    }
    stab_ok.insert(o.id);
    if (o.modulus && *o.modulus != o.stab) out.push_back({"4", {o.id}});
    if (gcd3(mod(o.a, o.stab), mod(o.b, o.stab), o.stab) != 1) out.push_back({"3", {o.id}});
  }
  if (root->stab != m) out.push_back({"1", {root->id}});

  std::map<Int, Int> levels;
  for (const auto& o : raw.orbits) {
    Int level = 0;
    for (const RawOrbit* cur = &o; cur->parent; cur = by_id.at(*cur->parent)) ++level;
    levels[o.id] = level;
    if (o.level && *o.level != level) out.push_back({"2", {o.id}});
  }

  if (raw.type == TreeType::II)
    for (const auto& o : raw.orbits)
      if (o.parent && o.stab == m) out.push_back({"1", {o.id}});

  std::map<Int, std::vector<Int>> fixed_level_one;
  for (const auto& u : raw.orbits) {
    if (!u.parent) continue;
    const RawOrbit& v = *by_id.at(*u.parent);
    if (!stab_ok.count(u.id) || !stab_ok.count(v.id)) continue;
    if (v.stab % u.stab != 0) {
      out.push_back({"7", {u.id, v.id}});
      continue;
    }
    const Weight wu(u.a, u.b, u.stab), wv(v.a, v.b, v.stab);
    if (u.stab == v.stab) {
      if (!v.parent) {
        if (raw.type == TreeType::I) {
          fixed_level_one[v.id].push_back(u.id);
          if (!contains_class(root_child_weights(wv), wu)) out.push_back({"5", {u.id}});
        }
      } else if (!contains_class(chain_child_weights(wv), wu)) {
        out.push_back({"7a", {u.id}});
      }
    } else if (!compatible_subgroup(wv, wu, !v.parent && raw.type == TreeType::II ? Block::S4 : Block::CP2)) {
      out.push_back({"7b", {u.id}});
    }
  }
  for (auto& [id, kids] : fixed_level_one)
    if (kids.size() > 3) out.push_back({"5", kids});

  std::map<std::pair<Int, Weight>, std::vector<Int>> siblings;
  for (const auto& u : raw.orbits) {
    if (!u.parent || !stab_ok.count(u.id)) continue;
    siblings[{*u.parent, Weight(u.a, u.b, u.stab).canonical()}].push_back(u.id);
  }
  for (auto& [key, ids] : siblings) {
    if (ids.size() < 2 || sibling_rule == Siblings::MayRepeat) continue;
    std::sort(ids.begin(), ids.end());
    out.push_back({"6", ids});
  }

  if (!out.empty()) {
    std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
      return std::tie(x.clause, x.orbits) < std::tie(y.clause, y.orbits);
    });
    return out;
  }
  return TreeBuilder::build(raw, levels);
}

AdmissibleTree validate_or_throw(const RawTree& raw) {
  auto result = validate(raw);
  if (auto* t = std::get_if<AdmissibleTree>(&result)) return std::move(*t);
  std::string msg = "tree is not admissible:";
  for (const auto& v : std::get<std::vector<Violation>>(result)) msg += " " + v.to_json();
  throw DomainError(msg);
}

Strata strata(const AdmissibleTree& t) {
  Strata s;
  s.type = t.type();
  for (const auto& o : t.orbits()) {
    if (o.stab() == t.order())
      s.fixed.push_back(o.id);
    else
      s.by_stab[o.stab()].push_back(o.id);
    s.n_t += t.orbit_size(o.id);
  }
  if (t.type() == TreeType::II) s.n_t -= 1;
  return s;
}

AdmissibleTree reorient(const AdmissibleTree& t, Int target, Siblings siblings) {
  if (t.type() != TreeType::I) throw DomainError("reorient: tree must be of type I");
  if (!t.is_fixed(target)) throw DomainError("reorient: target orbit is not fixed");
  const auto path = t.path_from_root(target);
  const std::size_t len = path.size() - 1;
  if (len == 0) return t;

  RawTree base = t.to_raw();
  auto slot = [&base](Int id) -> RawOrbit& {
    return *std::find_if(base.orbits.begin(), base.orbits.end(), [id](auto& o) { return o.id == id; });
  };
  const Weight last = t.node(path[len]).weight;
  RawOrbit& new_root = slot(path[len]);
  new_root.parent.reset();
  new_root.a = last.a - last.b;
  new_root.b = -last.b;
  for (std::size_t j = 0; j < len; ++j) slot(path[j]).parent = path[j + 1];

  // Clauses compare weights up to sign, so the first assignment normally
  // succeeds; the search is kept bounded.
  const std::size_t searchable = std::min<std::size_t>(len, 12);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << searchable); ++mask) {
    RawTree cand = base;
    for (std::size_t j = 0; j < len; ++j) {
      const Weight next = t.node(path[j + 1]).weight;
      const Int sign = j < searchable && ((mask >> j) & 1) ? -1 : 1;
      auto& o = *std::find_if(cand.orbits.begin(), cand.orbits.end(), [&](auto& x) { return x.id == path[j]; });
      o.a = sign * next.a;
      o.b = -sign * next.b;
    }
    auto result = validate(cand, siblings);
    if (auto* out = std::get_if<AdmissibleTree>(&result)) return std::move(*out);
  }
  throw DomainError("reorient: no admissible sign assignment along the path");
}

AdmissibleTree normalize_root(const AdmissibleTree& t, Int p) {
  if (t.type() != TreeType::I) throw DomainError("normalize_root: tree must be of type I");
  if (!is_prime(p) || t.order() % p != 0) throw DomainError("normalize_root: p must be a prime divisor of the order");
  const Weight w = t.root().weight;
  Int a = w.a, b = w.b;
  if (divides(p, a) && !divides(p, b)) {
    a = w.a - w.b;
    b = -w.b;
  } else if (divides(p, b) && !divides(p, a)) {
    a = w.b - w.a;
    b = -w.a;
  } else {
    return t;
  }
  RawTree raw = t.to_raw();
  for (auto& o : raw.orbits)
    if (!o.parent) {
      o.a = a;
      o.b = b;
    }
  return validate_or_throw(raw);
}

namespace {

// Candidate child weights of `parent` (one representative per class).
std::vector<Weight> child_candidates(const OrbitNode& parent, bool is_root, TreeType type, Int m) {
  std::vector<Weight> out;
  const Weight& w = parent.weight;
  if (is_root) {
    if (type == TreeType::I)
      for (const Weight& c : root_child_weights(w)) out.push_back(c);
  } else {
    for (const Weight& c : chain_child_weights(w)) out.push_back(c);
  }
  const Int mv = w.m;
  std::vector<Int> xs{w.a, w.b};
  if (!is_root || type == TreeType::I) xs.push_back(mod(w.a - w.b, mv));
  const std::array<Int, 3> ys{mod(-w.a, mv), mod(-w.b, mv), mod(w.b - w.a, mv)};
  std::set<Int> seen;
  for (Int x : xs) {
    const Int mu = gcd(x, mv);
    if (mu == mv || !seen.insert(mu).second) continue;
    if (mu == 1) {
      out.emplace_back(0, 0, 1);
      continue;
    }
    for (Int y : ys)
      if (y % mu != 0) out.emplace_back(y, 0, mu);
  }
  (void)m;
  // dedupe by class
  std::vector<Weight> uniq;
  for (const Weight& c : out)
    if (!contains_class(uniq, c)) uniq.push_back(c);
  return uniq;
}

}  // namespace

AdmissibleTree generate_random(Int m, int max_level, int max_orbits, std::uint64_t seed,
                               TreeType type) {
  if (m <= 0 || m % 2 == 0) throw DomainError("generate_random: order must be odd");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };

  Weight root_w;
  do {
    root_w = Weight(uniform(0, m - 1), uniform(0, m - 1), m);
  } while (!root_w.primitive());

  std::vector<OrbitNode> nodes{{0, std::nullopt, root_w, 0}};
  const int budget = std::max(1, max_orbits);
  for (int attempt = 0; static_cast<int>(nodes.size()) < budget && attempt < 20 * budget; ++attempt) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].level < max_level) open.push_back(i);
    if (open.empty()) break;
    const OrbitNode parent = nodes[open[uniform(0, static_cast<Int>(open.size()) - 1)]];
    const bool is_root = !parent.parent;

    std::vector<Weight> sibling_classes;
    std::size_t fixed_siblings = 0;
    for (const auto& n : nodes) {
      if (n.parent != parent.id) continue;
      sibling_classes.push_back(n.weight);
      if (n.weight.m == m) ++fixed_siblings;
    }
    std::vector<Weight> cands;
    for (const Weight& c : child_candidates(parent, is_root, type, m)) {
      if (contains_class(sibling_classes, c)) continue;
      if (is_root && c.m == m && fixed_siblings >= 3) continue;
      cands.push_back(c);
    }
    if (cands.empty()) continue;
    Weight pick = cands[uniform(0, static_cast<Int>(cands.size()) - 1)];
    if (uniform(0, 1)) pick = pick.negated();
    if (uniform(0, 1)) pick = pick.swapped();
    nodes.push_back({static_cast<Int>(nodes.size()), parent.id, pick, parent.level + 1});
  }

  RawTree raw{m, type, {}};
  for (const auto& n : nodes) raw.orbits.push_back({n.id, n.parent, n.weight.a, n.weight.b, n.weight.m, {}, {}});
  return validate_or_throw(raw);
}

AdmissibleTree generate_random(Int m, int max_level, int max_orbits, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const TreeType type = std::uniform_int_distribution<int>(0, 4)(rng) == 0 ? TreeType::II : TreeType::I;
  return generate_random(m, max_level, max_orbits, seed, type);
}

}  // namespace equitree
