#include "equitree/decomp.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace equitree {

using ordered_json = nlohmann::ordered_json;

std::string Summand::to_string() const {
  switch (kind) {
    case Kind::Unit:
      return "1";
    case Kind::Sphere:
      return "S(" + rep.to_string() + ")";
    case Kind::Induced:
      return "Ind(" + std::to_string(d) + ";" + rep.to_string() + ")";
  }
  return "?";
}

bool summand_less(const Summand& x, const Summand& y) {
  if (x.kind != y.kind) return x.kind < y.kind;
  if (x.kind == Summand::Kind::Sphere && x.rep.dim() != y.rep.dim()) return x.rep.dim() > y.rep.dim();
  if (x.kind == Summand::Kind::Induced && x.d != y.d) return x.d < y.d;
  return x.to_string() < y.to_string();
}

void Decomposition::add(const Summand& s, Int copies) {
  if (copies < 0) throw InvariantViolation("negative summand multiplicity for " + s.to_string());
  for (Int i = 0; i < copies; ++i) {
    auto pos = std::upper_bound(summands.begin(), summands.end(), s, summand_less);
    summands.insert(pos, s);
  }
}

std::string Decomposition::to_json() const {
  ordered_json j;
  j["theorem"] = theorem;
  j["summands"] = ordered_json::array();
  for (const auto& s : summands) j["summands"].push_back(s.to_string());
  return j.dump();
}

std::string NoTheoremApplies::to_json() const {
  ordered_json j;
  j["error"] = "no_theorem_applies";
  j["reason"] = reason;
  j["orbits"] = orbits;
  return j.dump();
}

namespace {

VirtualRep top_grading(const Weight& w) {
  return VirtualRep::character(w.m, w.a) + VirtualRep::character(w.m, w.b);
}

std::vector<const OrbitNode*> fixed_orbits(const AdmissibleTree& t) {
  std::vector<const OrbitNode*> out;
  for (const auto& o : t.orbits())
    if (o.stab() == t.order()) out.push_back(&o);
  return out;
}

Decomposition start(const AdmissibleTree& t, Arm arm, const VirtualRep& top) {
  Decomposition d;
  d.order = t.order();
  d.theorem = theorem_tag(arm);
  d.add(Summand::unit(t.order()));
  d.add(Summand::sphere(top));
  return d;
}

void add_induced(Decomposition& d, const AdmissibleTree& t) {
  for (const auto& o : t.orbits())
    if (o.stab() != t.order()) d.add(orbit_induced(o));
}

std::optional<std::pair<Int, int>> order_prime_power(const AdmissibleTree& t) { return prime_power(t.order()); }

}  // namespace

std::string theorem_tag(Arm arm) {
  switch (arm) {
    case Arm::TypeII:
      return "4.3-II";
    case Arm::OneZero:
      return "4.5";
    case Arm::Coprime:
      return "4.3-I";
    case Arm::PrimeCase:
      return "5.2";
    case Arm::EqualValuation:
      return "5.3-eq";
    case Arm::PrimePower:
      return "5.4";
  }
  return "?";
}

Summand orbit_induced(const OrbitNode& o) {
  return Summand::induced(VirtualRep::character(o.stab(), o.weight.a - o.weight.b));
}

Counters counters(const AdmissibleTree& t, Int p) {
  const auto pp = order_prime_power(t);
  if (!pp || pp->first != p) throw DomainError("counters: order must be a power of p");
  Counters c;
  c.p = p;
  c.n = pp->second;
  for (const OrbitNode* v : fixed_orbits(t)) {
    const int i = valuation_mod(v->weight.a - v->weight.b, p, c.n);
    c.Z[i] += 1;
    c.tau = std::max(c.tau, i);
    if (c.n == 1) (i == 0 ? c.phi : c.psi) += 1;
  }
  c.W = c.Z;
  if (c.tau > 0) {
    c.W[0] += 1;
    c.W[c.tau] -= 1;
  }
  return c;
}

Decomposition apply_formula(const AdmissibleTree& t, Arm arm) {
  const Int m = t.order();
  const Weight& r = t.root().weight;
  Decomposition d = start(t, arm, top_grading(r));
  switch (arm) {
    case Arm::TypeII:
      break;
    case Arm::OneZero:
      for (const auto& o : t.orbits())
        if (o.stab() == m) d.add(Summand::sphere(VirtualRep::character(m, o.weight.a - o.weight.b)));
      break;
    case Arm::Coprime:
      d.add(Summand::sphere(VirtualRep::character(m, 1)), static_cast<Int>(fixed_orbits(t).size()));
      break;
    case Arm::EqualValuation: {
      const auto pp = order_prime_power(t);
      if (!pp) throw DomainError("apply_formula: order must be a prime power");
      const Counters c = counters(t, pp->first);
      for (auto [i, count] : c.Z) d.add(Summand::sphere(VirtualRep::character(m, ipow(pp->first, i))), count);
      break;
    }
    default:
      throw DomainError("apply_formula: formula " + theorem_tag(arm) + " needs its hypotheses");
  }
  add_induced(d, t);
  return d;
}

std::optional<Decomposition> try_arm(const AdmissibleTree& t, Arm arm) {
  const Int m = t.order();
  const Weight& r = t.root().weight;
  std::ostringstream trace;
  trace << "order " << m << ", type " << to_string(t.type()) << ", root " << r.to_string();

  switch (arm) {
    case Arm::TypeII: {
      if (t.type() != TreeType::II) return std::nullopt;
      Decomposition d = apply_formula(t, arm);
      d.trace = trace.str();
      return d;
    }
    case Arm::OneZero: {
      if (t.type() != TreeType::I || (r.a != 0 && r.b != 0)) return std::nullopt;
      Decomposition d = apply_formula(t, arm);
      trace << "; root weight has a zero entry";
      d.trace = trace.str();
      return d;
    }
    case Arm::Coprime: {
      if (t.type() != TreeType::I) return std::nullopt;
      const auto fixed = fixed_orbits(t);
      for (const OrbitNode* v : fixed)
        if (gcd(v->weight.a - v->weight.b, m) != 1) return std::nullopt;
      Decomposition d = apply_formula(t, arm);
      trace << "; every fixed difference is a unit mod " << m;
      d.trace = trace.str();
      return d;
    }
    case Arm::PrimeCase: {
      if (t.type() != TreeType::I || !is_prime(m)) return std::nullopt;
      const AdmissibleTree nt = normalize_root(t, m);
      const Weight& nr = nt.root().weight;
      if (divides(m, nr.a) || divides(m, nr.b)) return std::nullopt;
      const Counters c = counters(nt, m);
      if (c.psi == 0) return std::nullopt;
      Decomposition d = start(t, arm, VirtualRep::character(m, 1) + 2);
      d.add(Summand::sphere(VirtualRep::character(m, 1)), c.phi + 1);
      d.add(Summand::sphere(VirtualRep(m, 2)), c.psi - 1);
      add_induced(d, t);
      trace << "; phi=" << c.phi << " psi=" << c.psi;
      d.trace = trace.str();
      return d;
    }
    case Arm::EqualValuation: {
      const auto pp = order_prime_power(t);
      if (t.type() != TreeType::I || !pp) return std::nullopt;
      const auto [p, n] = *pp;
      const Counters c = counters(t, p);
      const Int pt = ipow(p, c.tau);
      if (c.tau == 0 || !(divides(pt, r.a) || divides(pt, r.b))) return std::nullopt;
      Decomposition d = apply_formula(t, arm);
      trace << "; tau=" << c.tau << " divides a root entry";
      d.trace = trace.str();
      return d;
    }
    case Arm::PrimePower: {
      const auto pp = order_prime_power(t);
      if (t.type() != TreeType::I || !pp) return std::nullopt;
      const auto [p, n] = *pp;
      const AdmissibleTree nt = normalize_root(t, p);
      const Weight& nr = nt.root().weight;
      if (divides(p, nr.a) || divides(p, nr.b)) return std::nullopt;
      const Counters c = counters(nt, p);
      if (c.tau == 0) return std::nullopt;
      Decomposition d =
          start(t, arm, VirtualRep::character(m, 1) + VirtualRep::character(m, ipow(p, c.tau)));
      for (auto [i, count] : c.W) d.add(Summand::sphere(VirtualRep::character(m, ipow(p, i))), count);
      add_induced(d, t);
      trace << "; normalized root " << nr.to_string() << ", tau=" << c.tau;
      d.trace = trace.str();
      return d;
    }
  }
  return std::nullopt;
}

std::optional<Arm> dispatch_arm(const AdmissibleTree& t) {
  for (Arm arm : {Arm::TypeII, Arm::OneZero, Arm::Coprime, Arm::PrimeCase, Arm::EqualValuation,
                  Arm::PrimePower})
    if (try_arm(t, arm)) return arm;
  return std::nullopt;
}

DecomposeResult decompose(const AdmissibleTree& t) {
  if (auto d = try_arm(t, Arm::TypeII)) return *d;
  if (auto d = try_arm(t, Arm::OneZero)) {
    if (auto other = try_arm(t, Arm::Coprime); other && !canonical_eq(*d, *other))
      throw InvariantViolation("overlapping formulas disagree: " + d->to_json() + " vs " + other->to_json());
    return *d;
  }
  for (Arm arm : {Arm::Coprime, Arm::PrimeCase, Arm::EqualValuation, Arm::PrimePower})
    if (auto d = try_arm(t, arm)) return *d;

  NoTheoremApplies err;
  err.reason = "order " + std::to_string(t.order()) +
               " is not a prime power, no root entry vanishes, and some fixed difference is not a unit";
  for (const OrbitNode* v : fixed_orbits(t))
    if (gcd(v->weight.a - v->weight.b, t.order()) != 1) err.orbits.push_back(v->id);
  return err;
}

std::tuple<Int, Int, Int> betti_numbers(const Decomposition& d) {
  Int b0 = 0, b2 = 0, b4 = 0;
  for (const auto& s : d.summands) {
    switch (s.kind) {
      case Summand::Kind::Unit:
        ++b0;
        break;
      case Summand::Kind::Sphere:
        if (s.rep.dim() == 2)
          ++b2;
        else if (s.rep.dim() == 4)
          ++b4;
        else
          throw InvariantViolation("sphere summand of unexpected dimension: " + s.to_string());
        break;
      case Summand::Kind::Induced:
        if (s.rep.dim() != 2) throw InvariantViolation("induced summand of unexpected dimension: " + s.to_string());
        b2 += d.order / s.d;
        break;
    }
  }
  return {b0, b2, b4};
}

std::tuple<Int, Int, Int> underlying_betti(const Decomposition& d, const AdmissibleTree& t) {
  auto b = betti_numbers(d);
  const Int n = strata(t).n_t;
  if (b != std::tuple<Int, Int, Int>{1, n, 1})
    throw InvariantViolation("Betti numbers (" + std::to_string(std::get<0>(b)) + "," +
                             std::to_string(std::get<1>(b)) + "," + std::to_string(std::get<2>(b)) +
                             ") differ from (1," + std::to_string(n) + ",1)");
  return b;
}

bool canonical_eq(const Decomposition& x, const Decomposition& y) {
  return x.order == y.order && x.summands == y.summands;
}

}  // namespace equitree
