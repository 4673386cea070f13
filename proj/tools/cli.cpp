#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "equitree/decomp.hpp"
#include "equitree/geom.hpp"
#include "equitree/mackey.hpp"
#include "equitree/obstruct.hpp"
#include "equitree/sweep.hpp"
#include "equitree/tree.hpp"
#include "equitree/vanish.hpp"

namespace equitree::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Parses and validates; prints the problem and returns nullopt on failure.
std::optional<AdmissibleTree> load_tree(const std::string& path, bool json, std::ostream& out, std::ostream& err) {
  RawTree raw;
  try {
    raw = parse_tree(read_file(path));
  } catch (const TreeParseError& e) {
    if (json) {
      ordered_json j;
      j["valid"] = false;
      j["error"] = e.what();
      out << j.dump() << "\n";
    }
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
  auto result = validate(raw);
  if (auto* t = std::get_if<AdmissibleTree>(&result)) return std::move(*t);
  const auto& violations = std::get<std::vector<Violation>>(result);
  if (json) {
    ordered_json j;
    j["valid"] = false;
    j["violations"] = ordered_json::array();
    for (const auto& v : violations) j["violations"].push_back(ordered_json::parse(v.to_json()));
    out << j.dump() << "\n";
  } else {
    for (const auto& v : violations) {
      out << "clause " << v.clause << ":";
      for (Int id : v.orbits) out << " " << id;
      out << "\n";
    }
  }
  return std::nullopt;
}

int cmd_validate(const std::string& path, bool json, std::ostream& out, std::ostream& err) {
  if (!load_tree(path, json, out, err)) return kInvalid;
  out << (json ? "{\"valid\":true}" : "OK") << "\n";
  return kOk;
}

int cmd_decompose(const std::string& path, bool json, std::ostream& out, std::ostream& err) {
  auto t = load_tree(path, json, out, err);
  if (!t) return kInvalid;
  const auto result = decompose(*t);
  if (const auto* none = std::get_if<NoTheoremApplies>(&result)) {
    out << (json ? none->to_json() : "no theorem applies: " + none->reason) << "\n";
    return kNoTheorem;
  }
  const auto& d = std::get<Decomposition>(result);
  underlying_betti(d, *t);
  if (json) {
    out << d.to_json() << "\n";
  } else {
    out << "theorem " << d.theorem << ":";
    for (const auto& s : d.summands) out << " " << s.to_string();
    out << "\n";
  }
  return kOk;
}

int cmd_replay(const std::string& path, bool json, bool cells, std::ostream& out, std::ostream& err) {
  auto t = load_tree(path, json, out, err);
  if (!t) return kInvalid;
  if (!dispatch_arm(*t)) {
    const auto none = std::get<NoTheoremApplies>(decompose(*t));
    out << (json ? none.to_json() : "no theorem applies: " + none.reason) << "\n";
    return kNoTheorem;
  }
  if (cells)
    for (const auto& s : filtration_steps(*t)) out << s.to_json() << "\n";
  const ReplayResult r = replay(*t);
  for (const auto& rec : r.records) {
    if (json)
      out << rec.to_json() << "\n";
    else
      out << "step " << rec.step << " orbit " << rec.orbit << " level " << rec.level << ": " << rec.alpha.to_string()
          << " -> " << rec.verdict.to_string() << "\n";
  }
  return r.all_vanish() ? kOk : kInvariant;
}

int cmd_verify(Int order, Int count, std::uint64_t seed, int max_level, int max_orbits, bool json, std::ostream& out) {
  if (order <= 0 || order % 2 == 0) throw UsageError("--order must be a positive odd integer");
  if (count <= 0) throw UsageError("--count must be positive");
  if (const char* env = std::getenv("EQUITREE_SEED"); env && *env) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("EQUITREE_SEED must be a nonnegative integer");
    }
  }
  SweepConfig cfg;
  cfg.orders = {order};
  cfg.count = count;
  cfg.seed = seed;
  cfg.max_level = max_level;
  cfg.max_orbits = max_orbits;
  const SweepReport report = sweep_parallel(cfg);
  if (json) {
    auto j = ordered_json::parse(report.to_json());
    ordered_json head;
    head["order"] = order;
    head["count"] = count;
    head["seed"] = seed;
    head.update(j);
    out << head.dump() << "\n";
  } else {
    const auto j = ordered_json::parse(report.to_json());
    for (const auto& [k, v] : j.items())
      if (k != "failures") out << k << ": " << v.dump() << "\n";
    for (const auto& f : j["failures"]) out << "failure: " << f.dump() << "\n";
  }
  return report.all_ok() ? kOk : kInvariant;
}

int cmd_table(Int p, bool json, std::ostream& out) {
  if (p < 3 || !is_prime(p)) throw UsageError("--prime must be an odd prime");
  const TableReport report = verify_table(p);
  if (json) {
    out << report.to_json() << "\n";
  } else {
    out << "prime " << p << ": " << report.checks << " checks, " << report.mismatches.size() << " mismatches\n";
    for (const auto& mm : report.mismatches)
      out << "  S^(" << mm.sphere << ") degree " << mm.degree << " level " << mm.level << ": expected "
          << mm.expected.to_string() << ", got " << mm.actual.to_string() << "\n";
  }
  return report.passed() ? kOk : kInvariant;
}

int cmd_criterion(const std::string& expr, Int order, bool json, std::ostream& out, std::ostream& err) {
  if (order <= 0 || order % 2 == 0) throw UsageError("--order must be a positive odd integer");
  VirtualRep alpha;
  try {
    alpha = parse_rep(expr, order);
  } catch (const RepParseError& e) {
    err << "error: " << e.what() << "\n";
    if (json) {
      ordered_json j;
      j["error"] = e.what();
      j["offset"] = e.offset();
      out << j.dump() << "\n";
    }
    return kInvalid;
  }
  const Verdict crit = criterion_vanishes(alpha);
  std::optional<std::string> table;
  if (is_prime(order)) {
    const MackeyName g = pi_cp(alpha);
    table = g.tag == MackeyName::Tag::Zero ? Verdict::vanishes().to_string() : Verdict::nonzero(g).to_string();
  }
  if (json) {
    ordered_json j;
    j["criterion"] = crit.to_string();
    j["table"] = table ? ordered_json(*table) : ordered_json(nullptr);
    out << j.dump() << "\n";
  } else {
    out << crit.to_string() << "\n";
    if (table) out << *table << "\n";
  }
  return kOk;
}

bool want_json(const std::string& format) { return format == "json"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Admissible weighted trees: validation, homology decompositions, obstruction replay", "equitree"};
  app.require_subcommand(1);

  std::string path, expr, format = "json", criterion_format = "text";
  Int order = 0, count = 100, prime = 0;
  std::uint64_t seed = 1;
  int max_level = 3, max_orbits = 6;
  bool cells = false;
  const std::vector<std::string> formats{"json", "text"};

  auto* validate_cmd = app.add_subcommand("validate", "Check a tree file against the admissibility clauses");
  validate_cmd->add_option("tree", path, "Tree JSON file")->required();
  validate_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* decompose_cmd = app.add_subcommand("decompose", "Wedge decomposition of HZ smash X(T)");
  decompose_cmd->add_option("tree", path, "Tree JSON file")->required();
  decompose_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* replay_cmd = app.add_subcommand("replay", "Re-check every connecting map of the construction");
  replay_cmd->add_option("tree", path, "Tree JSON file")->required();
  replay_cmd->add_option("--format", format)->check(CLI::IsMember(formats));
  replay_cmd->add_flag("--cells", cells, "Also print the cell filtration");

  auto* verify_cmd = app.add_subcommand("verify", "Generate random trees and run every consistency check");
  verify_cmd->add_option("--order", order, "Group order m (odd)")->required();
  verify_cmd->add_option("--count", count, "Number of trees");
  verify_cmd->add_option("--seed", seed, "Random seed (EQUITREE_SEED overrides)");
  verify_cmd->add_option("--max-level", max_level);
  verify_cmd->add_option("--max-orbits", max_orbits);
  verify_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* table_cmd = app.add_subcommand("table", "Compare the chain-level oracle with the C_p homotopy table");
  table_cmd->add_option("--prime", prime, "Odd prime p")->required();
  table_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* criterion_cmd = app.add_subcommand("criterion", "Vanishing verdict for a virtual representation");
  criterion_cmd->add_option("expr", expr, "Representation, e.g. \"2*l^1 - 3\"")->required();
  criterion_cmd->add_option("--order", order, "Group order m (odd)")->required();
  criterion_cmd->add_option("--format", criterion_format)->check(CLI::IsMember(formats));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(path, want_json(format), out, err);
    if (decompose_cmd->parsed()) return cmd_decompose(path, want_json(format), out, err);
    if (replay_cmd->parsed()) return cmd_replay(path, want_json(format), cells, out, err);
    if (verify_cmd->parsed())
      return cmd_verify(order, count, seed, max_level, max_orbits, want_json(format), out);
    if (table_cmd->parsed()) return cmd_table(prime, want_json(format), out);
    if (criterion_cmd->parsed()) return cmd_criterion(expr, order, want_json(criterion_format), out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  err << app.help();
  return kUsage;
}

}  // namespace equitree::cli
