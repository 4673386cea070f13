#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace cli = equitree::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(EQUITREE_TEST_DATA) + "/" + rel; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) v.push_back(l);
  return v;
}

// scoped setenv
struct Env {
  std::string name;
  Env(const char* n, const char* v) : name(n) { setenv(n, v, 1); }
  ~Env() { unsetenv(name.c_str()); }
};

}  // namespace

TEST_CASE("validate: corpus verdicts match the manifest") {
  std::ifstream f(data("expected.json"));
  REQUIRE(f);
  json manifest = json::parse(f);
  int valid = 0, invalid = 0;
  for (auto& [file, want] : manifest.items()) {
    CAPTURE(file);
    auto r = run({"validate", data(file)});
    json got = json::parse(r.out);
    if (want["valid"].get<bool>()) {
      ++valid;
      CHECK(r.code == cli::kOk);
      CHECK(got == json{{"valid", true}});
    } else {
      ++invalid;
      CHECK(r.code == cli::kInvalid);
      CHECK(got["valid"] == false);
      if (want.contains("parse_error")) {
        CHECK(got.contains("error"));
        CHECK_FALSE(got.contains("violations"));
      } else {
        CHECK(got["violations"] == want["violations"]);
      }
    }
  }
  CHECK(valid >= 20);
  CHECK(invalid >= 20);
}

TEST_CASE("validate: text format") {
  auto ok = run({"validate", data("valid/c3_two_vertex.json"), "--format", "text"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "OK\n");
  auto bad = run({"validate", data("invalid/twin_fixed_children.json"), "--format", "text"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("6") != std::string::npos);
}

TEST_CASE("decompose: documented outputs and exit codes") {
  auto c3 = run({"decompose", data("valid/c3_two_vertex.json")});
  CHECK(c3.code == 0);
  CHECK(c3.out == R"j({"theorem":"5.2","summands":["1","S(l^1+2)","S(l^1)","S(l^1)"]})j" "\n");

  auto m15 = run({"decompose", data("valid/c15_induced_orbit.json")});
  CHECK(m15.code == 0);
  CHECK(json::parse(m15.out)["summands"] == json{"1", "S(l^1+l^5)", "S(l^1)", "Ind(5;l^1)"});

  auto none = run({"decompose", data("valid/c15_no_formula.json")});
  CHECK(none.code == cli::kNoTheorem);
  auto j = json::parse(none.out);
  CHECK(j["error"] == "no_theorem_applies");
  CHECK(j.contains("reason"));

  auto bad = run({"decompose", data("invalid/chain_child_not_allowed.json")});
  CHECK(bad.code == cli::kInvalid);

  // every corpus theorem tag
  json manifest = json::parse(std::ifstream(data("expected.json")));
  for (auto& [file, want] : manifest.items()) {
    if (!want["valid"].get<bool>()) continue;
    CAPTURE(file);
    auto r = run({"decompose", data(file)});
    if (want["theorem"].is_null()) {
      CHECK(r.code == cli::kNoTheorem);
    } else {
      REQUIRE(r.code == cli::kOk);
      CHECK(json::parse(r.out)["theorem"] == want["theorem"]);
    }
  }
}

TEST_CASE("replay: one record per line, all vanish") {
  json manifest = json::parse(std::ifstream(data("expected.json")));
  for (auto& [file, want] : manifest.items()) {
    if (!want["valid"].get<bool>()) continue;
    CAPTURE(file);
    auto r = run({"replay", data(file)});
    if (want["theorem"].is_null()) {
      CHECK(r.code == cli::kNoTheorem);
      continue;
    }
    CHECK(r.code == cli::kOk);
    auto ls = lines(r.out);
    // a lone type II root has nothing to attach
    if (file != "valid/s4_single_c15.json") CHECK_FALSE(ls.empty());
    for (auto& l : ls) {
      auto j = json::parse(l);
      CHECK(j["verdict"] == "vanishes");
      for (const char* k : {"step", "beta", "gamma", "level", "alpha", "orbit"}) CHECK(j.contains(k));
    }
  }
  auto first = lines(run({"replay", data("valid/c3_two_vertex.json")}).out).at(0);
  CHECK(first ==
        R"j({"step":0,"beta":"l^2+2","gamma":"l^1","level":3,"alpha":"-l^1+l^2+1","verdict":"vanishes","orbit":1})j");
}

TEST_CASE("replay --cells adds filtration records") {
  auto plain = lines(run({"replay", data("valid/c15_induced_orbit.json")}).out);
  auto r = run({"replay", data("valid/c15_induced_orbit.json"), "--cells"});
  CHECK(r.code == 0);
  auto ls = lines(r.out);
  CHECK(ls.size() > plain.size());
  int kinds = 0;
  for (auto& l : ls) {
    auto j = json::parse(l);
    if (j.contains("kind")) {
      ++kinds;
      CHECK(j.contains("stab"));
      CHECK(j.contains("grading"));
    }
  }
  CHECK(kinds > 0);
  CHECK(r.out.find(R"j({"kind":"orbit","stab":5,)j") != std::string::npos);
}

TEST_CASE("verify: summary, determinism and seed override") {
  auto a = run({"verify", "--order", "9", "--count", "40", "--seed", "11"});
  auto b = run({"verify", "--order", "9", "--count", "40", "--seed", "11"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = json::parse(a.out);
  CHECK(j["trees"] == 40);
  CHECK(j["seed"] == 11);
  CHECK(j["failures"].empty());

  auto other = run({"verify", "--order", "9", "--count", "40", "--seed", "12"});
  CHECK(other.out != a.out);

  {
    Env env("EQUITREE_SEED", "11");
    auto overridden = run({"verify", "--order", "9", "--count", "40", "--seed", "12"});
    CHECK(overridden.out == a.out);
  }
  {
    Env env("EQUITREE_SEED", "not-a-number");
    CHECK(run({"verify", "--order", "9", "--count", "4"}).code == cli::kUsage);
  }
}

TEST_CASE("table and criterion") {
  auto t = run({"table", "--prime", "5"});
  CHECK(t.code == 0);
  auto j = json::parse(t.out);
  CHECK(j["prime"] == 5);
  CHECK(j["passed"] == true);

  auto c = run({"criterion", "2*l^1 - 3", "--order", "3"});
  CHECK(c.code == 0);
  CHECK(c.out == "inconclusive\nnonzero:Z/3\n");
  auto cj = run({"criterion", "2*l^1 - 3", "--order", "3", "--format", "json"});
  CHECK(cj.out == R"j({"criterion":"inconclusive","table":"nonzero:Z/3"})j" "\n");

  CHECK(run({"criterion", "2*x", "--order", "3"}).code == cli::kInvalid);
}

TEST_CASE("usage errors exit 64") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"bogus"}).code == cli::kUsage);
  CHECK(run({"validate"}).code == cli::kUsage);
  CHECK(run({"validate", "/nonexistent/tree.json"}).code == cli::kUsage);
  CHECK(run({"verify", "--order", "4"}).code == cli::kUsage);
  CHECK(run({"verify", "--order", "5", "--format", "yaml"}).code == cli::kUsage);
  CHECK(run({"table", "--prime", "9"}).code == cli::kUsage);
  CHECK(run({"criterion", "l^1"}).code == cli::kUsage);
}

TEST_CASE("installed binary forwards exit codes") {
  auto status = [](const std::string& args) {
    int s = std::system((std::string(EQUITREE_CLI) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("validate " + data("valid/c3_two_vertex.json")) == 0);
  CHECK(status("validate " + data("invalid/even_order.json")) == 1);
  CHECK(status("decompose " + data("valid/c15_no_formula.json")) == 2);
  CHECK(status("nonsense") == 64);
}
