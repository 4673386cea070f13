#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "equitree/tree.hpp"
#include "support.hpp"

using namespace equitree;
using testing::O;

namespace {

bool accepted(const RawTree& raw) { return std::holds_alternative<AdmissibleTree>(validate(raw)); }

bool has_clause(const ValidationResult& r, const std::string& c) {
  const auto cs = testing::clauses(r);
  return std::find(cs.begin(), cs.end(), c) != cs.end();
}

// Equal as a residue pair up to a global sign (no swap).
bool same_up_to_sign(const Weight& x, const Weight& y) { return x == y || x == y.negated(); }

std::multiset<Int> stabs(const AdmissibleTree& t) {
  std::multiset<Int> s;
  for (const auto& o : t.orbits()) s.insert(o.stab());
  return s;
}

}  // namespace

TEST_CASE("parse: minimal document and round trip") {
  const RawTree raw = parse_tree(R"({"order":3,"type":"I","orbits":[{"id":0,"parent":null,"a":1,"b":2,"stab":3}]})");
  CHECK(raw.orbits.size() == 1);
  CHECK(raw.order == 3);
  const RawTree again = parse_tree(tree_to_json(raw));
  CHECK(again.orbits.size() == 1);
  CHECK(again.orbits[0].a == 1);
  CHECK(again.orbits[0].b == 2);
  CHECK_FALSE(again.orbits[0].parent);
}

TEST_CASE("parse: structural errors") {
  const std::string cycle =
      R"({"order":3,"type":"I","orbits":[{"id":0,"parent":null,"a":1,"b":2,"stab":3},)"
      R"({"id":1,"parent":2,"a":1,"b":1,"stab":3},{"id":2,"parent":1,"a":1,"b":1,"stab":3}]})";
  try {
    (void)parse_tree(cycle);
    FAIL("cycle accepted");
  } catch (const TreeParseError& e) {
    CHECK(std::string(e.what()).find("not a tree") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_tree(R"({"order":3,"type":"I","orbits":[{"id":0,"parent":null,"a":1,"b":2,"stab":3},)"
                                   R"({"id":0,"parent":0,"a":1,"b":1,"stab":3}]})"),
                  TreeParseError);
  CHECK_THROWS_AS((void)parse_tree(R"({"order":3,"type":"I","orbits":[{"id":0,"parent":null,"a":1,"b":2,"stab":3},)"
                                   R"({"id":1,"parent":7,"a":1,"b":1,"stab":3}]})"),
                  TreeParseError);
  CHECK_THROWS_AS((void)parse_tree(R"({"order":3,"type":"III","orbits":[]})"), TreeParseError);
}

TEST_CASE("parse: syntax errors report the byte offset") {
  const std::string text = R"({"order":3,"type":"I","orbits":[}])";
  try {
    (void)parse_tree(text);
    FAIL("syntax error accepted");
  } catch (const TreeParseError& e) {
    REQUIRE(e.offset());
    CHECK(*e.offset() == text.find('}') + 1);
  }
}

TEST_CASE("parse accepts stab not dividing the order; validation rejects it") {
  const RawTree raw = parse_tree(R"({"order":15,"type":"I","orbits":[{"id":0,"parent":null,"a":1,"b":5,"stab":15},)"
                                 R"({"id":1,"parent":0,"a":1,"b":0,"stab":7}]})");
  CHECK(has_clause(validate(raw), "3"));
}

TEST_CASE("validate: documented examples") {
  CHECK(accepted(testing::raw_tree(3, {{0, -1, 1, 2, 3}, {1, 0, 1, 1, 3}})));
  const auto bad = validate(testing::raw_tree(9, {{0, -1, 1, 2, 9}, {1, 0, 2, 2, 9}}));
  CHECK(has_clause(bad, "5"));
  const auto twins = validate(testing::raw_tree(3, {{0, -1, 1, 2, 3}, {1, 0, 1, 1, 3}, {2, 0, 1, 1, 3}}));
  CHECK(has_clause(twins, "6"));
  const auto* v = std::get_if<std::vector<Violation>>(&twins);
  REQUIRE(v);
  CHECK(v->front().to_json() == R"({"clause":"6","orbits":[1,2]})");
  const auto ii = validate(testing::raw_tree(15, {{0, -1, 1, 2, 15}, {1, 0, 1, 1, 15}}, TreeType::II));
  CHECK(has_clause(ii, "1"));
}

TEST_CASE("validate: each clause has a witness") {
  using testing::raw_tree;
  CHECK(has_clause(validate(raw_tree(4, {{0, -1, 1, 1, 4}})), "order"));
  CHECK(has_clause(validate(raw_tree(15, {{0, -1, 1, 5, 5}})), "1"));
  CHECK(has_clause(validate(raw_tree(15, {{0, -1, 3, 6, 15}})), "3"));
  CHECK(has_clause(validate(raw_tree(15, {{0, -1, 1, 5, 15}, {1, 0, 4, 0, 6}})), "3"));
  // child of a free orbit with a larger stabilizer
  CHECK(has_clause(validate(raw_tree(15, {{0, -1, 1, 5, 15}, {1, 0, 4, 0, 5}, {2, 1, 1, 0, 15}})), "7"));
  // four fixed level-one orbits
  CHECK(has_clause(validate(raw_tree(7, {{0, -1, 1, 2, 7}, {1, 0, 1, 5, 7}, {2, 0, 1, 1, 7}, {3, 0, 2, 6, 7},
                                         {4, 0, 6, 5, 7}})),
                   "5"));
  // fixed child of a fixed non-root vertex outside the two allowed weights
  CHECK(has_clause(validate(raw_tree(7, {{0, -1, 1, 2, 7}, {1, 0, 1, 1, 7}, {2, 1, 1, 2, 7}})), "7a"));
  // free orbit attached to a block with no C_5-fixed sphere
  CHECK(has_clause(validate(raw_tree(15, {{0, -1, 1, 2, 15}, {1, 0, 4, 0, 5}})), "7b"));
  RawTree lvl = raw_tree(3, {{0, -1, 1, 2, 3}, {1, 0, 1, 1, 3}});
  lvl.orbits[1].level = 2;
  CHECK(has_clause(validate(lvl), "2"));
  RawTree mod4 = raw_tree(3, {{0, -1, 1, 2, 3}});
  mod4.orbits[0].modulus = 5;
  CHECK(has_clause(validate(mod4), "4"));
}

TEST_CASE("validate: free orbits under a type II root use a or b only") {
  using testing::raw_tree;
  // root S4(1,5;15): a - b = -4 is a unit, 5 | b
  CHECK(accepted(raw_tree(15, {{0, -1, 1, 5, 15}, {1, 0, 4, 0, 5}}, TreeType::II)));
  // root (2,11;15): only a - b = -9 has gcd 3
  CHECK(accepted(raw_tree(15, {{0, -1, 2, 11, 15}, {1, 0, 1, 0, 3}})));
  CHECK(has_clause(validate(raw_tree(15, {{0, -1, 2, 11, 15}, {1, 0, 1, 0, 3}}, TreeType::II)), "7b"));
}

TEST_CASE("strata examples") {
  CHECK(strata(testing::tree(5, {{0, -1, 1, 2, 5}})).n_t == 1);
  CHECK(strata(testing::tree(15, {{0, -1, 1, 2, 15}}, TreeType::II)).n_t == 0);
  const Strata s = strata(testing::tree(15, {{0, -1, 1, 5, 15}, {1, 0, 4, 0, 5}}));
  CHECK(s.n_t == 4);
  CHECK(s.fixed == std::vector<Int>{0});
  CHECK(s.by_stab.at(5) == std::vector<Int>{1});
}

TEST_CASE("reorient: two-vertex example and identity") {
  const AdmissibleTree t = testing::tree(3, {{0, -1, 1, 2, 3}, {1, 0, 1, 1, 3}});
  const AdmissibleTree r = reorient(t, 1);
  CHECK(r.root().id == 1);
  CHECK(r.root().weight == Weight(0, 2, 3));
  CHECK(same_up_to_sign(r.node(0).weight, Weight(1, 2, 3)));
  CHECK(*r.node(0).parent == 1);
  const AdmissibleTree same = reorient(t, 0);
  CHECK(same.root().id == 0);
  CHECK(same.root().weight == t.root().weight);
  CHECK_THROWS_AS((void)reorient(testing::tree(15, {{0, -1, 1, 5, 15}, {1, 0, 4, 0, 5}}), 1), DomainError);
}

TEST_CASE("reorient: every three-edge fixed path follows the substitution rule") {
  int checked = 0;
  for (Int m : {5, 7, 9}) {
    for (Int a0 = 1; a0 < m; ++a0)
      for (Int b0 = 1; b0 < m; ++b0) {
        const Weight w0(a0, b0, m);
        if (!w0.primitive()) continue;
        for (const Weight& w1 : root_child_weights(w0))
          for (const Weight& w2 : chain_child_weights(w1))
            for (const Weight& w3 : chain_child_weights(w2)) {
              auto res = validate(testing::raw_tree(
                  m, {{0, -1, w0.a, w0.b, m}, {1, 0, w1.a, w1.b, m}, {2, 1, w2.a, w2.b, m}, {3, 2, w3.a, w3.b, m}}));
              auto* t = std::get_if<AdmissibleTree>(&res);
              if (!t) continue;
              const AdmissibleTree r = reorient(*t, 3);
              const std::array<Weight, 4> w{w0, w1, w2, w3};
              CHECK(r.root().id == 3);
              CHECK(r.root().weight == Weight(w3.a - w3.b, -w3.b, m));
              for (int j = 0; j < 3; ++j) {
                CHECK(same_up_to_sign(r.node(j).weight, Weight(w[j + 1].a, -w[j + 1].b, m)));
                CHECK(*r.node(j).parent == j + 1);
              }
              ++checked;
            }
      }
  }
  CHECK(checked > 100);
}

TEST_CASE("reorient preserves counts, stabilizers, and off-path weights") {
  int done = 0;
  for (Int m : {3, 5, 7, 9, 25, 27}) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      const AdmissibleTree t = generate_random(m, 3, 6, seed, TreeType::I);
      for (const auto& o : t.orbits()) {
        if (!o.parent || o.stab() != m) continue;
        AdmissibleTree r = t;
        try {
          r = reorient(t, o.id);
        } catch (const DomainError&) {
          continue;
        }
        const auto path = t.path_from_root(o.id);
        const std::set<Int> on_path(path.begin(), path.end());
        CHECK(r.orbits().size() == t.orbits().size());
        CHECK(stabs(r) == stabs(t));
        CHECK(strata(r).n_t == strata(t).n_t);
        for (const auto& x : t.orbits())
          if (!on_path.count(x.id)) {
            CHECK(r.node(x.id).weight == x.weight);
            CHECK(r.node(x.id).parent == x.parent);
          }
        CHECK(std::holds_alternative<AdmissibleTree>(validate(r.to_raw())));
        const AdmissibleTree back = reorient(r, t.root().id);
        CHECK(back.root().id == t.root().id);
        ++done;
      }
    }
  }
  CHECK(done > 500);
}

TEST_CASE("normalize_root examples and properties") {
  CHECK(normalize_root(testing::tree(9, {{0, -1, 3, 1, 9}}), 3).root().weight == Weight(2, 8, 9));
  CHECK(normalize_root(testing::tree(15, {{0, -1, 1, 2, 15}}), 5).root().weight == Weight(1, 2, 15));
  CHECK(normalize_root(testing::tree(3, {{0, -1, 1, 1, 3}}), 3).root().weight == Weight(1, 1, 3));
  for (Int m : {9, 25, 27}) {
    const Int p = prime_power(m)->first;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const AdmissibleTree t = generate_random(m, 3, 6, seed, TreeType::I);
      const AdmissibleTree n = normalize_root(t, p);
      CHECK(n.root().weight.a % p != 0);
      CHECK(n.root().weight.b % p != 0);
      for (const auto& o : t.orbits())
        if (o.parent) CHECK(n.node(o.id).weight == o.weight);
    }
  }
}

TEST_CASE("generator: determinism, validity, and the divisibility premise") {
  const AdmissibleTree single = generate_random(3, 0, 6, 42);
  CHECK(single.orbits().size() == 1);
  CHECK(tree_to_json(generate_random(15, 3, 6, 77).to_raw()) == tree_to_json(generate_random(15, 3, 6, 77).to_raw()));
  bool any_type_ii = false;
  for (Int m : {3, 5, 9, 15, 21, 25, 27, 45}) {
    for (std::uint64_t seed = 0; seed < (m == 15 ? 1000u : 150u); ++seed) {
      const AdmissibleTree t = generate_random(m, 3, 6, seed);
      any_type_ii |= t.type() == TreeType::II;
      REQUIRE(std::holds_alternative<AdmissibleTree>(validate(t.to_raw())));
      for (const auto& o : t.orbits())
        if (o.parent) CHECK(t.node(*o.parent).stab() % o.stab() == 0);
    }
  }
  CHECK(any_type_ii);
}
