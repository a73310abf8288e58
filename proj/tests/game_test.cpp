// Copyright 2026 The pfg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "pfg/errors.hpp"
#include "pfg/generators.hpp"
#include "pfg/network.hpp"
#include "pfg/serialize.hpp"
#include "support.hpp"

using namespace pfg;
using namespace pfg::test;

namespace {

std::vector<std::string> violations_of(const GameInstance& g) {
  try {
    validate_instance(g);
  } catch (const ValidationError& e) {
    return e.violations();
  }
  return {};
}

bool contains(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("rational arithmetic stays in lowest terms") {
  CHECK(q(2, 4) == q(1, 2));
  CHECK(q(3, -6).str() == "-1/2");
  CHECK(Rational::parse(" 10/4 ") == q(5, 2));
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK(q(7, 2).floor() == 3);
  CHECK(q(-7, 2).floor() == -4);
  CHECK(q(1, 3) + q(1, 6) == q(1, 2));
  CHECK(q(1, 3) < q(1, 2));
}

TEST_CASE("rate function integrates piecewise") {
  RateFunction f({{0, 1}, {2, 3}, {5, q(1, 2)}}, true);
  CHECK(f.integral(0) == 0);
  CHECK(f.integral(1) == 1);
  CHECK(f.integral(3) == 5);
  CHECK(f.integral(7) == 2 + 9 + 1);
  CHECK(f.rate_at(2) == 3);
  CHECK(f.rate_at(q(49, 10)) == 3);
  CHECK(f.violations().empty());
}

TEST_CASE("rate function violations") {
  CHECK(!RateFunction({{1, 1}}, true).violations().empty());
  CHECK(!RateFunction({{0, 1}, {0, 2}}, true).violations().empty());
  CHECK(!RateFunction({{0, 1}, {1, 0}}, true).violations().empty());
  CHECK(!RateFunction({{0, 1}, {1, -1}, {2, 1}}, true).violations().empty());
  CHECK(RateFunction({{0, 1}, {1, -1}, {2, 1}}, false).violations().empty());
  CHECK(!RateFunction({{0, 1}, {1, -2}, {2, 1}}, false).violations().empty());
}

TEST_CASE("validate_instance accepts a minimal instance") {
  auto g = explicit_game(qs({10}), {{{0}}, {{0}}});
  CHECK(violations_of(g).empty());
  CHECK(validate_instance(g) == g);
}

TEST_CASE("validate_instance reports negative capacity") {
  auto g = explicit_game(qs({-1}), {{{0}}, {{0}}});
  const auto v = violations_of(g);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "negative capacity at resource 0");
}

TEST_CASE("validate_instance reports an unreachable sink") {
  auto g = network_game(qs({1, 1}), {{0, 1}, {2, 1}}, {{0, 1}, {0, 2}});
  const auto v = violations_of(g);
  CHECK(contains(v, "player 1: empty strategy set"));
}

TEST_CASE("validate_instance lists every violation") {
  auto g = explicit_game(qs({-1, 2}), {{{0}}, {}}, {RateFunction({{0, 0}}, true)});
  const auto v = violations_of(g);
  CHECK(v.size() >= 3);
  CHECK(contains(v, "negative capacity at resource 0"));
  CHECK(contains(v, "player 1: empty strategy set"));
}

TEST_CASE("zero capacity resources are legal") {
  auto g = explicit_game(qs({0, 1}), {{{0}, {1}}});
  CHECK(violations_of(g).empty());
}

TEST_CASE("parallel arcs give singleton paths") {
  auto g = network_game(qs({1, 1}), {{0, 1}, {0, 1}}, {{0, 1}});
  const auto s = enumerate_strategies(g, 0);
  CHECK(s == std::vector<Strategy>{{0}, {1}});
}

TEST_CASE("diamond graph has two paths") {
  auto g = network_game(qs({1, 1, 1, 1}), {{0, 1}, {1, 3}, {0, 2}, {2, 3}}, {{0, 3}});
  const auto s = enumerate_strategies(g, 0);
  CHECK(s == std::vector<Strategy>{{0, 1}, {2, 3}});
}

TEST_CASE("gadget path count matches depth-first search") {
  GeneratorParams p;
  p.family = 'c';
  p.n = 4;
  p.k = 2;
  const auto g = generate(p).instance;
  const auto [s, t] = g.network().endpoints[0];
  const auto oracle = oracle::dfs_paths(g.network(), s, t);
  const auto paths = enumerate_strategies(g, 0);
  CHECK(paths.size() == oracle.size());
  CHECK(std::set<Strategy>(paths.begin(), paths.end()) == std::set<Strategy>(oracle.begin(), oracle.end()));
  CHECK(std::is_sorted(paths.begin(), paths.end()));
}

TEST_CASE("enumeration overflow reports limit and lower bound") {
  GeneratorParams p;
  p.family = 'c';
  p.n = 4;
  const auto g = generate(p).instance;
  try {
    enumerate_strategies(g, 0, 2);
    FAIL("expected overflow");
  } catch (const BudgetExceeded& e) {
    CHECK(e.limit() == 2);
    CHECK(e.count_lower_bound() > 2);
  }
}

TEST_CASE("state validation") {
  auto g = explicit_game(qs({1, 1}), {{{0}}, {{0}, {1}}});
  CHECK(state_violations(g, {{0}, {1}}).empty());
  CHECK(!state_violations(g, {{1}, {1}}).empty());
  CHECK(!state_violations(g, {{0}}).empty());
  CHECK_THROWS_AS(validate_state(g, {{0}, {7}}), ValidationError);
  auto net = network_game(qs({1, 1}), {{0, 1}, {1, 2}}, {{0, 2}});
  CHECK(state_violations(net, State{Strategy{0, 1}}).empty());
  CHECK(!state_violations(net, State{Strategy{1, 0}}).empty());
}

TEST_CASE("catalog matches sets regardless of order") {
  auto g = explicit_game(qs({1, 1}), {{{0, 1}, {1}}});
  StrategyCatalog c(g, std::nullopt);
  CHECK(c.index_of(0, {1, 0}) == 0u);
  CHECK(c.index_of(0, {1}) == 1u);
  CHECK(!c.index_of(0, {0}));
}

TEST_CASE("serialization round trip") {
  for (char fam : {'a', 'b', 'c', 'd', 'e', 'f'}) {
    GeneratorParams p;
    p.family = fam;
    p.n = 4;
    const auto g = generate(p).instance;
    const auto back = instance_from_json(Json::parse(to_json(g).dump()));
    CHECK(back == g);
  }
  auto g = random_explicit_game(5, RandomParams{});
  g.provenance = "x";
  CHECK(instance_from_json(to_json(g)) == g);
  State s{{0, 2}, {1}};
  CHECK(state_from_json(state_to_json(s)) == s);
}

TEST_CASE("malformed documents are validation errors") {
  CHECK_THROWS_AS(instance_from_json(Json::parse("{}")), ValidationError);
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"players":1,"resources":[{"id":0,"capacity":"x"}]})")),
                  ValidationError);
  CHECK_THROWS_AS(state_from_json(Json::parse("[1]")), ValidationError);
  CHECK(rational_from_json(Json::parse(R"("3/6")")) == q(1, 2));
  CHECK(rational_from_json(Json::parse("4")) == 4);
}
