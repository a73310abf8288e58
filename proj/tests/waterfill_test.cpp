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


#include "doctest.h"
#include "oracles.hpp"
#include "pfg/errors.hpp"
#include "pfg/generators.hpp"
#include "pfg/waterfill.hpp"
#include "support.hpp"

using namespace pfg;
using namespace pfg::test;

TEST_CASE("three players on one resource") {
  auto g = singleton_game(qs({3}), 3);
  const auto r = progressive_fill(g, {{0}, {0}, {0}});
  CHECK(r.bandwidths == qs({1, 1, 1}));
  CHECK(r.finishing_times == qs({1, 1, 1}));
  CHECK(r.saturation_times[0] == Rational(1));
  REQUIRE(r.fix_rounds.size() == 1);
  CHECK(r.fix_rounds[0].fixed == std::vector<int>{0, 1, 2});
  CHECK(potential_vector(r) == qs({1, 1, 1}));
}

TEST_CASE("single player fill") {
  auto g = singleton_game(qs({5}), 1);
  const auto r = progressive_fill(g, {{0}});
  CHECK(r.bandwidths == qs({5}));
  CHECK(r.finishing_times == qs({5}));
}

TEST_CASE("two resource chain") {
  auto g = explicit_game(qs({4, 6}), {{{0}}, {{0, 1}}, {{1}}});
  const State s{{0}, {0, 1}, {1}};
  const auto r = progressive_fill(g, s);
  CHECK(r.bandwidths == qs({2, 2, 4}));
  CHECK(r.finishing_times == qs({2, 2, 4}));
  CHECK(r.saturation_times[0] == Rational(2));
  CHECK(r.saturation_times[1] == Rational(4));
  CHECK(potential_vector(g, s) == qs({2, 2, 4}));
  const auto sim = oracle::forward_simulation(g, s, q(1, 1000));
  for (std::size_t i = 0; i < 3; ++i) CHECK(abs(sim[i] - r.bandwidths[i]) <= q(1, 1000));
}

TEST_CASE("constant rates split proportionally") {
  auto g = explicit_game(qs({8}), {{{0}}, {{0}}}, constant_rates(qs({1, 3})));
  const auto r = progressive_fill(g, {{0}, {0}});
  CHECK(r.bandwidths == qs({2, 6}));
  CHECK(r.finishing_times == qs({2, 2}));
  CHECK(potential_vector(r) == qs({2, 2}));
}

TEST_CASE("zero capacity fixes users at time zero") {
  auto g = explicit_game(qs({0, 2}), {{{0, 1}}, {{1}}});
  const auto r = progressive_fill(g, {{0, 1}, {1}});
  CHECK(r.bandwidths == qs({0, 2}));
  CHECK(r.finishing_times[0] == 0);
}

TEST_CASE("unused resources have no saturation time") {
  auto g = explicit_game(qs({1, 9}), {{{0}}});
  const auto r = progressive_fill(g, {{0}});
  CHECK(!r.saturation_times[1]);
}

TEST_CASE("piecewise rates cross breakpoints") {
  // V = t on [0,1), then 1 + 3(t - 1).
  RateFunction f({{0, 1}, {1, 3}}, true);
  auto g = explicit_game(qs({5}), {{{0}}, {{0}}}, {f, RateFunction::constant(1)});
  const auto r = progressive_fill(g, {{0}, {0}});
  // 1 + 3(t - 1) + t = 5  =>  t = 7/4
  CHECK(r.finishing_times == qs({q(7, 4), q(7, 4)}));
  CHECK(r.bandwidths == qs({q(13, 4), q(7, 4)}));
  const auto sim = oracle::forward_simulation(g, {{0}, {0}}, q(1, 1000));
  CHECK(abs(sim[0] - r.bandwidths[0]) <= q(3, 1000));
}

TEST_CASE("non-monotone rates need the nonstandard option") {
  auto g = explicit_game(qs({3}), {{{0}}}, {dip_rate(1, q(6, 5), q(1, 10))});
  CHECK_THROWS_AS(progressive_fill(g, {{0}}), EngineError);
  FillOptions f;
  f.nonstandard = true;
  const auto r = progressive_fill(g, {{0}}, f);
  CHECK(r.bandwidths == qs({3}));
}

TEST_CASE("tie priority does not change bandwidths") {
  auto g = explicit_game(qs({2, 2, 3}), {{{0}}, {{0}}, {{1}}, {{1, 2}}});
  const State s{{0}, {0}, {1}, {1, 2}};
  const auto base = progressive_fill(g, s);
  FillOptions f;
  f.tie_priority = std::vector<int>{2, 1, 0};
  const auto other = progressive_fill(g, s, f);
  CHECK(base.bandwidths == other.bandwidths);
  CHECK(base.fix_rounds.front().resource == 0);
  CHECK(other.fix_rounds.front().resource == 1);
}

TEST_CASE("utility to rate") {
  CHECK(utility_to_rate({{{0, 2}}}) == RateFunction::constant(q(1, 2)));
  CHECK(utility_to_rate({{{0, 1}}}) == RateFunction::constant(1));
  const auto f = utility_to_rate({{{0, 1}, {1, 3}}});
  CHECK(f == RateFunction({{0, 1}, {1, q(1, 3)}}, true));
  CHECK_THROWS_AS(utility_to_rate({{{0, 1}, {1, 0}}}), ValidationError);
  CHECK_THROWS_AS(utility_to_rate({{{1, 1}}}), ValidationError);
  PiecewiseLinear u{{{0, 1}, {1, 3}}};
  CHECK(u(2) == 4);
}
