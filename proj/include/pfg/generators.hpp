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


// Instance families: the lower-bound constructions for equilibrium quality
// and the seeded random instances used by the property suites.

#ifndef PFG_GENERATORS_HPP
#define PFG_GENERATORS_HPP

#include <cstdint>
#include <map>
#include <string>

#include "pfg/game.hpp"

namespace pfg {

struct GeneratorParams {
  // a: multi-commodity price of stability; b: symmetric parallel links;
  // c: k-gadget chain; d: binary counter; e: two players without a pure
  // equilibrium; f: constant-rate single gadget.
  char family = 'b';
  int n = 3;
  int k = 2;
  Rational eps = Rational(1, 10);
  Rational t1 = 1;
  Rational t2 = Rational(6, 5);
  Rational rho = 1;
  Rational dip = Rational(1, 10);
};

struct GeneratedGame {
  GameInstance instance;
  // Distinguished states by name, e.g. "pne", "optimum", "s_star".
  std::map<std::string, State> states;
};

// Throws ValidationError listing every broken family constraint.
GeneratedGame generate(const GeneratorParams& params);

// Rate rising at rate 1 up to t1, falling by `dip` until t2 and rising at
// rate 1 afterwards.
RateFunction dip_rate(const Rational& t1, const Rational& t2, const Rational& dip);

struct RandomParams {
  int max_players = 4;
  int max_resources = 6;
  int max_strategies = 3;
  bool symmetric = false;
  bool singleton = false;     // every strategy a single resource
  bool uniform = true;        // all rates identically 1
  bool piecewise = false;     // piecewise-constant monotone rates
  long max_capacity = 6;
  long capacity_denominator = 1;
};

GameInstance random_explicit_game(std::uint64_t seed, const RandomParams& params);

// Single-commodity directed network with `players` players, at most
// `max_arcs` arcs, integer capacities in [1, max_capacity], uniform rates.
GameInstance random_network_game(std::uint64_t seed, int players, int max_arcs, long max_capacity);

}  // namespace pfg

#endif  // PFG_GENERATORS_HPP
