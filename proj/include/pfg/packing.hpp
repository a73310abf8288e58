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


// Strategy packing (a state where resource r carries at most u_r players)
// and the Dual Greedy construction of strong equilibria for uniform-rate
// games built on top of it.

#ifndef PFG_PACKING_HPP
#define PFG_PACKING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pfg/game.hpp"

namespace pfg {

// Per-resource upper bound on the number of players.
using PackingBounds = std::vector<int>;

// Backtracking over players in order, strategies in list order. Returns one
// strategy per entry of `strategy_sets`, or nullopt when none fits.
// Throws BudgetExceeded after `budget` search nodes.
std::optional<std::vector<Strategy>> pack_explicit(const std::vector<std::vector<Strategy>>& strategy_sets,
                                                   const PackingBounds& bounds, std::uint64_t budget = 10000000);

// Integral maximum flow with arc capacities u_r, decomposed into one path per
// player. Needs a single-commodity space with one arc per resource; throws
// EngineError otherwise.
std::optional<std::vector<Strategy>> pack_network(const NetworkSpace& space, std::size_t players,
                                                  const PackingBounds& bounds);

bool network_oracle_applicable(const NetworkSpace& space);

enum class PackingOracle { explicit_search, network_flow };

struct DualGreedyIteration {
  ResourceId resource = 0;
  Rational ratio;  // c'_r / u_r before the decrement
  bool feasible = true;
};

struct FixBatch {
  ResourceId resource = 0;
  std::vector<PlayerId> players;
  Rational bandwidth;
};

struct DualGreedyResult {
  State state;
  std::vector<Rational> bandwidths;
  std::vector<FixBatch> fix_batches;
  PackingBounds final_bounds;
  std::vector<DualGreedyIteration> iterations;
};

struct DualGreedyOptions {
  PackingOracle oracle = PackingOracle::explicit_search;
  std::size_t strategy_limit = 100000;
  std::uint64_t packing_budget = 10000000;
};

// Requires every rate to be identically 1. The network oracle falls back to
// the explicit one on spaces it cannot handle.
DualGreedyResult dual_greedy(const GameInstance& instance, const DualGreedyOptions& options = {});

}  // namespace pfg

#endif  // PFG_PACKING_HPP
