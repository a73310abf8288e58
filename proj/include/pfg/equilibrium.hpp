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


// Best responses, Nash and strong equilibrium checks, improvement dynamics
// and exhaustive equilibrium search.

#ifndef PFG_EQUILIBRIUM_HPP
#define PFG_EQUILIBRIUM_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pfg/game.hpp"
#include "pfg/waterfill.hpp"

namespace pfg {

struct DeviationWitness {
  std::vector<PlayerId> coalition;
  std::vector<Strategy> strategies;  // one per coalition member
  std::vector<Rational> old_bandwidths;
  std::vector<Rational> new_bandwidths;
};

struct EquilibriumCheck {
  bool holds = true;
  std::optional<DeviationWitness> witness;
};

struct SearchOptions {
  // Cap on the strategy count of any single player.
  std::size_t strategy_limit = 100000;
  // Cap on candidate deviations (or states) visited by one search.
  std::uint64_t budget = 1000000;
  // Skip joint deviations that cannot be improving by the finishing-time
  // bounds. Only used when every rate is monotone.
  bool prune = true;
  FillOptions fill;
};

// b_player with the player's strategy replaced by the single resource.
Rational single_resource_bandwidth(const GameInstance& instance, const State& state, PlayerId player,
                                   ResourceId resource, const FillOptions& fill = {});

struct BestResponse {
  Strategy strategy;
  Rational bandwidth;
};

// Bandwidth-maximising strategy; ties go to the earliest strategy in
// enumeration order.
BestResponse best_response(const GameInstance& instance, const State& state, PlayerId player,
                           const SearchOptions& options = {});

// The witness is the first improving strategy found, not necessarily a best
// response.
EquilibriumCheck is_nash(const GameInstance& instance, const State& state, const SearchOptions& options = {});

// Searches coalitions of size at most `max_coalition_size` in order of size,
// then lexicographically, and their joint deviations in lexicographic order.
EquilibriumCheck is_strong_equilibrium(const GameInstance& instance, const State& state, int max_coalition_size,
                                       const SearchOptions& options = {});

// Same checks against a catalog built once by the caller, for repeated use
// over many states of one instance.
EquilibriumCheck is_nash(const GameInstance& instance, const StrategyCatalog& catalog, const State& state,
                         const SearchOptions& options = {});
EquilibriumCheck is_strong_equilibrium(const GameInstance& instance, const StrategyCatalog& catalog,
                                       const State& state, int max_coalition_size,
                                       const SearchOptions& options = {});

struct DynamicsMode {
  enum class Kind { unilateral, coalitional };
  Kind kind = Kind::unilateral;
  int k = 1;  // coalition size cap for coalitional mode

  static DynamicsMode unilateral() { return {Kind::unilateral, 1}; }
  static DynamicsMode coalitional(int k) { return {Kind::coalitional, k}; }
};

struct DynamicsStep {
  DeviationWitness deviation;
  State state;  // after the deviation
  PotentialVector potential;
};

struct DynamicsTrace {
  State start;
  PotentialVector start_potential;
  std::vector<DynamicsStep> steps;
  State terminal;
};

// Applies the first improving deviation of the given mode until none is left.
// Unilateral mode moves the lowest-indexed improvable player to its best
// response. Throws BudgetExceeded after `step_limit` steps and InternalError
// if a step fails to raise the potential.
DynamicsTrace improvement_dynamics(const GameInstance& instance, const State& start, DynamicsMode mode,
                                   std::size_t step_limit, const SearchOptions& options = {});

// Number of states, saturating at UINT64_MAX.
std::uint64_t state_count(const StrategyCatalog& catalog);

// Visits every state in lexicographic order of per-player strategy indices,
// player 0 most significant. Stops early when `visit` returns false.
template <typename Visit>
void for_each_state(const StrategyCatalog& catalog, Visit visit) {
  const int n = catalog.players();
  std::vector<std::size_t> pos(static_cast<std::size_t>(n), 0);
  State state;
  for (int p = 0; p < n; ++p) {
    if (catalog.size(p) == 0) return;
    state.push_back(catalog.of(p)[0]);
  }
  for (;;) {
    if (!visit(state, pos)) return;
    int p = n - 1;
    while (p >= 0) {
      const auto up = static_cast<std::size_t>(p);
      if (++pos[up] < catalog.size(p)) {
        state[up] = catalog.of(p)[pos[up]];
        break;
      }
      pos[up] = 0;
      state[up] = catalog.of(p)[0];
      --p;
    }
    if (p < 0) return;
  }
}

// First pure Nash equilibrium in state order, if any.
std::optional<State> find_pne_brute(const GameInstance& instance, const SearchOptions& options = {});

}  // namespace pfg

#endif  // PFG_EQUILIBRIUM_HPP
