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


// Social optimum computations: the maximum capacity allocation problem
// (per state, exhaustively, and restricted to equal bandwidths), the
// three-path splittable-flow approximation, and designing constant rates
// that turn an allocation into an equilibrium.

#ifndef PFG_OPTIMUM_HPP
#define PFG_OPTIMUM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfg/equilibrium.hpp"
#include "pfg/game.hpp"

namespace pfg {

struct McapSolution {
  State state;
  std::vector<Rational> allocation;
  Rational value;
};

// Maximum total allocation on a fixed state; the lexicographically greatest
// optimal allocation is returned.
McapSolution mcap_for_state(const GameInstance& instance, const State& state);

// Largest s such that some optimal allocation on `state` gives every player
// at least s.
Rational max_min_optimal_share(const GameInstance& instance, const State& state, const Rational& value);

struct McapOptions {
  std::uint64_t budget = 2000000;  // canonical states scanned
  std::size_t strategy_limit = 100000;
  // Also compute the best state for progressive filling.
  bool pf_optimum = true;
  // Among optimal states prefer the first that admits an optimal allocation
  // with every component positive.
  bool prefer_positive = false;
  // Accept a max-flow certificate on single-commodity networks instead of
  // scanning states. Ignored when pf_optimum is requested.
  bool flow_certificate = true;
};

struct McapExactResult {
  McapSolution mcap;
  // State maximising the progressive-filling welfare and its bandwidths.
  std::optional<McapSolution> pf_optimum;
  std::uint64_t states_scanned = 0;
  bool certified_by_flow = false;
};

McapExactResult mcap_exact(const GameInstance& instance, const McapOptions& options = {});

// Largest v such that some state carries v for every player.
Rational uniform_mcap(const GameInstance& instance, const McapOptions& options = {});

// Two maximum-bottleneck augmentations, split into three paths. Needs a
// single-commodity network with one arc per resource and exactly 3 players.
McapSolution three_splittable_approx(const GameInstance& instance);

struct DesignedGame {
  GameInstance instance;
  State state;
  std::vector<Rational> target;  // allocation the design reproduces
  // False when some zero share had to be replaced by a tiny positive rate; the
  // fill then only approximates `target`.
  bool exact = true;
};

// Re-equips the instance with constant rates equal to a (possibly adjusted)
// allocation so that progressive filling on the solution state returns that
// allocation with every finishing time 1. Zero components are first removed
// by rebalancing among optimal allocations; an allocation with slack is
// raised to a maximal one dominating it.
DesignedGame design_rates(const GameInstance& instance, const McapSolution& solution);

struct StabilizeResult {
  State terminal;
  Rational start_welfare;
  Rational terminal_welfare;
  std::size_t steps = 0;
};

StabilizeResult stabilize(const GameInstance& designed, const State& start, DynamicsMode mode,
                          std::size_t step_limit = 100000, const SearchOptions& options = {});

// Number of canonical states under player symmetry.
std::uint64_t canonical_state_count(const std::vector<std::vector<PlayerId>>& groups,
                                    const StrategyCatalog& catalog);

// Players grouped by identical strategy sets (and identical rates when
// `by_rate`), in order of first member.
std::vector<std::vector<PlayerId>> symmetry_groups(const GameInstance& instance, const StrategyCatalog& catalog,
                                                   bool by_rate);

// Visits one representative per orbit: within a group, strategy indices are
// non-decreasing in player order. Stops when `visit` returns false.
template <typename Visit>
void for_each_canonical_state(const std::vector<std::vector<PlayerId>>& groups, const StrategyCatalog& catalog,
                              Visit visit) {
  const std::size_t n = static_cast<std::size_t>(catalog.players());
  // Flattened order: players of group 0, then group 1, ...
  std::vector<PlayerId> order;
  std::vector<int> prev_same(n, -1);  // position of the previous member of the same group
  for (const auto& g : groups) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (k > 0) prev_same[order.size()] = static_cast<int>(order.size()) - 1;
      order.push_back(g[k]);
    }
  }
  for (PlayerId p : order) {
    if (catalog.size(p) == 0) return;
  }
  std::vector<std::size_t> pos(n, 0);
  State state(n);
  for (std::size_t k = 0; k < n; ++k) state[static_cast<std::size_t>(order[k])] = catalog.of(order[k])[0];
  for (;;) {
    if (!visit(state)) return;
    std::size_t k = n;
    bool advanced = false;
    while (k-- > 0) {
      const PlayerId p = order[k];
      if (pos[k] + 1 < catalog.size(p)) {
        ++pos[k];
        state[static_cast<std::size_t>(p)] = catalog.of(p)[pos[k]];
        for (std::size_t l = k + 1; l < n; ++l) {
          pos[l] = prev_same[l] >= 0 ? pos[static_cast<std::size_t>(prev_same[l])] : 0;
          state[static_cast<std::size_t>(order[l])] = catalog.of(order[l])[pos[l]];
        }
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

// Stable hex digest of a solution, recorded as provenance on designed games.
std::string solution_digest(const McapSolution& solution);

}  // namespace pfg

#endif  // PFG_OPTIMUM_HPP
