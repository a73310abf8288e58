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


// Progressive filling: every player's bandwidth grows along its aggregated
// rate V_i until some resource on its strategy saturates, at which point the
// player is frozen. Also the lexicographic potential built from finishing
// times and the conversion of piecewise-linear utilities into rates.

#ifndef PFG_WATERFILL_HPP
#define PFG_WATERFILL_HPP

#include <optional>
#include <vector>

#include "pfg/game.hpp"

namespace pfg {

struct FixRound {
  Rational time;
  ResourceId resource = 0;
  std::vector<PlayerId> fixed;
};

struct AllocationResult {
  std::vector<Rational> bandwidths;
  std::vector<Rational> finishing_times;
  // Absent for resources nobody uses.
  std::vector<std::optional<Rational>> saturation_times;
  std::vector<FixRound> fix_rounds;
};

struct FillOptions {
  // Permit rate functions whose integral is not monotone.
  bool nonstandard = false;
  // Order in which simultaneously saturating resources are processed.
  // Defaults to ascending id.
  std::optional<std::vector<ResourceId>> tie_priority;
};

AllocationResult progressive_fill(const GameInstance& instance, const State& state, const FillOptions& options = {});

// Finishing times sorted non-decreasingly.
using PotentialVector = std::vector<Rational>;

PotentialVector potential_vector(const AllocationResult& result);
PotentialVector potential_vector(const GameInstance& instance, const State& state, const FillOptions& options = {});

// Continuous piecewise-linear function with U(0) = 0. Piece k has the given
// slope on [start_k, start_{k+1}); the last piece extends to infinity.
struct PiecewiseLinear {
  struct Piece {
    Rational start;
    Rational slope;
  };
  std::vector<Piece> pieces;

  Rational operator()(const Rational& x) const;
};

// Rate whose integral is the inverse of `utility`. Throws ValidationError
// unless the utility is strictly increasing and unbounded.
RateFunction utility_to_rate(const PiecewiseLinear& utility);

}  // namespace pfg

#endif  // PFG_WATERFILL_HPP
