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

// Data model for progressive filling games: resources with capacities,
// per-player allocation rates, and strategy spaces given either as explicit
// resource subsets or implicitly as the simple paths of a directed multigraph.

#ifndef PFG_GAME_HPP
#define PFG_GAME_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pfg/rational.hpp"

namespace pfg {

using PlayerId = int;
using ResourceId = int;
using NodeId = int;

struct Resource {
  ResourceId id = 0;
  Rational capacity;
  friend bool operator==(const Resource&, const Resource&) = default;
};

// Piecewise-constant allocation rate v(t). Piece k covers [start_k, start_{k+1})
// and the last piece extends to infinity. The aggregated rate V(t) is the
// integral from 0, hence piecewise linear and continuous.
class RateFunction {
 public:
  struct Piece {
    Rational start;
    Rational rate;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  RateFunction() : RateFunction(constant(1)) {}
  RateFunction(std::vector<Piece> pieces, bool monotone);

  static RateFunction constant(const Rational& rate);

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool monotone() const { return monotone_; }
  bool is_constant() const { return pieces_.size() == 1; }
  bool is_unit() const { return is_constant() && pieces_.front().rate == Rational(1); }

  // V(t) for t >= 0.
  Rational integral(const Rational& t) const;
  // Right-continuous v(t).
  const Rational& rate_at(const Rational& t) const;
  // Index of the piece containing t.
  std::size_t piece_index(const Rational& t) const;
  // V at the start of piece k.
  const Rational& integral_at_piece(std::size_t k) const { return prefix_[k]; }

  // Human-readable descriptions of every broken invariant; empty when valid.
  std::vector<std::string> violations() const;

  friend bool operator==(const RateFunction& a, const RateFunction& b) {
    return a.monotone_ == b.monotone_ && a.pieces_ == b.pieces_;
  }

 private:
  std::vector<Piece> pieces_;
  bool monotone_ = true;
  std::vector<Rational> prefix_;
};

// A strategy is a sequence of resource ids: an unordered subset for explicit
// spaces, the arcs of a path in traversal order for network spaces.
using Strategy = std::vector<ResourceId>;
using State = std::vector<Strategy>;

// Sorted copy, used for set comparisons of strategies.
Strategy canonical(const Strategy& s);
bool same_resources(const Strategy& a, const Strategy& b);

struct ExplicitSpace {
  std::vector<std::vector<Strategy>> strategies;  // per player
  friend bool operator==(const ExplicitSpace&, const ExplicitSpace&) = default;
};

// An arc is a usage of a resource from one node to another. Two arcs may share
// a resource id when they are the two directions of an undirected edge; they
// then share the capacity.
struct Arc {
  ResourceId resource = 0;
  NodeId from = 0;
  NodeId to = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct NetworkSpace {
  std::vector<Arc> arcs;
  std::vector<std::pair<NodeId, NodeId>> endpoints;  // per player (source, sink)

  int node_count() const;
  bool single_commodity() const;
  // True when no resource id is shared by two arcs.
  bool one_arc_per_resource() const;
  friend bool operator==(const NetworkSpace&, const NetworkSpace&) = default;
};

using StrategySpace = std::variant<ExplicitSpace, NetworkSpace>;

struct GameInstance {
  int players = 0;
  std::vector<Resource> resources;
  StrategySpace space;
  std::vector<RateFunction> rates;
  // Free-form origin note; set on instances produced by rate design.
  std::optional<std::string> provenance;

  int resource_count() const { return static_cast<int>(resources.size()); }
  const Rational& capacity(ResourceId r) const { return resources[static_cast<std::size_t>(r)].capacity; }
  bool is_network() const { return std::holds_alternative<NetworkSpace>(space); }
  const NetworkSpace& network() const { return std::get<NetworkSpace>(space); }
  const ExplicitSpace& explicit_space() const { return std::get<ExplicitSpace>(space); }
  bool all_monotone() const;
  bool constant_rates() const;
  bool uniform_rates() const;  // every rate is identically 1

  friend bool operator==(const GameInstance&, const GameInstance&) = default;
};

// Every violated invariant of the instance; empty when the instance is valid.
std::vector<std::string> instance_violations(const GameInstance& instance);

// Returns the instance unchanged when valid, otherwise throws ValidationError
// listing every violation.
GameInstance validate_instance(GameInstance candidate);

// All strategies of `player` in deterministic order. Explicit spaces return the
// stored list; network spaces return every simple source-sink path ordered
// lexicographically by resource-id sequence. Throws BudgetExceeded when more
// than `limit` strategies exist.
std::vector<Strategy> enumerate_strategies(const GameInstance& instance, PlayerId player,
                                           std::optional<std::size_t> limit = std::nullopt);

// Per-player strategy lists computed once and shared by the search routines.
class StrategyCatalog {
 public:
  StrategyCatalog(const GameInstance& instance, std::optional<std::size_t> limit);

  const std::vector<Strategy>& of(PlayerId p) const { return lists_[static_cast<std::size_t>(p)]; }
  std::size_t size(PlayerId p) const { return of(p).size(); }
  // Index of `s` in the player's list, comparing as resource sets.
  std::optional<std::size_t> index_of(PlayerId p, const Strategy& s) const;
  int players() const { return static_cast<int>(lists_.size()); }

 private:
  std::vector<std::vector<Strategy>> lists_;
  std::vector<std::vector<Strategy>> sorted_;
};

// Every reason the state is not a member of the instance's state set.
std::vector<std::string> state_violations(const GameInstance& instance, const State& state);
void validate_state(const GameInstance& instance, const State& state);

}  // namespace pfg

#endif  // PFG_GAME_HPP
