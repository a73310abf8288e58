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

// Directed multigraph view of a network strategy space plus the path and
// flow routines built on it: simple-path enumeration, maximum-bottleneck
// paths, integral augmenting-path flows and their path decompositions.

#ifndef PFG_NETWORK_HPP
#define PFG_NETWORK_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pfg/game.hpp"

namespace pfg {

class Digraph {
 public:
  explicit Digraph(const NetworkSpace& space);

  int node_count() const { return static_cast<int>(out_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int index) const { return arcs_[static_cast<std::size_t>(index)]; }
  // Arc indices leaving v, ordered by (resource id, arc index).
  const std::vector<int>& out_arcs(NodeId v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& in_arcs(NodeId v) const { return in_[static_cast<std::size_t>(v)]; }

  // Arc indices of the walk that starts at `source` and uses the resources of
  // `path` in order; nullopt unless that walk is a simple path to `sink`.
  std::optional<std::vector<int>> resolve_path(NodeId source, NodeId sink, const Strategy& path) const;

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

bool reachable(const Digraph& g, NodeId source, NodeId sink);

// Every simple source-sink path as a resource-id sequence, in lexicographic
// order. Throws BudgetExceeded when there are more than `limit`.
std::vector<Strategy> enumerate_paths(const Digraph& g, NodeId source, NodeId sink,
                                      std::optional<std::size_t> limit);

struct WidestPath {
  Strategy path;
  Rational bottleneck;
};

// Simple path maximising the minimum of `resource_value` over its resources.
// Among all maximising paths the lexicographically least resource sequence is
// returned. nullopt when the sink is unreachable.
std::optional<WidestPath> widest_path(const Digraph& g, NodeId source, NodeId sink,
                                      std::span<const Rational> resource_value);

// Augments integral flow from source to sink along BFS-shortest residual
// paths until `demand` units are routed or no augmenting path remains.
// Arc capacities are per arc; the returned vector is the per-arc flow.
std::vector<std::int64_t> integral_flow(const Digraph& g, NodeId source, NodeId sink,
                                        std::span<const std::int64_t> capacity, std::int64_t demand);

// Splits `count` units of an integral flow into unit source-sink paths
// (arc-index sequences). Flow cycles met along the way are cancelled and
// dropped. Paths are extracted lexicographically least first.
std::vector<std::vector<int>> unit_path_decomposition(const Digraph& g, NodeId source, NodeId sink,
                                                      std::vector<std::int64_t> flow, std::int64_t count);

// One step of a residual path: an arc traversed forward or against its
// direction (cancelling flow).
struct ResidualStep {
  int arc = 0;
  bool forward = true;
};

struct Augmentation {
  std::vector<ResidualStep> steps;
  Rational amount;
};

// Maximum-bottleneck augmenting path in the residual network of `flow`.
// nullopt when no path with positive residual capacity exists.
std::optional<Augmentation> max_capacity_augmenting_path(const Digraph& g, NodeId source, NodeId sink,
                                                         std::span<const Rational> capacity,
                                                         std::span<const Rational> flow);

// Edmonds-Karp maximum flow with rational arc capacities.
std::vector<Rational> rational_max_flow(const Digraph& g, NodeId source, NodeId sink,
                                        std::span<const Rational> capacity);

struct WeightedPath {
  std::vector<int> arcs;
  Rational amount;
};

// Decomposes an acyclic-or-not source-sink flow into simple paths, dropping
// circulations. Paths are peeled lexicographically least first, each carrying
// its bottleneck.
std::vector<WeightedPath> path_decomposition(const Digraph& g, NodeId source, NodeId sink,
                                             std::vector<Rational> flow);

}  // namespace pfg

#endif  // PFG_NETWORK_HPP
