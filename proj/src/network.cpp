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

#include "pfg/network.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "pfg/errors.hpp"

namespace pfg {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

// BFS reachability from `from` to `sink` avoiding nodes flagged in `blocked`
// and using only arcs accepted by `usable`.
template <typename Usable>
bool reaches_avoiding(const Digraph& g, NodeId from, NodeId sink, const std::vector<char>& blocked, Usable usable) {
  if (from == sink) return true;
  std::vector<char> seen(idx(g.node_count()), 0);
  std::deque<NodeId> queue{from};
  seen[idx(from)] = 1;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (int a : g.out_arcs(v)) {
      if (!usable(a)) continue;
      const NodeId w = g.arc(a).to;
      if (seen[idx(w)] || blocked[idx(w)]) continue;
      if (w == sink) return true;
      seen[idx(w)] = 1;
      queue.push_back(w);
    }
  }
  return false;
}

}  // namespace

Digraph::Digraph(const NetworkSpace& space) : arcs_(space.arcs) {
  const int nodes = space.node_count();
  out_.assign(idx(nodes), {});
  in_.assign(idx(nodes), {});
  for (int a = 0; a < static_cast<int>(arcs_.size()); ++a) {
    out_[idx(arcs_[idx(a)].from)].push_back(a);
    in_[idx(arcs_[idx(a)].to)].push_back(a);
  }
  const auto by_resource = [this](int x, int y) {
    return std::pair(arcs_[idx(x)].resource, x) < std::pair(arcs_[idx(y)].resource, y);
  };
  for (auto& list : out_) std::sort(list.begin(), list.end(), by_resource);
  for (auto& list : in_) std::sort(list.begin(), list.end(), by_resource);
}

std::optional<std::vector<int>> Digraph::resolve_path(NodeId source, NodeId sink, const Strategy& path) const {
  if (source < 0 || source >= node_count() || sink < 0 || sink >= node_count()) return std::nullopt;
  if (path.empty()) return std::nullopt;
  std::vector<char> visited(idx(node_count()), 0);
  std::vector<int> arcs;
  NodeId at = source;
  visited[idx(at)] = 1;
  for (ResourceId r : path) {
    std::optional<int> step;
    for (int a : out_arcs(at)) {
      if (arcs_[idx(a)].resource == r) {
        step = a;
        break;
      }
    }
    if (!step) return std::nullopt;
    at = arcs_[idx(*step)].to;
    if (visited[idx(at)]) return std::nullopt;
    visited[idx(at)] = 1;
    arcs.push_back(*step);
  }
  if (at != sink) return std::nullopt;
  return arcs;
}

bool reachable(const Digraph& g, NodeId source, NodeId sink) {
  std::vector<char> blocked(idx(g.node_count()), 0);
  blocked[idx(source)] = 1;
  return reaches_avoiding(g, source, sink, blocked, [](int) { return true; });
}

std::vector<Strategy> enumerate_paths(const Digraph& g, NodeId source, NodeId sink,
                                      std::optional<std::size_t> limit) {
  std::vector<Strategy> out;
  if (source == sink) return out;
  std::vector<char> on_path(idx(g.node_count()), 0);
  Strategy current;
  // Explicit stack of (node, next out-arc position) keeps deep graphs off the
  // call stack.
  std::vector<std::pair<NodeId, std::size_t>> stack{{source, 0}};
  on_path[idx(source)] = 1;
  while (!stack.empty()) {
    auto& [v, pos] = stack.back();
    const auto& outs = g.out_arcs(v);
    if (pos == outs.size()) {
      on_path[idx(v)] = 0;
      stack.pop_back();
      if (!current.empty()) current.pop_back();
      continue;
    }
    const Arc& arc = g.arc(outs[pos++]);
    if (on_path[idx(arc.to)]) continue;
    if (arc.to == sink) {
      current.push_back(arc.resource);
      out.push_back(current);
      current.pop_back();
      if (limit && out.size() > *limit) {
        throw BudgetExceeded("strategy enumeration exceeded limit", *limit, out.size());
      }
      continue;
    }
    current.push_back(arc.resource);
    on_path[idx(arc.to)] = 1;
    stack.emplace_back(arc.to, 0);
  }
  return out;
}

std::optional<WidestPath> widest_path(const Digraph& g, NodeId source, NodeId sink,
                                      std::span<const Rational> resource_value) {
  const std::size_t n = idx(g.node_count());
  const auto value = [&](int a) -> const Rational& { return resource_value[idx(g.arc(a).resource)]; };

  // Label setting on bottleneck values; the source label is +infinity.
  std::vector<std::optional<Rational>> best(n);
  std::vector<char> infinite(n, 0), done(n, 0);
  infinite[idx(source)] = 1;
  const auto better = [&](std::size_t x, std::size_t y) {
    // Is label x strictly larger than label y?
    if (infinite[x]) return !infinite[y];
    if (infinite[y] || !best[x]) return false;
    return !best[y] || *best[y] < *best[x];
  };
  for (;;) {
    std::optional<std::size_t> pick;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || (!infinite[v] && !best[v])) continue;
      if (!pick || better(v, *pick)) pick = v;
    }
    if (!pick) break;
    done[*pick] = 1;
    for (int a : g.out_arcs(static_cast<NodeId>(*pick))) {
      const std::size_t w = idx(g.arc(a).to);
      if (done[w]) continue;
      Rational cand = infinite[*pick] ? value(a) : min(*best[*pick], value(a));
      if (!best[w] || *best[w] < cand) best[w] = std::move(cand);
    }
  }
  if (source == sink || !best[idx(sink)]) return std::nullopt;
  const Rational bottleneck = *best[idx(sink)];

  // Greedy lexicographically least simple path over arcs that keep the
  // bottleneck, checking at every step that the sink stays reachable.
  const auto usable = [&](int a) { return !(value(a) < bottleneck); };
  std::vector<char> visited(n, 0);
  visited[idx(source)] = 1;
  WidestPath result{{}, bottleneck};
  NodeId at = source;
  while (at != sink) {
    std::optional<int> chosen;
    for (int a : g.out_arcs(at)) {
      if (!usable(a)) continue;
      const NodeId w = g.arc(a).to;
      if (visited[idx(w)]) continue;
      if (reaches_avoiding(g, w, sink, visited, usable)) {
        chosen = a;
        break;
      }
    }
    if (!chosen) throw InternalError("widest path reconstruction lost the sink");
    result.path.push_back(g.arc(*chosen).resource);
    at = g.arc(*chosen).to;
    visited[idx(at)] = 1;
  }
  return result;
}

std::vector<std::int64_t> integral_flow(const Digraph& g, NodeId source, NodeId sink,
                                        std::span<const std::int64_t> capacity, std::int64_t demand) {
  std::vector<std::int64_t> flow(idx(g.arc_count()), 0);
  std::int64_t routed = 0;
  const std::size_t n = idx(g.node_count());
  while (routed < demand) {
    // BFS over residual steps; forward arcs first, then reverse, both by arc order.
    std::vector<std::optional<ResidualStep>> parent(n);
    std::vector<char> seen(n, 0);
    std::deque<NodeId> queue{source};
    seen[idx(source)] = 1;
    while (!queue.empty() && !seen[idx(sink)]) {
      const NodeId v = queue.front();
      queue.pop_front();
      for (int a : g.out_arcs(v)) {
        const NodeId w = g.arc(a).to;
        if (seen[idx(w)] || flow[idx(a)] >= capacity[idx(a)]) continue;
        seen[idx(w)] = 1;
        parent[idx(w)] = ResidualStep{a, true};
        queue.push_back(w);
      }
      for (int a : g.in_arcs(v)) {
        const NodeId w = g.arc(a).from;
        if (seen[idx(w)] || flow[idx(a)] <= 0) continue;
        seen[idx(w)] = 1;
        parent[idx(w)] = ResidualStep{a, false};
        queue.push_back(w);
      }
    }
    if (!seen[idx(sink)]) break;
    std::int64_t push = demand - routed;
    for (NodeId v = sink; v != source;) {
      const ResidualStep s = *parent[idx(v)];
      const Arc& arc = g.arc(s.arc);
      push = std::min(push, s.forward ? capacity[idx(s.arc)] - flow[idx(s.arc)] : flow[idx(s.arc)]);
      v = s.forward ? arc.from : arc.to;
    }
    for (NodeId v = sink; v != source;) {
      const ResidualStep s = *parent[idx(v)];
      const Arc& arc = g.arc(s.arc);
      flow[idx(s.arc)] += s.forward ? push : -push;
      v = s.forward ? arc.from : arc.to;
    }
    routed += push;
  }
  return flow;
}

std::vector<std::vector<int>> unit_path_decomposition(const Digraph& g, NodeId source, NodeId sink,
                                                      std::vector<std::int64_t> flow, std::int64_t count) {
  std::vector<std::vector<int>> paths;
  const std::size_t n = idx(g.node_count());
  while (static_cast<std::int64_t>(paths.size()) < count) {
    std::vector<int> walk;
    std::vector<int> position(n, -1);  // node -> index into walk where it was entered
    NodeId at = source;
    position[idx(at)] = 0;
    while (at != sink) {
      std::optional<int> next;
      for (int a : g.out_arcs(at)) {
        if (flow[idx(a)] > 0) {
          next = a;
          break;
        }
      }
      if (!next) throw InternalError("flow decomposition ran out of flow");
      walk.push_back(*next);
      const NodeId w = g.arc(*next).to;
      if (position[idx(w)] >= 0) {
        // Cancel the cycle w -> ... -> w and resume the walk from w.
        const auto from = static_cast<std::size_t>(position[idx(w)]);
        for (std::size_t k = from; k < walk.size(); ++k) {
          --flow[idx(walk[k])];
          if (k + 1 < walk.size()) position[idx(g.arc(walk[k]).to)] = -1;
        }
        walk.resize(from);
        at = w;
        continue;
      }
      position[idx(w)] = static_cast<int>(walk.size());
      at = w;
    }
    for (int a : walk) --flow[idx(a)];
    paths.push_back(std::move(walk));
  }
  return paths;
}

std::optional<Augmentation> max_capacity_augmenting_path(const Digraph& g, NodeId source, NodeId sink,
                                                         std::span<const Rational> capacity,
                                                         std::span<const Rational> flow) {
  const std::size_t n = idx(g.node_count());
  std::vector<std::optional<Rational>> best(n);
  std::vector<std::optional<ResidualStep>> parent(n);
  std::vector<char> done(n, 0);
  bool source_open = true;  // the source carries an infinite label
  for (;;) {
    std::optional<std::size_t> pick;
    if (source_open) {
      pick = idx(source);
      source_open = false;
    } else {
      for (std::size_t v = 0; v < n; ++v) {
        if (done[v] || !best[v]) continue;
        if (!pick || *best[*pick] < *best[v]) pick = v;
      }
    }
    if (!pick) break;
    done[*pick] = 1;
    const auto relax = [&](std::size_t w, const Rational& residual, ResidualStep step) {
      if (done[w] || residual.sign() <= 0) return;
      Rational cand = (*pick == idx(source)) ? residual : min(*best[*pick], residual);
      if (!best[w] || *best[w] < cand) {
        best[w] = std::move(cand);
        parent[w] = step;
      }
    };
    for (int a : g.out_arcs(static_cast<NodeId>(*pick))) {
      relax(idx(g.arc(a).to), capacity[idx(a)] - flow[idx(a)], ResidualStep{a, true});
    }
    for (int a : g.in_arcs(static_cast<NodeId>(*pick))) {
      relax(idx(g.arc(a).from), flow[idx(a)], ResidualStep{a, false});
    }
  }
  if (source == sink || !best[idx(sink)]) return std::nullopt;
  Augmentation aug{{}, *best[idx(sink)]};
  for (NodeId v = sink; v != source;) {
    const ResidualStep s = *parent[idx(v)];
    aug.steps.push_back(s);
    v = s.forward ? g.arc(s.arc).from : g.arc(s.arc).to;
  }
  std::reverse(aug.steps.begin(), aug.steps.end());
  return aug;
}

std::vector<Rational> rational_max_flow(const Digraph& g, NodeId source, NodeId sink,
                                        std::span<const Rational> capacity) {
  std::vector<Rational> flow(idx(g.arc_count()));
  const std::size_t n = idx(g.node_count());
  if (source == sink) return flow;
  for (;;) {
    std::vector<std::optional<ResidualStep>> parent(n);
    std::vector<char> seen(n, 0);
    std::deque<NodeId> queue{source};
    seen[idx(source)] = 1;
    while (!queue.empty() && !seen[idx(sink)]) {
      const NodeId v = queue.front();
      queue.pop_front();
      for (int a : g.out_arcs(v)) {
        const NodeId w = g.arc(a).to;
        if (seen[idx(w)] || !(flow[idx(a)] < capacity[idx(a)])) continue;
        seen[idx(w)] = 1;
        parent[idx(w)] = ResidualStep{a, true};
        queue.push_back(w);
      }
      for (int a : g.in_arcs(v)) {
        const NodeId w = g.arc(a).from;
        if (seen[idx(w)] || flow[idx(a)].sign() <= 0) continue;
        seen[idx(w)] = 1;
        parent[idx(w)] = ResidualStep{a, false};
        queue.push_back(w);
      }
    }
    if (!seen[idx(sink)]) return flow;
    std::optional<Rational> push;
    for (NodeId v = sink; v != source;) {
      const ResidualStep s = *parent[idx(v)];
      Rational room = s.forward ? capacity[idx(s.arc)] - flow[idx(s.arc)] : flow[idx(s.arc)];
      if (!push || room < *push) push = std::move(room);
      v = s.forward ? g.arc(s.arc).from : g.arc(s.arc).to;
    }
    for (NodeId v = sink; v != source;) {
      const ResidualStep s = *parent[idx(v)];
      if (s.forward) {
        flow[idx(s.arc)] += *push;
      } else {
        flow[idx(s.arc)] -= *push;
      }
      v = s.forward ? g.arc(s.arc).from : g.arc(s.arc).to;
    }
  }
}

std::vector<WeightedPath> path_decomposition(const Digraph& g, NodeId source, NodeId sink,
                                             std::vector<Rational> flow) {
  std::vector<WeightedPath> out;
  const std::size_t n = idx(g.node_count());
  for (;;) {
    std::vector<int> walk;
    std::vector<int> position(n, -1);
    NodeId at = source;
    position[idx(at)] = 0;
    bool stuck = false;
    while (at != sink) {
      std::optional<int> next;
      for (int a : g.out_arcs(at)) {
        if (flow[idx(a)].sign() > 0) {
          next = a;
          break;
        }
      }
      if (!next) {
        stuck = true;
        break;
      }
      walk.push_back(*next);
      const NodeId w = g.arc(*next).to;
      if (position[idx(w)] >= 0) {
        // Cancel the circulation through w by its bottleneck.
        const auto from = static_cast<std::size_t>(position[idx(w)]);
        Rational low = flow[idx(walk[from])];
        for (std::size_t k = from; k < walk.size(); ++k) low = min(low, flow[idx(walk[k])]);
        for (std::size_t k = from; k < walk.size(); ++k) {
          flow[idx(walk[k])] -= low;
          if (k + 1 < walk.size()) position[idx(g.arc(walk[k]).to)] = -1;
        }
        walk.resize(from);
        at = w;
        continue;
      }
      position[idx(w)] = static_cast<int>(walk.size());
      at = w;
    }
    if (stuck) {
      if (!walk.empty()) throw InternalError("flow decomposition met a node without outflow");
      return out;
    }
    Rational low = flow[idx(walk.front())];
    for (int a : walk) low = min(low, flow[idx(a)]);
    for (int a : walk) flow[idx(a)] -= low;
    out.push_back({std::move(walk), std::move(low)});
  }
}

}  // namespace pfg
