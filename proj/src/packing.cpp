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


#include "pfg/packing.hpp"

#include <algorithm>

#include "pfg/errors.hpp"
#include "pfg/network.hpp"

namespace pfg {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

class Packer {
 public:
  Packer(const std::vector<std::vector<Strategy>>& sets, const PackingBounds& bounds, std::uint64_t budget)
      : sets_(sets), left_(bounds), budget_(budget), choice_(sets.size(), 0) {}

  std::optional<std::vector<Strategy>> run() {
    if (!place(0)) return std::nullopt;
    std::vector<Strategy> out;
    out.reserve(sets_.size());
    for (std::size_t p = 0; p < sets_.size(); ++p) out.push_back(sets_[p][choice_[p]]);
    return out;
  }

 private:
  bool place(std::size_t p) {
    if (p == sets_.size()) return true;
    const auto& list = sets_[p];
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (++visited_ > budget_) throw BudgetExceeded("strategy packing search exceeded budget", budget_, visited_);
      const Strategy& s = list[k];
      const bool fits = std::all_of(s.begin(), s.end(), [&](ResourceId r) {
        return idx(r) < left_.size() && left_[idx(r)] > 0;
      });
      if (!fits) continue;
      for (ResourceId r : s) --left_[idx(r)];
      choice_[p] = k;
      if (place(p + 1)) return true;
      for (ResourceId r : s) ++left_[idx(r)];
    }
    return false;
  }

  const std::vector<std::vector<Strategy>>& sets_;
  PackingBounds left_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;
  std::vector<std::size_t> choice_;
};

}  // namespace

std::optional<std::vector<Strategy>> pack_explicit(const std::vector<std::vector<Strategy>>& strategy_sets,
                                                   const PackingBounds& bounds, std::uint64_t budget) {
  return Packer(strategy_sets, bounds, budget).run();
}

bool network_oracle_applicable(const NetworkSpace& space) {
  return !space.endpoints.empty() && space.single_commodity() && space.one_arc_per_resource();
}

std::optional<std::vector<Strategy>> pack_network(const NetworkSpace& space, std::size_t players,
                                                  const PackingBounds& bounds) {
  if (!network_oracle_applicable(space)) {
    throw EngineError("network packing needs a single-commodity space with one arc per resource");
  }
  if (players == 0) return std::vector<Strategy>{};
  const Digraph g(space);
  const auto [s, t] = space.endpoints.front();
  std::vector<std::int64_t> capacity;
  capacity.reserve(static_cast<std::size_t>(g.arc_count()));
  for (const Arc& a : g.arcs()) capacity.push_back(idx(a.resource) < bounds.size() ? bounds[idx(a.resource)] : 0);
  const auto demand = static_cast<std::int64_t>(players);
  std::vector<std::int64_t> flow = integral_flow(g, s, t, capacity, demand);
  std::int64_t value = 0;
  for (int a : g.out_arcs(s)) value += flow[idx(a)];
  for (int a : g.in_arcs(s)) value -= flow[idx(a)];
  if (value < demand) return std::nullopt;
  std::vector<Strategy> out;
  for (const auto& path : unit_path_decomposition(g, s, t, std::move(flow), demand)) {
    Strategy strategy;
    for (int a : path) strategy.push_back(g.arc(a).resource);
    out.push_back(std::move(strategy));
  }
  return out;
}

DualGreedyResult dual_greedy(const GameInstance& inst, const DualGreedyOptions& options) {
  if (!inst.uniform_rates()) throw EngineError("dual greedy needs every rate to be identically 1");
  const int n = inst.players;
  const std::size_t m = idx(inst.resource_count());

  const bool use_network = options.oracle == PackingOracle::network_flow && inst.is_network() &&
                           network_oracle_applicable(inst.network());
  std::optional<StrategyCatalog> catalog;
  if (!use_network) catalog.emplace(inst, options.strategy_limit);

  std::vector<PlayerId> free_players;
  for (PlayerId p = 0; p < n; ++p) free_players.push_back(p);

  const auto oracle = [&](const PackingBounds& u) -> std::optional<std::vector<Strategy>> {
    if (use_network) return pack_network(inst.network(), free_players.size(), u);
    std::vector<std::vector<Strategy>> sets;
    sets.reserve(free_players.size());
    for (PlayerId p : free_players) sets.push_back(catalog->of(p));
    return pack_explicit(sets, u, options.packing_budget);
  };

  DualGreedyResult out;
  out.state.assign(idx(n), {});
  out.bandwidths.assign(idx(n), Rational());
  PackingBounds u(m, n);
  std::vector<Rational> residual(m);
  for (std::size_t r = 0; r < m; ++r) residual[r] = inst.resources[r].capacity;

  auto packing = oracle(u);
  if (!packing) throw InternalError("packing oracle rejected the unconstrained bounds");

  while (!free_players.empty()) {
    std::optional<std::size_t> pick;
    Rational best;
    for (std::size_t r = 0; r < m; ++r) {
      if (u[r] <= 0) continue;
      Rational ratio = residual[r] / Rational(u[r]);
      if (!pick || ratio < best) {
        pick = r;
        best = std::move(ratio);
      }
    }
    if (!pick) throw InternalError("dual greedy ran out of resources with positive bounds");
    const std::size_t r_star = *pick;
    --u[r_star];
    auto next = oracle(u);
    out.iterations.push_back({static_cast<ResourceId>(r_star), best, next.has_value()});
    if (next) {
      packing = std::move(next);
      continue;
    }
    ++u[r_star];
    const Rational b = residual[r_star] / Rational(u[r_star]);
    FixBatch batch{static_cast<ResourceId>(r_star), {}, b};
    std::vector<PlayerId> still_free;
    for (std::size_t k = 0; k < free_players.size(); ++k) {
      const PlayerId p = free_players[k];
      const Strategy& s = (*packing)[k];
      if (std::find(s.begin(), s.end(), static_cast<ResourceId>(r_star)) == s.end()) {
        still_free.push_back(p);
        continue;
      }
      out.state[idx(p)] = s;
      out.bandwidths[idx(p)] = b;
      batch.players.push_back(p);
      for (ResourceId r : s) {
        --u[idx(r)];
        residual[idx(r)] -= b;
        if (residual[idx(r)].sign() < 0 || u[idx(r)] < 0) throw InternalError("dual greedy overdrew a resource");
      }
    }
    if (batch.players.empty()) throw InternalError("dual greedy fixed no player after an infeasible probe");
    std::vector<Strategy> remaining;
    for (std::size_t k = 0; k < free_players.size(); ++k) {
      const Strategy& s = (*packing)[k];
      if (std::find(s.begin(), s.end(), static_cast<ResourceId>(r_star)) == s.end()) remaining.push_back(s);
    }
    free_players = std::move(still_free);
    packing = std::move(remaining);
    out.fix_batches.push_back(std::move(batch));
  }
  out.final_bounds = u;
  return out;
}

}  // namespace pfg
