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


#include "pfg/equilibrium.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "pfg/errors.hpp"
#include "pfg/network.hpp"

namespace pfg {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

// Lazily computed b_player({r}, S_-player) for every resource r.
class SingleValues {
 public:
  SingleValues(const GameInstance& inst, const State& state, PlayerId player, const FillOptions& fill)
      : inst_(inst), state_(state), player_(player), fill_(fill), cache_(idx(inst.resource_count())) {}

  const Rational& operator()(ResourceId r) {
    auto& slot = cache_[idx(r)];
    if (!slot) slot = single_resource_bandwidth(inst_, state_, player_, r, fill_);
    return *slot;
  }

  Rational strategy_value(const Strategy& s) {
    std::optional<Rational> best;
    for (ResourceId r : s) {
      const Rational& v = (*this)(r);
      if (!best || v < *best) best = v;
    }
    return *best;
  }

 private:
  const GameInstance& inst_;
  const State& state_;
  PlayerId player_;
  const FillOptions& fill_;
  std::vector<std::optional<Rational>> cache_;
};

bool monotone_search(const GameInstance& inst, const SearchOptions& options) {
  return inst.all_monotone() && !options.fill.nonstandard;
}

BestResponse best_response_impl(const GameInstance& inst, const State& state, PlayerId player,
                                 const StrategyCatalog* catalog, const SearchOptions& options) {
  if (monotone_search(inst, options)) {
    SingleValues single(inst, state, player, options.fill);
    if (inst.is_network()) {
      const NetworkSpace& net = inst.network();
      std::vector<Rational> value(idx(inst.resource_count()));
      std::vector<char> present(value.size(), 0);
      for (const Arc& a : net.arcs) present[idx(a.resource)] = 1;
      for (std::size_t r = 0; r < value.size(); ++r) {
        if (present[r]) value[r] = single(static_cast<ResourceId>(r));
      }
      const auto [s, t] = net.endpoints[idx(player)];
      auto widest = widest_path(Digraph(net), s, t, value);
      if (!widest) throw InternalError("player has no path in a validated instance");
      return {std::move(widest->path), std::move(widest->bottleneck)};
    }
    std::optional<BestResponse> best;
    for (const Strategy& s : inst.explicit_space().strategies[idx(player)]) {
      Rational v = single.strategy_value(s);
      if (!best || best->bandwidth < v) best = BestResponse{s, std::move(v)};
    }
    return *best;
  }

  // Non-monotone rates: the single-resource formula does not apply.
  std::optional<StrategyCatalog> own;
  if (!catalog) catalog = &own.emplace(inst, options.strategy_limit);
  std::optional<BestResponse> best;
  State trial = state;
  for (const Strategy& s : catalog->of(player)) {
    trial[idx(player)] = s;
    Rational v = progressive_fill(inst, trial, options.fill).bandwidths[idx(player)];
    if (!best || best->bandwidth < v) best = BestResponse{s, std::move(v)};
  }
  return *best;
}

// First strategy (list order, or depth-first over arcs) that beats the
// current bandwidth. Other players keep at least b_j (t_j < t_i) or V_j(t_i)
// on their resources, which rules out most resources without a fill.
// Monotone rates only.
std::optional<BestResponse> improving_strategy(const GameInstance& inst, const State& state,
                                               const AllocationResult& base, PlayerId player,
                                               const FillOptions& fill) {
  const Rational& old = base.bandwidths[idx(player)];
  const Rational& ti = base.finishing_times[idx(player)];
  std::vector<Rational> room(idx(inst.resource_count()));
  for (std::size_t r = 0; r < room.size(); ++r) room[r] = inst.capacity(static_cast<ResourceId>(r)) - old;
  for (PlayerId j = 0; j < inst.players; ++j) {
    if (j == player) continue;
    const Rational& tj = base.finishing_times[idx(j)];
    const Rational lb = tj < ti ? base.bandwidths[idx(j)] : inst.rates[idx(j)].integral(ti);
    if (lb.is_zero()) continue;
    for (ResourceId r : state[idx(j)]) room[idx(r)] -= lb;
  }
  SingleValues single(inst, state, player, fill);
  const auto open = [&](ResourceId r) { return room[idx(r)].sign() > 0; };
  const auto beats = [&](ResourceId r) { return open(r) && old < single(r); };
  if (!inst.is_network()) {
    for (const Strategy& s : inst.explicit_space().strategies[idx(player)]) {
      if (std::all_of(s.begin(), s.end(), open) && std::all_of(s.begin(), s.end(), beats)) {
        return BestResponse{s, single.strategy_value(s)};
      }
    }
    return std::nullopt;
  }
  const Digraph g(inst.network());
  const auto [source, sink] = inst.network().endpoints[idx(player)];
  std::vector<int> parent(idx(std::max(g.node_count(), 1)), -2);
  std::vector<NodeId> stack{source};
  parent[idx(source)] = -1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (v == sink) {
      Strategy path;
      for (NodeId u = sink; parent[idx(u)] >= 0; u = g.arc(parent[idx(u)]).from) {
        path.push_back(g.arc(parent[idx(u)]).resource);
      }
      std::reverse(path.begin(), path.end());
      Rational value = single.strategy_value(path);
      return BestResponse{std::move(path), std::move(value)};
    }
    for (int e : g.out_arcs(v)) {
      const Arc& arc = g.arc(e);
      if (parent[idx(arc.to)] != -2 || !beats(arc.resource)) continue;
      parent[idx(arc.to)] = e;
      stack.push_back(arc.to);
    }
  }
  return std::nullopt;
}

std::optional<DeviationWitness> unilateral_search(const GameInstance& inst, const State& state,
                                                  const AllocationResult& base, const StrategyCatalog* catalog,
                                                  const SearchOptions& options, bool best_move) {
  const bool monotone = monotone_search(inst, options);
  for (PlayerId i = 0; i < inst.players; ++i) {
    const Rational& old = base.bandwidths[idx(i)];
    std::optional<BestResponse> found;
    if (monotone) {
      found = improving_strategy(inst, state, base, i, options.fill);
      if (!found) continue;
    }
    BestResponse br = found && !best_move ? std::move(*found) : best_response_impl(inst, state, i, catalog, options);
    if (old < br.bandwidth) {
      return DeviationWitness{{i}, {std::move(br.strategy)}, {old}, {std::move(br.bandwidth)}};
    }
  }
  return std::nullopt;
}

class CoalitionSearch {
 public:
  CoalitionSearch(const GameInstance& inst, const State& state, const AllocationResult& base,
                  const StrategyCatalog& catalog, const SearchOptions& options)
      : inst_(inst), state_(state), base_(base), catalog_(catalog), options_(options),
        monotone_(monotone_search(inst, options)), prune_(options.prune && monotone_) {
    for (PlayerId p = 0; p < inst.players; ++p) {
      auto k = catalog.index_of(p, state[idx(p)]);
      current_.push_back(k ? static_cast<long>(*k) : -1L);
    }
  }

  std::optional<DeviationWitness> run(int max_size) {
    const int n = inst_.players;
    max_size = std::min(max_size, n);
    for (int size = 1; size <= max_size; ++size) {
      std::vector<PlayerId> coalition(idx(size));
      for (int j = 0; j < size; ++j) coalition[idx(j)] = j;
      for (;;) {
        if (auto w = search_coalition(coalition)) return w;
        // Next combination in lexicographic order.
        int j = size - 1;
        while (j >= 0 && coalition[idx(j)] == n - size + j) --j;
        if (j < 0) break;
        ++coalition[idx(j)];
        for (int l = j + 1; l < size; ++l) coalition[idx(l)] = coalition[idx(l - 1)] + 1;
      }
    }
    return std::nullopt;
  }

 private:
  void tick() {
    if (++visited_ > options_.budget) {
      throw BudgetExceeded("coalition deviation search exceeded budget", options_.budget, visited_);
    }
  }

  std::optional<DeviationWitness> search_coalition(const std::vector<PlayerId>& coalition) {
    const std::size_t m = idx(inst_.resource_count());
    std::vector<char> member(idx(inst_.players), 0);
    Rational min_t = base_.finishing_times[idx(coalition.front())];
    for (PlayerId i : coalition) {
      member[idx(i)] = 1;
      min_t = min(min_t, base_.finishing_times[idx(i)]);
    }

    load_.assign(m, Rational());
    if (prune_) {
      for (PlayerId j = 0; j < inst_.players; ++j) {
        if (member[idx(j)]) continue;
        const Rational& tj = base_.finishing_times[idx(j)];
        const Rational lb = tj < min_t ? base_.bandwidths[idx(j)] : inst_.rates[idx(j)].integral(min_t);
        if (lb.is_zero()) continue;
        for (ResourceId r : state_[idx(j)]) load_[idx(r)] += lb;
      }
    }

    candidates_.assign(coalition.size(), {});
    for (std::size_t c = 0; c < coalition.size(); ++c) {
      const PlayerId i = coalition[c];
      const auto& list = catalog_.of(i);
      for (std::size_t k = 0; k < list.size(); ++k) {
        if (static_cast<long>(k) == current_[idx(i)]) continue;
        if (prune_ && !fits(list[k], base_.bandwidths[idx(i)])) continue;
        candidates_[c].push_back(k);
      }
      if (candidates_[c].empty()) return std::nullopt;
    }

    if (coalition.size() == 1 && monotone_) {
      const PlayerId i = coalition.front();
      SingleValues single(inst_, state_, i, options_.fill);
      for (std::size_t k : candidates_.front()) {
        tick();
        const Strategy& s = catalog_.of(i)[k];
        Rational v = single.strategy_value(s);
        if (base_.bandwidths[idx(i)] < v) {
          return DeviationWitness{{i}, {s}, {base_.bandwidths[idx(i)]}, {std::move(v)}};
        }
      }
      return std::nullopt;
    }

    trial_ = state_;
    choice_.assign(coalition.size(), 0);
    return descend(coalition, 0);
  }

  bool fits(const Strategy& s, const Rational& old) const {
    for (ResourceId r : s) {
      if (!(load_[idx(r)] + old < inst_.capacity(r))) return false;
    }
    return true;
  }

  std::optional<DeviationWitness> descend(const std::vector<PlayerId>& coalition, std::size_t depth) {
    if (depth == coalition.size()) {
      tick();
      const AllocationResult next = progressive_fill(inst_, trial_, options_.fill);
      for (PlayerId i : coalition) {
        if (!(base_.bandwidths[idx(i)] < next.bandwidths[idx(i)])) return std::nullopt;
      }
      DeviationWitness w;
      w.coalition = coalition;
      for (PlayerId i : coalition) {
        w.strategies.push_back(trial_[idx(i)]);
        w.old_bandwidths.push_back(base_.bandwidths[idx(i)]);
        w.new_bandwidths.push_back(next.bandwidths[idx(i)]);
      }
      return w;
    }
    const PlayerId i = coalition[depth];
    const Rational& old = base_.bandwidths[idx(i)];
    for (std::size_t k : candidates_[depth]) {
      const Strategy& s = catalog_.of(i)[k];
      if (prune_) {
        tick();
        if (!fits(s, old)) continue;
        for (ResourceId r : s) load_[idx(r)] += old;
      }
      trial_[idx(i)] = s;
      auto found = descend(coalition, depth + 1);
      if (prune_) {
        for (ResourceId r : s) load_[idx(r)] -= old;
      }
      if (found) return found;
    }
    trial_[idx(i)] = state_[idx(i)];
    return std::nullopt;
  }

  const GameInstance& inst_;
  const State& state_;
  const AllocationResult& base_;
  const StrategyCatalog& catalog_;
  const SearchOptions& options_;
  bool monotone_;
  bool prune_;
  std::vector<long> current_;
  std::vector<Rational> load_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> choice_;
  State trial_;
  std::uint64_t visited_ = 0;
};

void check_potential_step(const AllocationResult& before, const AllocationResult& after,
                          const DeviationWitness& w) {
  if (!(potential_vector(before) < potential_vector(after))) {
    throw InternalError("improving deviation did not raise the finishing-time potential");
  }
  Rational min_t = before.finishing_times[idx(w.coalition.front())];
  for (PlayerId i : w.coalition) min_t = min(min_t, before.finishing_times[idx(i)]);
  for (std::size_t i = 0; i < before.finishing_times.size(); ++i) {
    const Rational& ts = before.finishing_times[i];
    const Rational& tt = after.finishing_times[i];
    if (!(min_t < ts) && tt < ts) throw InternalError("finishing time dropped below its earlier value");
    if (min_t < ts && !(min_t < tt)) throw InternalError("finishing time fell to the coalition minimum");
  }
}

}  // namespace

Rational single_resource_bandwidth(const GameInstance& inst, const State& state, PlayerId player,
                                   ResourceId resource, const FillOptions& fill) {
  State trial = state;
  trial[idx(player)] = Strategy{resource};
  return progressive_fill(inst, trial, fill).bandwidths[idx(player)];
}

BestResponse best_response(const GameInstance& inst, const State& state, PlayerId player,
                           const SearchOptions& options) {
  return best_response_impl(inst, state, player, nullptr, options);
}

EquilibriumCheck is_nash(const GameInstance& inst, const State& state, const SearchOptions& options) {
  const AllocationResult base = progressive_fill(inst, state, options.fill);
  std::optional<StrategyCatalog> catalog;
  if (!monotone_search(inst, options)) catalog.emplace(inst, options.strategy_limit);
  auto w = unilateral_search(inst, state, base, catalog ? &*catalog : nullptr, options, false);
  return {!w.has_value(), std::move(w)};
}

EquilibriumCheck is_strong_equilibrium(const GameInstance& inst, const State& state, int max_coalition_size,
                                       const SearchOptions& options) {
  const AllocationResult base = progressive_fill(inst, state, options.fill);
  const StrategyCatalog catalog(inst, options.strategy_limit);
  auto w = CoalitionSearch(inst, state, base, catalog, options).run(max_coalition_size);
  return {!w.has_value(), std::move(w)};
}

EquilibriumCheck is_nash(const GameInstance& inst, const StrategyCatalog& catalog, const State& state,
                         const SearchOptions& options) {
  const AllocationResult base = progressive_fill(inst, state, options.fill);
  auto w = unilateral_search(inst, state, base, &catalog, options, false);
  return {!w.has_value(), std::move(w)};
}

EquilibriumCheck is_strong_equilibrium(const GameInstance& inst, const StrategyCatalog& catalog, const State& state,
                                       int max_coalition_size, const SearchOptions& options) {
  const AllocationResult base = progressive_fill(inst, state, options.fill);
  auto w = CoalitionSearch(inst, state, base, catalog, options).run(max_coalition_size);
  return {!w.has_value(), std::move(w)};
}

DynamicsTrace improvement_dynamics(const GameInstance& inst, const State& start, DynamicsMode mode,
                                   std::size_t step_limit, const SearchOptions& options) {
  if (!monotone_search(inst, options)) throw EngineError("improvement dynamics need monotone rate functions");
  std::optional<StrategyCatalog> catalog;
  if (mode.kind == DynamicsMode::Kind::coalitional) catalog.emplace(inst, options.strategy_limit);

  DynamicsTrace trace;
  trace.start = start;
  AllocationResult current = progressive_fill(inst, start, options.fill);
  trace.start_potential = potential_vector(current);
  State state = start;
  for (;;) {
    std::optional<DeviationWitness> w;
    if (mode.kind == DynamicsMode::Kind::unilateral) {
      w = unilateral_search(inst, state, current, nullptr, options, true);
    } else {
      w = CoalitionSearch(inst, state, current, *catalog, options).run(mode.k);
    }
    if (!w) break;
    if (trace.steps.size() >= step_limit) {
      throw BudgetExceeded("improvement dynamics reached the step limit", step_limit, trace.steps.size() + 1);
    }
    State next = state;
    for (std::size_t c = 0; c < w->coalition.size(); ++c) next[idx(w->coalition[c])] = w->strategies[c];
    AllocationResult after = progressive_fill(inst, next, options.fill);
    for (std::size_t c = 0; c < w->coalition.size(); ++c) {
      if (!(w->old_bandwidths[c] < after.bandwidths[idx(w->coalition[c])])) {
        throw InternalError("applied deviation did not improve a coalition member");
      }
    }
    check_potential_step(current, after, *w);
    trace.steps.push_back(DynamicsStep{*w, next, potential_vector(after)});
    state = std::move(next);
    current = std::move(after);
  }
  trace.terminal = state;
  return trace;
}

std::uint64_t state_count(const StrategyCatalog& catalog) {
  std::uint64_t total = 1;
  for (int p = 0; p < catalog.players(); ++p) {
    const std::uint64_t s = catalog.size(p);
    if (s != 0 && total > std::numeric_limits<std::uint64_t>::max() / s) return std::numeric_limits<std::uint64_t>::max();
    total *= s;
  }
  return total;
}

std::optional<State> find_pne_brute(const GameInstance& inst, const SearchOptions& options) {
  const StrategyCatalog catalog(inst, options.strategy_limit);
  const std::uint64_t total = state_count(catalog);
  if (total > options.budget) throw BudgetExceeded("state space exceeds budget", options.budget, total);
  const bool monotone = monotone_search(inst, options);
  std::optional<State> found;
  for_each_state(catalog, [&](const State& s, const auto&) {
    const AllocationResult base = progressive_fill(inst, s, options.fill);
    if (!unilateral_search(inst, s, base, monotone ? nullptr : &catalog, options, false)) {
      found = s;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace pfg
