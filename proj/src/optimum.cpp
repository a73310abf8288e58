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


#include "pfg/optimum.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "pfg/errors.hpp"
#include "pfg/network.hpp"
#include "pfg/packing.hpp"
#include "pfg/simplex.hpp"
#include "pfg/waterfill.hpp"

namespace pfg {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

// Capacity rows of the allocation LP over `offset + n` variables, where the
// allocation of player i is variable offset + i.
void add_capacity_rows(LinearProgram& lp, const GameInstance& inst, const State& state, std::size_t offset) {
  const std::size_t m = idx(inst.resource_count());
  std::vector<std::vector<Rational>> rows(m);
  for (std::size_t i = 0; i < state.size(); ++i) {
    for (ResourceId r : state[i]) {
      auto& row = rows[idx(r)];
      if (row.empty()) row.assign(lp.variables, Rational());
      row[offset + i] += 1;
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (!rows[r].empty()) lp.add(std::move(rows[r]), LinearProgram::Sense::le, inst.resources[r].capacity);
  }
}

LinearProgram allocation_lp(const GameInstance& inst, const State& state) {
  LinearProgram lp;
  lp.variables = state.size();
  lp.objective.assign(state.size(), Rational(1));
  add_capacity_rows(lp, inst, state, 0);
  return lp;
}

Rational state_mcap_value(const GameInstance& inst, const State& state) {
  const LpResult res = solve_lp(allocation_lp(inst, state));
  if (!res.optimal()) throw InternalError("allocation LP on a state was not solvable");
  return res.value;
}

// Cheap upper bound: every player is limited by its smallest capacity.
Rational state_mcap_bound(const GameInstance& inst, const State& state) {
  Rational total;
  for (const Strategy& s : state) {
    Rational low = inst.capacity(s.front());
    for (ResourceId r : s) low = min(low, inst.capacity(r));
    total += low;
  }
  return total;
}

std::optional<McapSolution> flow_certificate(const GameInstance& inst) {
  if (!inst.is_network()) return std::nullopt;
  const NetworkSpace& net = inst.network();
  if (!net.single_commodity() || !net.one_arc_per_resource()) return std::nullopt;
  const Digraph g(net);
  const auto [s, t] = net.endpoints.front();
  std::vector<Rational> cap;
  for (const Arc& a : g.arcs()) cap.push_back(inst.capacity(a.resource));
  auto paths = path_decomposition(g, s, t, rational_max_flow(g, s, t, cap));
  const std::size_t n = idx(inst.players);
  if (paths.empty()) return std::nullopt;
  if (paths.size() > n) {
    // Keep the n heaviest paths; certified when they meet the bound
    // min(max flow, n * widest bottleneck).
    Rational flow;
    for (const auto& p : paths) flow += p.amount;
    std::vector<Rational> by_resource;
    for (const auto& r : inst.resources) by_resource.push_back(r.capacity);
    const auto wide = widest_path(g, s, t, by_resource);
    const Rational bound = min(flow, wide->bottleneck * Rational(static_cast<long>(n)));
    std::stable_sort(paths.begin(), paths.end(),
                     [](const WeightedPath& a, const WeightedPath& b) { return b.amount < a.amount; });
    State state;
    for (std::size_t k = 0; k < n; ++k) {
      Strategy strategy;
      for (int a : paths[k].arcs) strategy.push_back(g.arc(a).resource);
      state.push_back(std::move(strategy));
    }
    McapSolution sol = mcap_for_state(inst, state);
    if (sol.value == bound) return sol;
    return std::nullopt;
  }

  // Extra players share the path carrying the most flow.
  std::size_t widest = 0;
  for (std::size_t k = 1; k < paths.size(); ++k) {
    if (paths[widest].amount < paths[k].amount) widest = k;
  }
  const std::size_t sharers = n - paths.size() + 1;
  McapSolution sol;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    Strategy strategy;
    for (int a : paths[k].arcs) strategy.push_back(g.arc(a).resource);
    const std::size_t copies = k == widest ? sharers : 1;
    for (std::size_t c = 0; c < copies; ++c) {
      sol.state.push_back(strategy);
      sol.allocation.push_back(paths[k].amount / Rational(static_cast<long>(copies)));
    }
    sol.value += paths[k].amount;
  }
  return sol;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool has_tight_resource(const GameInstance& inst, const State& state, const std::vector<Rational>& a,
                        std::size_t player) {
  for (ResourceId r : state[player]) {
    Rational load;
    for (std::size_t j = 0; j < state.size(); ++j) {
      if (std::find(state[j].begin(), state[j].end(), r) != state[j].end()) load += a[j];
    }
    if (load == inst.capacity(r)) return true;
  }
  return false;
}

std::vector<Rational> raise_to_maximal(const GameInstance& inst, const State& state, std::vector<Rational> a) {
  bool maximal = true;
  for (std::size_t i = 0; i < a.size(); ++i) maximal = maximal && has_tight_resource(inst, state, a, i);
  if (maximal) return a;
  LinearProgram lp = allocation_lp(inst, state);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<Rational> row(a.size());
    row[i] = 1;
    lp.add(std::move(row), LinearProgram::Sense::ge, a[i]);
  }
  LpResult res = solve_lp_lexmax(lp);
  if (!res.optimal()) throw InternalError("raising a feasible allocation failed");
  return res.x;
}

}  // namespace

McapSolution mcap_for_state(const GameInstance& inst, const State& state) {
  validate_state(inst, state);
  const LpResult res = solve_lp_lexmax(allocation_lp(inst, state));
  if (!res.optimal()) throw InternalError("allocation LP on a state was not solvable");
  return {state, res.x, res.value};
}

Rational max_min_optimal_share(const GameInstance& inst, const State& state, const Rational& value) {
  const std::size_t n = state.size();
  LinearProgram lp;
  lp.variables = n + 1;
  lp.objective.assign(n + 1, Rational());
  lp.objective[0] = 1;
  add_capacity_rows(lp, inst, state, 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n + 1);
    row[0] = -1;
    row[i + 1] = 1;
    lp.add(std::move(row), LinearProgram::Sense::ge, Rational());
  }
  std::vector<Rational> total(n + 1, Rational(1));
  total[0] = 0;
  lp.add(std::move(total), LinearProgram::Sense::ge, value);
  const LpResult res = solve_lp(lp);
  return res.optimal() ? res.x[0] : Rational();
}

std::vector<std::vector<PlayerId>> symmetry_groups(const GameInstance& inst, const StrategyCatalog& catalog,
                                                   bool by_rate) {
  std::vector<std::vector<PlayerId>> groups;
  for (PlayerId p = 0; p < inst.players; ++p) {
    bool placed = false;
    for (auto& g : groups) {
      const PlayerId q = g.front();
      if (catalog.of(p) != catalog.of(q)) continue;
      if (by_rate && !(inst.rates[idx(p)] == inst.rates[idx(q)])) continue;
      g.push_back(p);
      placed = true;
      break;
    }
    if (!placed) groups.push_back({p});
  }
  return groups;
}

std::uint64_t canonical_state_count(const std::vector<std::vector<PlayerId>>& groups,
                                    const StrategyCatalog& catalog) {
  mpz_class total = 1;
  for (const auto& g : groups) {
    const unsigned long s = catalog.size(g.front());
    if (s == 0) return 0;
    total *= binomial(s + g.size() - 1, g.size());
  }
  if (total > mpz_class(std::to_string(std::numeric_limits<std::uint64_t>::max()))) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return std::stoull(total.get_str());
}

McapExactResult mcap_exact(const GameInstance& inst, const McapOptions& options) {
  McapExactResult out;
  if (options.flow_certificate && !options.pf_optimum) {
    if (auto sol = flow_certificate(inst)) {
      out.mcap = std::move(*sol);
      out.certified_by_flow = true;
      return out;
    }
  }

  const StrategyCatalog catalog(inst, options.strategy_limit);
  const auto groups = symmetry_groups(inst, catalog, options.pf_optimum);
  const std::uint64_t total = canonical_state_count(groups, catalog);
  if (total > options.budget) throw BudgetExceeded("state space exceeds budget", options.budget, total);

  const FillOptions fill{!inst.all_monotone(), std::nullopt};
  std::optional<State> best_state;
  Rational best_value;
  bool best_positive = false;
  std::optional<State> pf_state;
  Rational pf_value;
  std::vector<Rational> pf_bandwidths;

  for_each_canonical_state(groups, catalog, [&](const State& s) {
    ++out.states_scanned;
    if (options.pf_optimum) {
      AllocationResult res = progressive_fill(inst, s, fill);
      Rational sw;
      for (const auto& b : res.bandwidths) sw += b;
      if (!pf_state || pf_value < sw) {
        pf_state = s;
        pf_value = std::move(sw);
        pf_bandwidths = std::move(res.bandwidths);
      }
    }
    if (best_state && state_mcap_bound(inst, s) < best_value) return true;
    if (best_state && !(options.prefer_positive && !best_positive) && !(best_value < state_mcap_bound(inst, s))) {
      return true;
    }
    const Rational v = state_mcap_value(inst, s);
    if (!best_state || best_value < v) {
      best_state = s;
      best_value = v;
      best_positive = options.prefer_positive && max_min_optimal_share(inst, s, v).sign() > 0;
    } else if (options.prefer_positive && !best_positive && v == best_value &&
               max_min_optimal_share(inst, s, v).sign() > 0) {
      best_state = s;
      best_positive = true;
    }
    return true;
  });

  if (!best_state) throw InternalError("no state to optimise over");
  out.mcap = mcap_for_state(inst, *best_state);
  if (pf_state) out.pf_optimum = McapSolution{*pf_state, std::move(pf_bandwidths), pf_value};
  return out;
}

Rational uniform_mcap(const GameInstance& inst, const McapOptions& options) {
  const int n = inst.players;
  std::vector<Rational> candidates;
  for (const Resource& r : inst.resources) {
    if (r.capacity.sign() <= 0) continue;
    for (int j = 1; j <= n; ++j) candidates.push_back(r.capacity / Rational(j));
  }
  std::sort(candidates.begin(), candidates.end(), [](const Rational& a, const Rational& b) { return b < a; });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const bool network = inst.is_network() && network_oracle_applicable(inst.network());
  std::optional<StrategyCatalog> catalog;
  std::vector<std::vector<Strategy>> sets;
  if (!network) {
    catalog.emplace(inst, options.strategy_limit);
    for (PlayerId p = 0; p < n; ++p) sets.push_back(catalog->of(p));
  }
  for (const Rational& v : candidates) {
    PackingBounds u;
    for (const Resource& r : inst.resources) {
      const mpz_class fl = (r.capacity / v).floor();
      u.push_back(fl >= n ? n : static_cast<int>(fl.get_si()));
    }
    const bool feasible = network ? pack_network(inst.network(), idx(n), u).has_value()
                                  : pack_explicit(sets, u).has_value();
    if (feasible) return v;
  }
  return Rational();
}

McapSolution three_splittable_approx(const GameInstance& inst) {
  if (!inst.is_network() || inst.players != 3) {
    throw EngineError("three-path approximation needs a network game with exactly 3 players");
  }
  const NetworkSpace& net = inst.network();
  if (!net.single_commodity() || !net.one_arc_per_resource()) {
    throw EngineError("three-path approximation needs a single-commodity network with one arc per resource");
  }
  const Digraph g(net);
  const auto [s, t] = net.endpoints.front();
  if (!reachable(g, s, t)) throw EngineError("sink is not reachable from the source");
  std::vector<Rational> cap;
  for (const Arc& a : g.arcs()) cap.push_back(inst.capacity(a.resource));
  std::vector<Rational> flow(cap.size());

  const auto to_strategy = [&](const std::vector<int>& arcs) {
    Strategy out;
    for (int a : arcs) out.push_back(g.arc(a).resource);
    return out;
  };

  std::vector<WeightedPath> paths;
  const auto first = max_capacity_augmenting_path(g, s, t, cap, flow);
  if (!first) {
    // Every path is blocked by a zero capacity; any path gives value 0.
    const auto any = widest_path(g, s, t, std::vector<Rational>(idx(inst.resource_count())));
    McapSolution sol;
    for (int k = 0; k < 3; ++k) {
      sol.state.push_back(any->path);
      sol.allocation.push_back(Rational());
    }
    return sol;
  }
  std::vector<int> p1;
  for (const ResidualStep& st : first->steps) {
    p1.push_back(st.arc);
    flow[idx(st.arc)] += first->amount;
  }
  const auto second = max_capacity_augmenting_path(g, s, t, cap, flow);
  if (!second) {
    paths.push_back({p1, first->amount});
  } else {
    const Rational& f1 = first->amount;
    const Rational& f2 = second->amount;
    if (f1 < f2) throw InternalError("second augmentation exceeded the first");
    std::vector<std::int64_t> unit(cap.size(), 0);
    for (int a : p1) ++unit[idx(a)];
    for (const ResidualStep& st : second->steps) unit[idx(st.arc)] += st.forward ? 1 : -1;
    if (f2 < f1) paths.push_back({p1, f1 - f2});
    for (auto& arcs : unit_path_decomposition(g, s, t, unit, 2)) paths.push_back({std::move(arcs), f2});
  }

  if (paths.size() == 1) {
    const WeightedPath only = paths.front();
    paths.assign(3, {only.arcs, only.amount / Rational(3)});
  } else if (paths.size() == 2) {
    const std::size_t big = paths[0].amount < paths[1].amount ? 1 : 0;
    const WeightedPath half{paths[big].arcs, paths[big].amount / Rational(2)};
    paths[big] = half;
    paths.insert(paths.begin() + static_cast<std::ptrdiff_t>(big), half);
  }

  McapSolution sol;
  for (const auto& p : paths) {
    sol.state.push_back(to_strategy(p.arcs));
    sol.allocation.push_back(p.amount);
    sol.value += p.amount;
  }
  return sol;
}

std::string solution_digest(const McapSolution& solution) {
  std::string text = "state:";
  for (const auto& s : solution.state) {
    text += '[';
    for (ResourceId r : s) text += std::to_string(r) + ',';
    text += ']';
  }
  text += ";allocation:";
  for (const auto& a : solution.allocation) text += a.str() + ',';
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

DesignedGame design_rates(const GameInstance& inst, const McapSolution& solution) {
  validate_state(inst, solution.state);
  const std::size_t n = idx(inst.players);
  std::vector<std::string> errors;
  if (solution.allocation.size() != n) errors.push_back("allocation has the wrong number of entries");
  for (std::size_t i = 0; i < solution.allocation.size(); ++i) {
    if (solution.allocation[i].sign() < 0) errors.push_back("player " + std::to_string(i) + ": negative allocation");
  }
  if (errors.empty()) {
    for (std::size_t r = 0; r < idx(inst.resource_count()); ++r) {
      Rational load;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& s = solution.state[i];
        if (std::find(s.begin(), s.end(), static_cast<ResourceId>(r)) != s.end()) load += solution.allocation[i];
      }
      if (inst.resources[r].capacity < load) errors.push_back("allocation exceeds capacity at resource " + std::to_string(r));
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));

  std::vector<Rational> a = raise_to_maximal(inst, solution.state, solution.allocation);
  const auto has_zero = [](const std::vector<Rational>& v) {
    return std::any_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
  };
  if (has_zero(a)) {
    Rational value;
    for (const auto& x : a) value += x;
    if (max_min_optimal_share(inst, solution.state, value).sign() > 0) {
      LinearProgram lp;
      lp.variables = n + 1;
      lp.objective.assign(n + 1, Rational());
      lp.objective[0] = 1;
      add_capacity_rows(lp, inst, solution.state, 1);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> row(n + 1);
        row[0] = -1;
        row[i + 1] = 1;
        lp.add(std::move(row), LinearProgram::Sense::ge, Rational());
      }
      std::vector<Rational> total(n + 1, Rational(1));
      total[0] = 0;
      lp.add(std::move(total), LinearProgram::Sense::ge, value);
      const LpResult res = solve_lp_lexmax(lp);
      a.assign(res.x.begin() + 1, res.x.end());
      a = raise_to_maximal(inst, solution.state, std::move(a));
    }
  }
  const bool exact = !has_zero(a);
  if (!exact) {
    Rational low;
    Rational cap_sum;
    for (const auto& x : a) {
      if (x.sign() > 0 && (low.is_zero() || x < low)) low = x;
    }
    for (const auto& r : inst.resources) cap_sum += r.capacity;
    if (low.is_zero()) low = 1;
    const Rational eps = low / (Rational(static_cast<long>(n)) * (Rational(1) + cap_sum));
    for (auto& x : a) {
      if (x.is_zero()) x = eps;
    }
  }

  DesignedGame out{inst, solution.state, a, exact};
  for (std::size_t i = 0; i < n; ++i) out.instance.rates[i] = RateFunction::constant(a[i]);
  out.instance.provenance = "mcap-solution:fnv1a64:" + solution_digest(solution);
  return out;
}

StabilizeResult stabilize(const GameInstance& designed, const State& start, DynamicsMode mode,
                          std::size_t step_limit, const SearchOptions& options) {
  const auto welfare = [&](const State& s) {
    Rational sw;
    for (const auto& b : progressive_fill(designed, s, options.fill).bandwidths) sw += b;
    return sw;
  };
  DynamicsTrace trace = improvement_dynamics(designed, start, mode, step_limit, options);
  StabilizeResult out{trace.terminal, welfare(start), welfare(trace.terminal), trace.steps.size()};
  if (out.terminal_welfare < out.start_welfare) throw InternalError("stabilisation lowered social welfare");
  return out;
}

}  // namespace pfg
