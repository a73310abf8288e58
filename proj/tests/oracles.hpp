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


// Independent reference implementations. Each is deliberately naive and
// shares no code with the routine it checks beyond the data model.

#ifndef PFG_TESTS_ORACLES_HPP
#define PFG_TESTS_ORACLES_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "pfg/game.hpp"
#include "pfg/waterfill.hpp"

namespace pfg::oracle {

// Fixed-step forward simulation of progressive filling. Each step advances
// every unfixed player by V_i(t + dt) - V_i(t); when a step would overload a
// resource its unfixed users are frozen before the step.
inline std::vector<Rational> forward_simulation(const GameInstance& g, const State& s, const Rational& dt,
                                                long max_steps = 200000) {
  const auto n = static_cast<std::size_t>(g.players);
  std::vector<Rational> b(n);
  std::vector<bool> active(n, true);
  Rational t;
  auto load = [&](const std::vector<Rational>& bw, int r) {
    Rational sum;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(s[i].begin(), s[i].end(), r) != s[i].end()) sum += bw[i];
    }
    return sum;
  };
  for (long step = 0; step < max_steps; ++step) {
    if (std::none_of(active.begin(), active.end(), [](bool a) { return a; })) break;
    std::vector<Rational> next = b;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i]) next[i] = g.rates[i].integral(t + dt);
    }
    std::vector<bool> freeze(n, false);
    bool over = false;
    for (int r = 0; r < g.resource_count(); ++r) {
      if (load(next, r) > g.capacity(r)) {
        over = true;
        for (std::size_t i = 0; i < n; ++i) {
          if (active[i] && std::find(s[i].begin(), s[i].end(), r) != s[i].end()) freeze[i] = true;
        }
      }
    }
    if (over) {
      for (std::size_t i = 0; i < n; ++i) {
        if (freeze[i]) active[i] = false;
      }
      continue;
    }
    b = next;
    t += dt;
    for (int r = 0; r < g.resource_count(); ++r) {
      if (load(b, r) == g.capacity(r)) {
        for (std::size_t i = 0; i < n; ++i) {
          if (std::find(s[i].begin(), s[i].end(), r) != s[i].end()) active[i] = false;
        }
      }
    }
  }
  return b;
}

// All node-simple source-sink paths by plain depth-first search, as resource
// sequences in discovery order.
inline std::vector<Strategy> dfs_paths(const NetworkSpace& ns, int source, int sink) {
  std::vector<Strategy> out;
  std::vector<bool> seen(static_cast<std::size_t>(std::max(ns.node_count(), 1)), false);
  Strategy cur;
  auto rec = [&](auto&& self, int v) -> void {
    if (v == sink) {
      out.push_back(cur);
      return;
    }
    seen[static_cast<std::size_t>(v)] = true;
    for (const auto& a : ns.arcs) {
      if (a.from != v || seen[static_cast<std::size_t>(a.to)]) continue;
      cur.push_back(a.resource);
      self(self, a.to);
      cur.pop_back();
    }
    seen[static_cast<std::size_t>(v)] = false;
  };
  rec(rec, source);
  return out;
}

// Calls visit(state) for every element of the product of `lists`.
template <typename Visit>
void every_state(const std::vector<std::vector<Strategy>>& lists, Visit visit) {
  const std::size_t n = lists.size();
  for (const auto& l : lists) {
    if (l.empty()) return;
  }
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    State s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(lists[i][idx[i]]);
    visit(s);
    std::size_t p = n;
    while (p > 0) {
      --p;
      if (++idx[p] < lists[p].size()) break;
      idx[p] = 0;
      if (p == 0) return;
    }
    if (n == 0) return;
  }
}

inline std::vector<std::vector<Strategy>> strategy_lists(const GameInstance& g) {
  std::vector<std::vector<Strategy>> out;
  for (int i = 0; i < g.players; ++i) {
    if (g.is_network()) {
      const auto [s, t] = g.network().endpoints[static_cast<std::size_t>(i)];
      out.push_back(dfs_paths(g.network(), s, t));
    } else {
      out.push_back(g.explicit_space().strategies[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

inline bool packing_feasible(const std::vector<std::vector<Strategy>>& lists, const std::vector<int>& bounds) {
  bool found = false;
  every_state(lists, [&](const State& s) {
    if (found) return;
    std::vector<int> count(bounds.size(), 0);
    for (const auto& st : s) {
      for (int r : st) ++count[static_cast<std::size_t>(r)];
    }
    bool ok = true;
    for (std::size_t r = 0; r < bounds.size(); ++r) ok = ok && count[r] <= bounds[r];
    found = ok;
  });
  return found;
}

inline bool packing_respects(const State& s, const std::vector<int>& bounds) {
  std::vector<int> count(bounds.size(), 0);
  for (const auto& st : s) {
    for (int r : st) ++count[static_cast<std::size_t>(r)];
  }
  for (std::size_t r = 0; r < bounds.size(); ++r) {
    if (count[r] > bounds[r]) return false;
  }
  return true;
}

// Solves a square system by Gauss-Jordan elimination; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) b[c] /= a[c][c];
  return b;
}

// max sum(a) subject to per-resource loads <= capacity and a >= 0, by
// enumerating every basic solution.
inline Rational lp_vertex_max(const GameInstance& g, const State& s) {
  const std::size_t n = s.size();
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (int r = 0; r < g.resource_count(); ++r) {
    std::vector<Rational> row(n);
    bool used = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(s[i].begin(), s[i].end(), r) != s[i].end()) {
        row[i] = 1;
        used = true;
      }
    }
    if (used) {
      rows.push_back(row);
      rhs.push_back(g.capacity(r));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n);
    row[i] = -1;
    rows.push_back(row);
    rhs.push_back(0);
  }
  std::optional<Rational> best;
  const std::size_t m = rows.size();
  std::vector<std::size_t> pick(n);
  auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
    if (depth == n) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (auto k : pick) {
        a.push_back(rows[k]);
        b.push_back(rhs[k]);
      }
      const auto x = solve_square(a, b);
      if (!x) return;
      for (std::size_t k = 0; k < m; ++k) {
        Rational lhs;
        for (std::size_t i = 0; i < n; ++i) lhs += rows[k][i] * (*x)[i];
        if (lhs > rhs[k]) return;
      }
      Rational v;
      for (const auto& xi : *x) v += xi;
      if (!best || v > *best) best = v;
      return;
    }
    for (std::size_t k = start; k < m; ++k) {
      pick[depth] = k;
      self(self, k + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return best.value_or(Rational(0));
}

inline Rational mcap_brute(const GameInstance& g) {
  Rational best;
  every_state(strategy_lists(g), [&](const State& s) { best = max(best, lp_vertex_max(g, s)); });
  return best;
}

inline FillOptions fill_for(const GameInstance& g) {
  FillOptions f;
  f.nonstandard = !g.all_monotone();
  return f;
}

// Existence of an improving coalition of size <= k, checked straight from the
// definition: every coalition, every joint strategy of its members, improving
// when every member strictly gains.
inline bool improving_coalition_exists(const GameInstance& g, const State& s, int k) {
  const auto lists = strategy_lists(g);
  const auto base = progressive_fill(g, s, fill_for(g)).bandwidths;
  const int n = g.players;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) members.push_back(i);
    }
    if (static_cast<int>(members.size()) > k) continue;
    std::vector<std::vector<Strategy>> sub;
    for (int i : members) sub.push_back(lists[static_cast<std::size_t>(i)]);
    bool found = false;
    every_state(sub, [&](const State& joint) {
      if (found) return;
      State t = s;
      for (std::size_t j = 0; j < members.size(); ++j) t[static_cast<std::size_t>(members[j])] = joint[j];
      const auto after = progressive_fill(g, t, fill_for(g)).bandwidths;
      bool all = true;
      for (int i : members) all = all && after[static_cast<std::size_t>(i)] > base[static_cast<std::size_t>(i)];
      found = all;
    });
    if (found) return true;
  }
  return false;
}

inline Rational best_response_brute(const GameInstance& g, const State& s, int player) {
  Rational best;
  const auto lists = strategy_lists(g);
  for (const auto& st : lists[static_cast<std::size_t>(player)]) {
    State t = s;
    t[static_cast<std::size_t>(player)] = st;
    best = max(best, progressive_fill(g, t, fill_for(g)).bandwidths[static_cast<std::size_t>(player)]);
  }
  return best;
}

}  // namespace pfg::oracle

#endif  // PFG_TESTS_ORACLES_HPP
