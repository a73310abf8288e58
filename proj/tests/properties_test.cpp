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


#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pfg/equilibrium.hpp"
#include "pfg/generators.hpp"
#include "pfg/metrics.hpp"
#include "pfg/optimum.hpp"
#include "pfg/packing.hpp"
#include "support.hpp"

using namespace pfg;
using namespace pfg::test;

namespace {

bool uses(const Strategy& s, int r) { return std::find(s.begin(), s.end(), r) != s.end(); }

template <typename Visit>
void each_state(const GameInstance& g, Visit visit) {
  const StrategyCatalog cat(g, std::nullopt);
  for_each_state(cat, [&](const State& s, const auto&) {
    visit(s);
    return true;
  });
}

}  // namespace

TEST_CASE("allocations are feasible and saturation explains finishing times") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    RandomParams rp;
    rp.max_players = 5;
    rp.max_resources = 8;
    rp.max_strategies = 2;
    rp.uniform = seed % 3 == 0;
    rp.piecewise = seed % 3 == 1;
    rp.capacity_denominator = seed % 2 ? 1 : 3;
    const auto g = random_explicit_game(seed, rp);
    each_state(g, [&](const State& s) {
      const auto r = progressive_fill(g, s);
      for (int res = 0; res < g.resource_count(); ++res) {
        Rational load;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (uses(s[i], res)) load += r.bandwidths[i];
        }
        CHECK(load <= g.capacity(res));
        if (r.saturation_times[static_cast<std::size_t>(res)]) CHECK(load == g.capacity(res));
      }
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::optional<Rational> first;
        for (int res : s[i]) {
          const auto& t = r.saturation_times[static_cast<std::size_t>(res)];
          if (t && (!first || *t < *first)) first = *t;
        }
        REQUIRE(first);
        CHECK(r.finishing_times[i] == *first);
        CHECK(r.bandwidths[i] == g.rates[i].integral(r.finishing_times[i]));
      }
    });
  }
}

TEST_CASE("tie order does not matter") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    RandomParams rp;
    rp.max_resources = 5;
    rp.max_capacity = 2;  // small capacities make simultaneous saturation common
    rp.uniform = seed % 2 == 0;
    const auto g = random_explicit_game(seed, rp);
    std::vector<int> order(static_cast<std::size_t>(g.resource_count()));
    std::iota(order.begin(), order.end(), 0);
    each_state(g, [&](const State& s) {
      const auto base = progressive_fill(g, s);
      for (int k = 0; k < 3; ++k) {
        std::shuffle(order.begin(), order.end(), rng);
        FillOptions f;
        f.tie_priority = order;
        const auto other = progressive_fill(g, s, f);
        CHECK(other.bandwidths == base.bandwidths);
        CHECK(other.finishing_times == base.finishing_times);
      }
    });
  }
}

TEST_CASE("uniform integer bandwidths have bounded denominators") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto g = random_explicit_game(seed, RandomParams{});
    mpz_class bound = 1;
    for (int i = 0; i < g.players; ++i) bound *= g.players;
    each_state(g, [&](const State& s) {
      for (const auto& b : progressive_fill(g, s).bandwidths) CHECK(b.denominator() <= bound);
    });
  }
}

TEST_CASE("scaling constant rates rescales time only") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    RandomParams rp;
    rp.uniform = false;
    const auto g = random_explicit_game(seed, rp);
    if (!g.constant_rates()) continue;
    const Rational lambda(static_cast<long>(seed % 5) + 2, 3);
    GameInstance h = g;
    for (auto& f : h.rates) f = RateFunction::constant(f.pieces()[0].rate * lambda);
    each_state(g, [&](const State& s) {
      const auto a = progressive_fill(g, s);
      const auto b = progressive_fill(h, s);
      CHECK(a.bandwidths == b.bandwidths);
      for (std::size_t i = 0; i < s.size(); ++i) CHECK(b.finishing_times[i] == a.finishing_times[i] / lambda);
    });
  }
}

TEST_CASE("fill agrees with forward simulation") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    RandomParams rp;
    rp.max_players = 3;
    rp.max_resources = 4;
    rp.max_capacity = 3;
    const auto g = random_explicit_game(seed, rp);
    const State s = [&] {
      State out;
      for (const auto& l : g.explicit_space().strategies) out.push_back(l.front());
      return out;
    }();
    const auto exact = progressive_fill(g, s).bandwidths;
    const auto sim = oracle::forward_simulation(g, s, q(1, 100));
    for (std::size_t i = 0; i < exact.size(); ++i) CHECK(abs(exact[i] - sim[i]) <= q(g.players, 100));
  }
}

TEST_CASE("best response equals exhaustive scan") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomParams rp;
    rp.uniform = seed % 2 == 0;
    rp.piecewise = seed % 4 == 1;
    const auto g = random_explicit_game(seed, rp);
    each_state(g, [&](const State& s) {
      for (int i = 0; i < g.players; ++i) CHECK(best_response(g, s, i).bandwidth == oracle::best_response_brute(g, s, i));
    });
  }
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto g = random_network_game(seed, 3, 7, 5);
    each_state(g, [&](const State& s) {
      for (int i = 0; i < g.players; ++i) {
        const auto br = best_response(g, s, i);
        CHECK(br.bandwidth == oracle::best_response_brute(g, s, i));
        State t = s;
        t[static_cast<std::size_t>(i)] = br.strategy;
        CHECK(progressive_fill(g, t).bandwidths[static_cast<std::size_t>(i)] == br.bandwidth);
      }
    });
  }
}

TEST_CASE("network strategies match depth-first search") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto g = random_network_game(seed, 2, 10, 3);
    for (int i = 0; i < g.players; ++i) {
      const auto paths = enumerate_strategies(g, i);
      auto dfs = oracle::strategy_lists(g)[static_cast<std::size_t>(i)];
      std::sort(dfs.begin(), dfs.end());
      CHECK(paths == dfs);
    }
  }
}

TEST_CASE("dynamics terminate with increasing potentials") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    RandomParams rp;
    rp.uniform = seed % 3 == 0;
    rp.piecewise = seed % 3 == 1;
    const auto g = random_explicit_game(seed, rp);
    State start;
    for (const auto& l : g.explicit_space().strategies) start.push_back(l.front());
    for (auto mode : {DynamicsMode::unilateral(), DynamicsMode::coalitional(g.players)}) {
      const auto trace = improvement_dynamics(g, start, mode, 10000);
      auto prev = trace.start_potential;
      for (const auto& step : trace.steps) {
        CHECK(prev < step.potential);
        CHECK(step.potential == potential_vector(g, step.state));
        prev = step.potential;
      }
      if (mode.kind == DynamicsMode::Kind::unilateral) {
        CHECK(is_nash(g, trace.terminal).holds);
      } else {
        CHECK(is_strong_equilibrium(g, trace.terminal, g.players).holds);
      }
    }
  }
}

TEST_CASE("state LP matches vertex enumeration") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    RandomParams rp;
    rp.capacity_denominator = 4;
    const auto g = random_explicit_game(seed, rp);
    each_state(g, [&](const State& s) {
      const auto sol = mcap_for_state(g, s);
      CHECK(sol.value == oracle::lp_vertex_max(g, s));
      for (const auto& a : sol.allocation) CHECK(a >= 0);
    });
  }
}

TEST_CASE("dual greedy links uniform mcap and the optimum") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    RandomParams rp;
    rp.symmetric = true;
    const auto g = random_explicit_game(seed, rp);
    const auto dg = dual_greedy(g);
    const auto v = uniform_mcap(g);
    CHECK(*std::min_element(dg.bandwidths.begin(), dg.bandwidths.end()) == v);
    const Rational n(g.players);
    CHECK(n * v * (2 - 1 / n) >= mcap_exact(g).mcap.value);
    CHECK(is_strong_equilibrium(g, dg.state, g.players).holds);
    CHECK(progressive_fill(g, dg.state).bandwidths == dg.bandwidths);
  }
}

TEST_CASE("designed rates reproduce positive allocations at time one") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomParams rp;
    rp.max_players = 3;
    rp.uniform = seed % 2 == 0;
    const auto g = random_explicit_game(seed, rp);
    McapOptions o;
    o.prefer_positive = true;
    const auto sol = mcap_exact(g, o).mcap;
    const auto d = design_rates(g, sol);
    const auto r = progressive_fill(d.instance, d.state);
    if (d.exact) {
      CHECK(r.bandwidths == d.target);
      for (const auto& t : r.finishing_times) CHECK(t == 1);
    }
    CHECK(social_welfare(r) <= sol.value);
    const auto st = stabilize(d.instance, d.state, DynamicsMode::unilateral());
    CHECK(st.terminal_welfare >= st.start_welfare);
  }
}

TEST_CASE("price reports are ordered") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomParams rp;
    rp.max_players = 3;
    const auto g = random_explicit_game(seed, rp);
    for (auto kind : {EquilibriumKind::pne(), EquilibriumKind::se()}) {
      const auto r = price_metrics(g, OptimumBasis::mcap, kind);
      if (!r.has_equilibrium || !r.price_of_anarchy || !r.price_of_stability) continue;
      CHECK(*r.price_of_stability <= *r.price_of_anarchy);
      CHECK(*r.price_of_stability >= 1);
      CHECK(r.best_welfare >= r.worst_welfare);
    }
  }
}
