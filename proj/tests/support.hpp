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


// Small builders shared by the test binaries.

#ifndef PFG_TESTS_SUPPORT_HPP
#define PFG_TESTS_SUPPORT_HPP

#include <utility>
#include <vector>

#include "pfg/game.hpp"

namespace pfg::test {

inline Rational q(long p, long d = 1) { return Rational(p, d); }

inline std::vector<Resource> resources(const std::vector<Rational>& caps) {
  std::vector<Resource> out;
  for (std::size_t r = 0; r < caps.size(); ++r) out.push_back({static_cast<int>(r), caps[r]});
  return out;
}

inline std::vector<RateFunction> unit_rates(int n) { return std::vector<RateFunction>(static_cast<std::size_t>(n)); }

inline std::vector<RateFunction> constant_rates(const std::vector<Rational>& rates) {
  std::vector<RateFunction> out;
  for (const auto& v : rates) out.push_back(RateFunction::constant(v));
  return out;
}

inline GameInstance explicit_game(const std::vector<Rational>& caps, std::vector<std::vector<Strategy>> lists,
                                  std::vector<RateFunction> rates = {}) {
  GameInstance g;
  g.players = static_cast<int>(lists.size());
  g.resources = resources(caps);
  g.space = ExplicitSpace{std::move(lists)};
  g.rates = rates.empty() ? unit_rates(g.players) : std::move(rates);
  return g;
}

// Every player chooses among the same singleton strategies {r} for all r.
inline GameInstance singleton_game(const std::vector<Rational>& caps, int players) {
  std::vector<Strategy> all;
  for (std::size_t r = 0; r < caps.size(); ++r) all.push_back({static_cast<int>(r)});
  return explicit_game(caps, std::vector<std::vector<Strategy>>(static_cast<std::size_t>(players), all));
}

// Arc k carries resource k.
inline GameInstance network_game(const std::vector<Rational>& caps, const std::vector<std::pair<int, int>>& arcs,
                                 std::vector<std::pair<int, int>> endpoints, std::vector<RateFunction> rates = {}) {
  GameInstance g;
  g.players = static_cast<int>(endpoints.size());
  g.resources = resources(caps);
  NetworkSpace ns;
  for (std::size_t k = 0; k < arcs.size(); ++k) ns.arcs.push_back({static_cast<int>(k), arcs[k].first, arcs[k].second});
  ns.endpoints = std::move(endpoints);
  g.space = std::move(ns);
  g.rates = rates.empty() ? unit_rates(g.players) : std::move(rates);
  return g;
}

inline std::vector<Rational> qs(std::initializer_list<Rational> v) { return v; }

}  // namespace pfg::test

#endif  // PFG_TESTS_SUPPORT_HPP
