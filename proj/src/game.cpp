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

#include "pfg/game.hpp"

#include <algorithm>
#include <set>

#include "pfg/errors.hpp"
#include "pfg/network.hpp"

namespace pfg {

RateFunction::RateFunction(std::vector<Piece> pieces, bool monotone)
    : pieces_(std::move(pieces)), monotone_(monotone) {
  prefix_.reserve(pieces_.size());
  Rational acc;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    if (k > 0) acc += pieces_[k - 1].rate * (pieces_[k].start - pieces_[k - 1].start);
    prefix_.push_back(acc);
  }
}

RateFunction RateFunction::constant(const Rational& rate) { return RateFunction({Piece{Rational(0), rate}}, true); }

std::size_t RateFunction::piece_index(const Rational& t) const {
  // Last piece whose start is <= t.
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](const Rational& x, const Piece& p) { return x < p.start; });
  return it == pieces_.begin() ? 0 : static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

Rational RateFunction::integral(const Rational& t) const {
  const std::size_t k = piece_index(t);
  return prefix_[k] + pieces_[k].rate * (t - pieces_[k].start);
}

const Rational& RateFunction::rate_at(const Rational& t) const { return pieces_[piece_index(t)].rate; }

std::vector<std::string> RateFunction::violations() const {
  std::vector<std::string> out;
  if (pieces_.empty()) {
    out.emplace_back("rate function has no pieces");
    return out;
  }
  if (!pieces_.front().start.is_zero()) out.emplace_back("first breakpoint is " + pieces_.front().start.str() + ", not 0");
  bool ordered = true;
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    if (!(pieces_[k - 1].start < pieces_[k].start)) {
      out.push_back("breakpoints not strictly increasing at piece " + std::to_string(k));
      ordered = false;
    }
  }
  if (pieces_.back().rate.sign() <= 0) out.push_back("non-positive final rate " + pieces_.back().rate.str());
  if (monotone_) {
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      if (pieces_[k].rate.sign() < 0) {
        out.push_back("monotone flag contradicted by negative rate at piece " + std::to_string(k));
      }
    }
  }
  if (ordered) {
    // V is piecewise linear with a positive final slope, so its minimum over
    // t >= 0 sits at a breakpoint.
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      const Rational end = k + 1 < pieces_.size() ? prefix_[k + 1] : prefix_[k];
      if (prefix_[k].sign() < 0 || end.sign() < 0) {
        out.push_back("aggregated rate negative near piece " + std::to_string(k));
        break;
      }
    }
  }
  return out;
}

Strategy canonical(const Strategy& s) {
  Strategy out = s;
  std::sort(out.begin(), out.end());
  return out;
}

bool same_resources(const Strategy& a, const Strategy& b) { return canonical(a) == canonical(b); }

int NetworkSpace::node_count() const {
  int top = -1;
  for (const Arc& a : arcs) top = std::max({top, a.from, a.to});
  for (const auto& [s, t] : endpoints) top = std::max({top, s, t});
  return top + 1;
}

bool NetworkSpace::single_commodity() const {
  return std::all_of(endpoints.begin(), endpoints.end(), [&](const auto& e) { return e == endpoints.front(); });
}

bool NetworkSpace::one_arc_per_resource() const {
  std::set<ResourceId> seen;
  for (const Arc& a : arcs) {
    if (!seen.insert(a.resource).second) return false;
  }
  return true;
}

bool GameInstance::all_monotone() const {
  return std::all_of(rates.begin(), rates.end(), [](const RateFunction& f) { return f.monotone(); });
}

bool GameInstance::constant_rates() const {
  return std::all_of(rates.begin(), rates.end(), [](const RateFunction& f) { return f.is_constant(); });
}

bool GameInstance::uniform_rates() const {
  return std::all_of(rates.begin(), rates.end(), [](const RateFunction& f) { return f.is_unit(); });
}

namespace {

std::string player_tag(std::size_t i) { return "player " + std::to_string(i) + ": "; }

void explicit_violations(const GameInstance& inst, const ExplicitSpace& space, std::vector<std::string>& out) {
  if (space.strategies.size() != static_cast<std::size_t>(std::max(inst.players, 0))) {
    out.push_back("explicit space lists " + std::to_string(space.strategies.size()) + " players, expected " +
                  std::to_string(inst.players));
  }
  for (std::size_t i = 0; i < space.strategies.size(); ++i) {
    const auto& list = space.strategies[i];
    if (list.empty()) out.push_back(player_tag(i) + "empty strategy set");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const Strategy& s = list[k];
      if (s.empty()) out.push_back(player_tag(i) + "strategy " + std::to_string(k) + " is empty");
      std::set<ResourceId> seen;
      for (ResourceId r : s) {
        if (r < 0 || r >= inst.resource_count()) {
          out.push_back(player_tag(i) + "strategy " + std::to_string(k) + " references unknown resource " +
                        std::to_string(r));
        } else if (!seen.insert(r).second) {
          out.push_back(player_tag(i) + "strategy " + std::to_string(k) + " repeats resource " + std::to_string(r));
        }
      }
    }
  }
}

void network_violations(const GameInstance& inst, const NetworkSpace& space, std::vector<std::string>& out) {
  bool arcs_ok = true;
  for (std::size_t k = 0; k < space.arcs.size(); ++k) {
    const Arc& a = space.arcs[k];
    if (a.resource < 0 || a.resource >= inst.resource_count()) {
      out.push_back("arc " + std::to_string(k) + " references unknown resource " + std::to_string(a.resource));
      arcs_ok = false;
    }
    if (a.from < 0 || a.to < 0) {
      out.push_back("arc " + std::to_string(k) + " has a negative node id");
      arcs_ok = false;
    }
  }
  if (space.endpoints.size() != static_cast<std::size_t>(std::max(inst.players, 0))) {
    out.push_back("network lists " + std::to_string(space.endpoints.size()) + " endpoint pairs, expected " +
                  std::to_string(inst.players));
  }
  for (std::size_t i = 0; i < space.endpoints.size(); ++i) {
    const auto [s, t] = space.endpoints[i];
    if (s < 0 || t < 0) {
      out.push_back(player_tag(i) + "negative endpoint node id");
      arcs_ok = false;
    }
  }
  if (!arcs_ok) return;
  const Digraph g(space);
  for (std::size_t i = 0; i < space.endpoints.size(); ++i) {
    const auto [s, t] = space.endpoints[i];
    if (s == t || !reachable(g, s, t)) out.push_back(player_tag(i) + "empty strategy set");
  }
}

}  // namespace

std::vector<std::string> instance_violations(const GameInstance& inst) {
  std::vector<std::string> out;
  if (inst.players < 1) out.push_back("instance needs at least one player");
  for (std::size_t r = 0; r < inst.resources.size(); ++r) {
    const Resource& res = inst.resources[r];
    if (res.id != static_cast<ResourceId>(r)) {
      out.push_back("resource at position " + std::to_string(r) + " has id " + std::to_string(res.id));
    }
    if (res.capacity.sign() < 0) out.push_back("negative capacity at resource " + std::to_string(r));
  }
  if (inst.rates.size() != static_cast<std::size_t>(std::max(inst.players, 0))) {
    out.push_back("instance has " + std::to_string(inst.rates.size()) + " rate functions, expected " +
                  std::to_string(inst.players));
  }
  for (std::size_t i = 0; i < inst.rates.size(); ++i) {
    for (const auto& v : inst.rates[i].violations()) out.push_back(player_tag(i) + v);
  }
  if (inst.is_network()) {
    network_violations(inst, inst.network(), out);
  } else {
    explicit_violations(inst, inst.explicit_space(), out);
  }
  return out;
}

GameInstance validate_instance(GameInstance candidate) {
  auto violations = instance_violations(candidate);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return candidate;
}

std::vector<Strategy> enumerate_strategies(const GameInstance& inst, PlayerId player,
                                           std::optional<std::size_t> limit) {
  if (!inst.is_network()) {
    const auto& list = inst.explicit_space().strategies[static_cast<std::size_t>(player)];
    if (limit && list.size() > *limit) throw BudgetExceeded("strategy enumeration exceeded limit", *limit, list.size());
    return list;
  }
  const auto& net = inst.network();
  const auto [s, t] = net.endpoints[static_cast<std::size_t>(player)];
  return enumerate_paths(Digraph(net), s, t, limit);
}

StrategyCatalog::StrategyCatalog(const GameInstance& inst, std::optional<std::size_t> limit) {
  std::optional<Digraph> g;
  if (inst.is_network()) g.emplace(inst.network());
  for (PlayerId p = 0; p < inst.players; ++p) {
    if (g) {
      const auto [s, t] = inst.network().endpoints[static_cast<std::size_t>(p)];
      // Players sharing endpoints share the path list.
      bool reused = false;
      for (PlayerId q = 0; q < p; ++q) {
        if (inst.network().endpoints[static_cast<std::size_t>(q)] == std::pair(s, t)) {
          lists_.push_back(lists_[static_cast<std::size_t>(q)]);
          sorted_.push_back(sorted_[static_cast<std::size_t>(q)]);
          reused = true;
          break;
        }
      }
      if (reused) continue;
      lists_.push_back(enumerate_paths(*g, s, t, limit));
    } else {
      lists_.push_back(enumerate_strategies(inst, p, limit));
    }
    std::vector<Strategy> sorted;
    sorted.reserve(lists_.back().size());
    for (const auto& s : lists_.back()) sorted.push_back(canonical(s));
    sorted_.push_back(std::move(sorted));
  }
}

std::optional<std::size_t> StrategyCatalog::index_of(PlayerId p, const Strategy& s) const {
  const Strategy key = canonical(s);
  const auto& list = sorted_[static_cast<std::size_t>(p)];
  for (std::size_t k = 0; k < list.size(); ++k) {
    if (list[k] == key) return k;
  }
  return std::nullopt;
}

std::vector<std::string> state_violations(const GameInstance& inst, const State& state) {
  std::vector<std::string> out;
  if (state.size() != static_cast<std::size_t>(inst.players)) {
    out.push_back("state has " + std::to_string(state.size()) + " strategies, expected " +
                  std::to_string(inst.players));
    return out;
  }
  std::optional<Digraph> g;
  if (inst.is_network()) g.emplace(inst.network());
  for (std::size_t i = 0; i < state.size(); ++i) {
    const Strategy& s = state[i];
    bool in_range = !s.empty();
    for (ResourceId r : s) {
      if (r < 0 || r >= inst.resource_count()) {
        out.push_back(player_tag(i) + "strategy references unknown resource " + std::to_string(r));
        in_range = false;
      }
    }
    if (!in_range) {
      if (s.empty()) out.push_back(player_tag(i) + "empty strategy");
      continue;
    }
    bool member = false;
    if (g) {
      const auto [src, dst] = inst.network().endpoints[i];
      member = g->resolve_path(src, dst, s).has_value();
    } else {
      const Strategy key = canonical(s);
      for (const auto& cand : inst.explicit_space().strategies[i]) {
        if (canonical(cand) == key) {
          member = true;
          break;
        }
      }
    }
    if (!member) out.push_back(player_tag(i) + "strategy is not in the strategy set");
  }
  return out;
}

void validate_state(const GameInstance& inst, const State& state) {
  auto violations = state_violations(inst, state);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

}  // namespace pfg
