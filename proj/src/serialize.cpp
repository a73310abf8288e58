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


#include "pfg/serialize.hpp"

#include <fstream>

#include "pfg/errors.hpp"

namespace pfg {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw ValidationError({"malformed document: " + what}); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) malformed(std::string("missing field '") + name + "'");
  return j.at(name);
}

int int_from_json(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) malformed(what + " must be an integer");
  return j.get<int>();
}

Strategy strategy_from_json(const Json& j) {
  if (!j.is_array()) malformed("strategy must be an array of resource ids");
  Strategy s;
  for (const auto& r : j) s.push_back(int_from_json(r, "resource id"));
  return s;
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json optional_rationals(const std::vector<std::optional<Rational>>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x ? to_json(*x) : Json(nullptr));
  return out;
}

Json ratio(const PriceRatio& r) { return r ? to_json(*r) : Json("inf"); }

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) malformed("rational must be a \"p/q\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    malformed(e.what());
  }
}

Json to_json(const RateFunction& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) pieces.push_back(Json::array({to_json(p.start), to_json(p.rate)}));
  return Json{{"pieces", pieces}, {"monotone", f.monotone()}};
}

Json to_json(const GameInstance& g) {
  Json out;
  out["players"] = g.players;
  Json res = Json::array();
  for (const auto& r : g.resources) res.push_back(Json{{"id", r.id}, {"capacity", to_json(r.capacity)}});
  out["resources"] = res;
  if (g.is_network()) {
    Json arcs = Json::array();
    for (const auto& a : g.network().arcs) arcs.push_back(Json{{"id", a.resource}, {"from", a.from}, {"to", a.to}});
    Json ends = Json::array();
    for (const auto& [s, t] : g.network().endpoints) ends.push_back(Json::array({s, t}));
    out["space"] = Json{{"network", Json{{"arcs", arcs}, {"endpoints", ends}}}};
  } else {
    Json lists = Json::array();
    for (const auto& list : g.explicit_space().strategies) lists.push_back(state_to_json(list));
    out["space"] = Json{{"explicit", lists}};
  }
  Json rates = Json::array();
  for (const auto& f : g.rates) rates.push_back(to_json(f));
  out["rates"] = rates;
  if (g.provenance) out["provenance"] = *g.provenance;
  return out;
}

GameInstance instance_from_json(const Json& j) {
  GameInstance g;
  g.players = int_from_json(field(j, "players"), "players");
  const Json& res = field(j, "resources");
  if (!res.is_array()) malformed("resources must be an array");
  for (const auto& r : res) {
    g.resources.push_back({int_from_json(field(r, "id"), "resource id"), rational_from_json(field(r, "capacity"))});
  }
  const Json& space = field(j, "space");
  if (space.is_object() && space.contains("explicit")) {
    ExplicitSpace es;
    const Json& lists = space.at("explicit");
    if (!lists.is_array()) malformed("explicit space must be an array of strategy lists");
    for (const auto& list : lists) es.strategies.push_back(state_from_json(list));
    g.space = std::move(es);
  } else if (space.is_object() && space.contains("network")) {
    NetworkSpace ns;
    const Json& net = space.at("network");
    for (const auto& a : field(net, "arcs")) {
      ns.arcs.push_back({int_from_json(field(a, "id"), "arc id"), int_from_json(field(a, "from"), "arc from"),
                         int_from_json(field(a, "to"), "arc to")});
    }
    for (const auto& e : field(net, "endpoints")) {
      if (!e.is_array() || e.size() != 2) malformed("endpoint must be a [source, sink] pair");
      ns.endpoints.emplace_back(int_from_json(e[0], "source"), int_from_json(e[1], "sink"));
    }
    g.space = std::move(ns);
  } else {
    malformed("space must hold 'explicit' or 'network'");
  }
  const Json& rates = field(j, "rates");
  if (!rates.is_array()) malformed("rates must be an array");
  for (const auto& f : rates) {
    std::vector<RateFunction::Piece> pieces;
    for (const auto& p : field(f, "pieces")) {
      if (!p.is_array() || p.size() != 2) malformed("rate piece must be a [t, rate] pair");
      pieces.push_back({rational_from_json(p[0]), rational_from_json(p[1])});
    }
    const Json& mono = field(f, "monotone");
    if (!mono.is_boolean()) malformed("monotone must be a boolean");
    g.rates.emplace_back(std::move(pieces), mono.get<bool>());
  }
  if (j.contains("provenance") && j.at("provenance").is_string()) g.provenance = j.at("provenance").get<std::string>();
  return g;
}

Json state_to_json(const State& state) {
  Json out = Json::array();
  for (const auto& s : state) out.push_back(s);
  return out;
}

State state_from_json(const Json& j) {
  if (j.is_object() && j.contains("state")) return state_from_json(j.at("state"));
  if (!j.is_array()) malformed("state must be an array of strategies");
  State s;
  for (const auto& x : j) s.push_back(strategy_from_json(x));
  return s;
}

Json to_json(const AllocationResult& r) {
  Json rounds = Json::array();
  for (const auto& f : r.fix_rounds) {
    rounds.push_back(Json{{"time", to_json(f.time)}, {"resource", f.resource}, {"fixed", f.fixed}});
  }
  return Json{{"bandwidths", rationals(r.bandwidths)},
              {"finishing_times", rationals(r.finishing_times)},
              {"saturation_times", optional_rationals(r.saturation_times)},
              {"fix_rounds", rounds}};
}

Json to_json(const DeviationWitness& w) {
  return Json{{"coalition", w.coalition},
              {"strategies", state_to_json(w.strategies)},
              {"old_bandwidths", rationals(w.old_bandwidths)},
              {"new_bandwidths", rationals(w.new_bandwidths)}};
}

Json to_json(const DynamicsTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back(Json{{"deviation", to_json(s.deviation)},
                         {"state", state_to_json(s.state)},
                         {"potential", rationals(s.potential)}});
  }
  return Json{{"start", state_to_json(t.start)},
              {"start_potential", rationals(t.start_potential)},
              {"steps", steps},
              {"step_count", t.steps.size()},
              {"terminal", state_to_json(t.terminal)}};
}

Json to_json(const DualGreedyResult& r) {
  Json batches = Json::array();
  for (const auto& b : r.fix_batches) {
    batches.push_back(Json{{"resource", b.resource}, {"players", b.players}, {"bandwidth", to_json(b.bandwidth)}});
  }
  Json iters = Json::array();
  for (const auto& it : r.iterations) {
    iters.push_back(Json{{"resource", it.resource}, {"ratio", to_json(it.ratio)}, {"feasible", it.feasible}});
  }
  return Json{{"state", state_to_json(r.state)},
              {"bandwidths", rationals(r.bandwidths)},
              {"fix_batches", batches},
              {"final_bounds", r.final_bounds},
              {"iterations", iters}};
}

Json to_json(const McapSolution& s) {
  return Json{{"state", state_to_json(s.state)}, {"allocation", rationals(s.allocation)}, {"value", to_json(s.value)}};
}

McapSolution mcap_solution_from_json(const Json& j) {
  const Json& body = j.is_object() && j.contains("mcap") ? j.at("mcap") : j;
  McapSolution s;
  s.state = state_from_json(field(body, "state"));
  for (const auto& a : field(body, "allocation")) s.allocation.push_back(rational_from_json(a));
  for (const auto& a : s.allocation) s.value += a;
  return s;
}

Json to_json(const PriceReport& r) {
  Json out;
  out["basis"] = r.basis == OptimumBasis::mcap ? "mcap" : "pf";
  out["kind"] = r.kind.label();
  out["optimum"] = to_json(r.optimum);
  out["optimum_state"] = state_to_json(r.optimum_state);
  out["has_equilibrium"] = r.has_equilibrium;
  if (r.has_equilibrium) {
    out["best_welfare"] = to_json(r.best_welfare);
    out["worst_welfare"] = to_json(r.worst_welfare);
    out["best_state"] = state_to_json(r.best_state);
    out["worst_state"] = state_to_json(r.worst_state);
    out["price_of_stability"] = ratio(r.price_of_stability);
    out["price_of_anarchy"] = ratio(r.price_of_anarchy);
  } else {
    out["equilibrium"] = "none";
  }
  out["states_scanned"] = r.states_scanned;
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError({"cannot open '" + path + "'"});
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError({"'" + path + "' is not valid JSON: " + e.what()});
  }
}

}  // namespace pfg
