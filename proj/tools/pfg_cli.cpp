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


// pfg: command-line front end for the progressive filling game library.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pfg/equilibrium.hpp"
#include "pfg/errors.hpp"
#include "pfg/generators.hpp"
#include "pfg/metrics.hpp"
#include "pfg/optimum.hpp"
#include "pfg/packing.hpp"
#include "pfg/serialize.hpp"
#include "pfg/waterfill.hpp"

namespace {

using pfg::Json;
using pfg::Rational;

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

struct Output {
  std::string path;
  bool csv = false;
};

void emit_text(const Output& out, const std::string& text) {
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out.path);
  if (!file) throw pfg::ValidationError({"cannot write '" + out.path + "'"});
  file << text;
}

void emit(const Output& out, const Json& doc) { emit_text(out, doc.dump(2) + "\n"); }

using Row = std::vector<std::string>;

void emit_csv(const Output& out, const Row& header, const std::vector<Row>& rows) {
  std::ostringstream s;
  auto line = [&s](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) s << (i ? "," : "") << r[i];
    s << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  emit_text(out, s.str());
}

std::string str(const pfg::PriceRatio& r) { return r ? r->str() : "inf"; }

pfg::GameInstance load_instance(const std::string& path) {
  return pfg::validate_instance(pfg::instance_from_json(pfg::read_json_file(path)));
}

// FILE or FILE#NAME; the latter picks a named state from a "states" object.
pfg::State load_state(const std::string& arg) {
  const auto hash = arg.rfind('#');
  if (hash == std::string::npos) return pfg::state_from_json(pfg::read_json_file(arg));
  const std::string name = arg.substr(hash + 1);
  const Json doc = pfg::read_json_file(arg.substr(0, hash));
  if (!doc.is_object() || !doc.contains("states") || !doc.at("states").contains(name)) {
    throw pfg::ValidationError({"no state named '" + name + "' in '" + arg.substr(0, hash) + "'"});
  }
  return pfg::state_from_json(doc.at("states").at(name));
}

pfg::DynamicsMode parse_mode(const std::string& text) {
  if (text == "unilateral") return pfg::DynamicsMode::unilateral();
  const std::string prefix = "coalitional:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      const int k = std::stoi(text.substr(prefix.size()));
      if (k >= 1) return pfg::DynamicsMode::coalitional(k);
    } catch (const std::exception&) {
    }
  }
  throw pfg::ValidationError({"mode must be 'unilateral' or 'coalitional:<k>' with k >= 1"});
}

pfg::EquilibriumKind parse_kind(const std::string& text) {
  if (text == "pne") return pfg::EquilibriumKind::pne();
  if (text == "se") return pfg::EquilibriumKind::se();
  if (text.rfind("kse:", 0) == 0) {
    try {
      const int k = std::stoi(text.substr(4));
      if (k >= 1) return pfg::EquilibriumKind::kse(k);
    } catch (const std::exception&) {
    }
  }
  throw pfg::ValidationError({"kind must be 'pne', 'se' or 'kse:<k>' with k >= 1"});
}

Rational parse_rational(const std::string& text, const std::string& name) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw pfg::ValidationError({name + " is not a rational: '" + text + "'"});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Progressive filling games: allocation, equilibria, optima and experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  std::size_t strategy_limit = 100000;
  std::uint64_t budget = 2000000;
  app.add_flag("--csv", out.csv, "Emit flat CSV metric rows instead of JSON");
  app.add_option("-o,--output", out.path, "Write the result to a file");
  app.add_option("--strategy-limit", strategy_limit, "Cap on strategies enumerated per player");
  app.add_option("--budget", budget, "Cap on states or search nodes visited");

  std::string file, state_file, start_file, mode_text = "unilateral", oracle = "explicit", from;
  std::string basis = "mcap", kind_text = "pne";
  int player = 0;
  std::size_t limit = 100000;

  auto* validate = app.add_subcommand("validate", "Check an instance and report every violation");
  validate->add_option("file", file)->required();

  auto* allocate = app.add_subcommand("allocate", "Run progressive filling on a state");
  allocate->add_option("file", file)->required();
  allocate->add_option("--state", state_file, "State file (FILE or FILE#NAME)")->required();

  auto* best = app.add_subcommand("best-response", "Best response of one player");
  best->add_option("file", file)->required();
  best->add_option("--state", state_file)->required();
  best->add_option("--player", player, "0-based player index")->required();

  auto* dynamics = app.add_subcommand("dynamics", "Improvement dynamics from a start state");
  dynamics->add_option("file", file)->required();
  dynamics->add_option("--start", start_file)->required();
  dynamics->add_option("--mode", mode_text, "unilateral or coalitional:<k>");
  dynamics->add_option("--limit", limit, "Step limit");

  auto* greedy = app.add_subcommand("dual-greedy", "Dual Greedy strong equilibrium for uniform rates");
  greedy->add_option("file", file)->required();
  greedy->add_option("--oracle", oracle, "explicit or network")->check(CLI::IsMember({"explicit", "network"}));

  auto* mcap = app.add_subcommand("mcap", "Maximum capacity allocation");
  mcap->add_option("file", file)->required();
  bool exact = false, uniform = false, approx3 = false;
  auto* f_exact = mcap->add_flag("--exact", exact, "Exact optimum by state scan (default)");
  auto* f_uniform = mcap->add_flag("--uniform", uniform, "Optimal equal-bandwidth value");
  auto* f_approx = mcap->add_flag("--approx3", approx3, "3-splittable flow approximation");
  f_exact->excludes(f_uniform)->excludes(f_approx);
  f_uniform->excludes(f_approx);

  auto* design = app.add_subcommand("design", "Rates whose fill reproduces an allocation");
  design->add_option("file", file)->required();
  design->add_option("--from", from, "Solution produced by 'mcap'")->required();

  auto* price = app.add_subcommand("price", "Prices of stability and anarchy by enumeration");
  price->add_option("file", file)->required();
  price->add_option("--basis", basis)->check(CLI::IsMember({"pf", "mcap"}));
  price->add_option("--kind", kind_text, "pne, se or kse:<k>");

  auto* gen = app.add_subcommand("generate", "Construction families a..f");
  pfg::GeneratorParams params;
  std::string family = "b", eps, t1, t2, rho, dip;
  gen->add_option("--family", family)->check(CLI::IsMember({"a", "b", "c", "d", "e", "f"}))->required();
  gen->add_option("--n", params.n);
  gen->add_option("--k", params.k);
  gen->add_option("--eps", eps);
  gen->add_option("--t1", t1);
  gen->add_option("--t2", t2);
  gen->add_option("--rho", rho);
  gen->add_option("--dip", dip);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  pfg::SearchOptions search;
  search.strategy_limit = strategy_limit;
  search.budget = budget;

  try {
    if (*validate) {
      const auto violations = pfg::instance_violations(pfg::instance_from_json(pfg::read_json_file(file)));
      if (out.csv) {
        emit_csv(out, {"valid", "violations"}, {{violations.empty() ? "true" : "false",
                                                 std::to_string(violations.size())}});
      } else {
        emit(out, Json{{"valid", violations.empty()}, {"violations", violations}});
      }
      return violations.empty() ? 0 : kExitValidation;
    }

    if (*gen) {
      params.family = family[0];
      if (!eps.empty()) params.eps = parse_rational(eps, "--eps");
      if (!t1.empty()) params.t1 = parse_rational(t1, "--t1");
      if (!t2.empty()) params.t2 = parse_rational(t2, "--t2");
      if (!rho.empty()) params.rho = parse_rational(rho, "--rho");
      if (!dip.empty()) params.dip = parse_rational(dip, "--dip");
      const auto g = pfg::generate(params);
      Json doc = pfg::to_json(g.instance);
      Json states = Json::object();
      for (const auto& [name, s] : g.states) states[name] = pfg::state_to_json(s);
      doc["states"] = states;
      emit(out, doc);
      return 0;
    }

    const pfg::GameInstance inst = load_instance(file);

    if (*allocate) {
      const auto state = load_state(state_file);
      pfg::validate_state(inst, state);
      pfg::FillOptions fill;
      fill.nonstandard = !inst.all_monotone();
      const auto r = pfg::progressive_fill(inst, state, fill);
      if (out.csv) {
        std::vector<Row> rows;
        for (std::size_t i = 0; i < r.bandwidths.size(); ++i) {
          rows.push_back({std::to_string(i), r.bandwidths[i].str(), r.finishing_times[i].str()});
        }
        emit_csv(out, {"player", "bandwidth", "finishing_time"}, rows);
      } else {
        Json doc = pfg::to_json(r);
        doc["social_welfare"] = pfg::to_json(pfg::social_welfare(r));
        emit(out, doc);
      }
    } else if (*best) {
      const auto state = load_state(state_file);
      pfg::validate_state(inst, state);
      if (player < 0 || player >= inst.players) {
        throw pfg::ValidationError({"player " + std::to_string(player) + " out of range"});
      }
      const auto br = pfg::best_response(inst, state, player, search);
      const Rational current = pfg::progressive_fill(inst, state).bandwidths[static_cast<std::size_t>(player)];
      if (out.csv) {
        emit_csv(out, {"player", "current_bandwidth", "best_bandwidth"}, {{std::to_string(player), current.str(),
                                                                         br.bandwidth.str()}});
      } else {
        emit(out, Json{{"player", player},
                       {"strategy", br.strategy},
                       {"bandwidth", pfg::to_json(br.bandwidth)},
                       {"current_bandwidth", pfg::to_json(current)},
                       {"improves", current < br.bandwidth}});
      }
    } else if (*dynamics) {
      const auto start = load_state(start_file);
      const auto trace = pfg::improvement_dynamics(inst, start, parse_mode(mode_text), limit, search);
      const Rational sw0 = pfg::social_welfare(pfg::progressive_fill(inst, trace.start));
      const Rational sw1 = pfg::social_welfare(pfg::progressive_fill(inst, trace.terminal));
      if (out.csv) {
        std::vector<Row> rows{{"0", sw0.str()}};
        for (std::size_t k = 0; k < trace.steps.size(); ++k) {
          rows.push_back({std::to_string(k + 1), pfg::social_welfare(pfg::progressive_fill(inst, trace.steps[k].state)).str()});
        }
        emit_csv(out, {"step", "social_welfare"}, rows);
      } else {
        Json doc = pfg::to_json(trace);
        doc["start_welfare"] = pfg::to_json(sw0);
        doc["terminal_welfare"] = pfg::to_json(sw1);
        emit(out, doc);
      }
    } else if (*greedy) {
      pfg::DualGreedyOptions opts;
      opts.oracle = oracle == "network" ? pfg::PackingOracle::network_flow : pfg::PackingOracle::explicit_search;
      opts.strategy_limit = strategy_limit;
      const auto r = pfg::dual_greedy(inst, opts);
      if (out.csv) {
        std::vector<Row> rows;
        for (std::size_t k = 0; k < r.iterations.size(); ++k) {
          const auto& it = r.iterations[k];
          rows.push_back({std::to_string(k), std::to_string(it.resource), it.ratio.str(), it.feasible ? "1" : "0"});
        }
        emit_csv(out, {"iteration", "resource", "ratio", "feasible"}, rows);
      } else {
        Json doc = pfg::to_json(r);
        Rational sw;
        for (const auto& b : r.bandwidths) sw += b;
        doc["social_welfare"] = pfg::to_json(sw);
        emit(out, doc);
      }
    } else if (*mcap) {
      pfg::McapOptions opts;
      opts.budget = budget;
      opts.strategy_limit = strategy_limit;
      if (uniform) {
        const Rational v = pfg::uniform_mcap(inst, opts);
        if (out.csv) {
          emit_csv(out, {"method", "value"}, {{"uniform", v.str()}});
        } else {
          emit(out, Json{{"method", "uniform"}, {"value", pfg::to_json(v)}});
        }
      } else if (approx3) {
        const auto s = pfg::three_splittable_approx(inst);
        if (out.csv) {
          emit_csv(out, {"method", "value"}, {{"approx3", s.value.str()}});
        } else {
          emit(out, Json{{"method", "approx3"}, {"mcap", pfg::to_json(s)}});
        }
      } else {
        const auto r = pfg::mcap_exact(inst, opts);
        if (out.csv) {
          emit_csv(out, {"method", "value", "pf_optimum", "states_scanned"},
                   {{"exact", r.mcap.value.str(), r.pf_optimum ? r.pf_optimum->value.str() : "",
                     std::to_string(r.states_scanned)}});
        } else {
          Json doc{{"method", "exact"}, {"mcap", pfg::to_json(r.mcap)}};
          doc["pf_optimum"] = r.pf_optimum ? pfg::to_json(*r.pf_optimum) : Json(nullptr);
          doc["states_scanned"] = r.states_scanned;
          doc["certified_by_flow"] = r.certified_by_flow;
          emit(out, doc);
        }
      }
    } else if (*design) {
      const auto solution = pfg::mcap_solution_from_json(pfg::read_json_file(from));
      const auto d = pfg::design_rates(inst, solution);
      Json doc = pfg::to_json(d.instance);
      doc["states"] = Json{{"designed", pfg::state_to_json(d.state)}};
      Json target = Json::array();
      for (const auto& a : d.target) target.push_back(pfg::to_json(a));
      doc["target"] = target;
    doc["exact"] = d.exact;
      emit(out, doc);
    } else if (*price) {
      pfg::PriceOptions opts;
      opts.budget = budget;
      opts.search = search;
      opts.mcap.budget = budget;
      opts.mcap.strategy_limit = strategy_limit;
      const auto r = pfg::price_metrics(inst, basis == "pf" ? pfg::OptimumBasis::pf_optimum : pfg::OptimumBasis::mcap,
                                        parse_kind(kind_text), opts);
      if (out.csv) {
        Row row{basis, r.kind.label(), r.optimum.str()};
        if (r.has_equilibrium) {
          row.insert(row.end(), {r.best_welfare.str(), r.worst_welfare.str(), str(r.price_of_stability),
                                 str(r.price_of_anarchy)});
        } else {
          row.insert(row.end(), {"", "", "", ""});
        }
        emit_csv(out, {"basis", "kind", "optimum", "best_welfare", "worst_welfare", "pos", "poa"}, {row});
      } else {
        emit(out, pfg::to_json(r));
      }
    }
    return 0;
  } catch (const pfg::ValidationError& e) {
    std::cerr << Json{{"error", "validation"}, {"violations", e.violations()}}.dump(2) << "\n";
    return kExitValidation;
  } catch (const pfg::BudgetExceeded& e) {
    std::cerr << Json{{"error", "budget"}, {"message", e.what()}, {"limit", e.limit()},
                      {"count_lower_bound", e.count_lower_bound()}}.dump(2)
              << "\n";
    return kExitBudget;
  } catch (const pfg::EngineError& e) {
    std::cerr << Json{{"error", "engine"}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "internal"}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  }
}
