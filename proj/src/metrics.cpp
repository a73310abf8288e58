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


#include "pfg/metrics.hpp"

#include "pfg/errors.hpp"

namespace pfg {

Rational social_welfare(const AllocationResult& result) {
  Rational sw;
  for (const auto& b : result.bandwidths) sw += b;
  return sw;
}

std::string EquilibriumKind::label() const {
  switch (kind) {
    case Kind::pne: return "pne";
    case Kind::se: return "se";
    default: return "kse:" + std::to_string(k);
  }
}

PriceRatio price_ratio(const Rational& optimum, const Rational& welfare) {
  if (welfare.is_zero()) return optimum.is_zero() ? PriceRatio(Rational(1)) : std::nullopt;
  return optimum / welfare;
}

PriceReport price_metrics(const GameInstance& inst, OptimumBasis basis, EquilibriumKind kind,
                          const PriceOptions& options) {
  SearchOptions search = options.search;
  search.fill.nonstandard = search.fill.nonstandard || !inst.all_monotone();
  const StrategyCatalog catalog(inst, search.strategy_limit);
  const auto groups = symmetry_groups(inst, catalog, true);
  const std::uint64_t total = canonical_state_count(groups, catalog);
  if (total > options.budget) throw BudgetExceeded("state space exceeds budget", options.budget, total);

  PriceReport out;
  out.basis = basis;
  out.kind = kind;
  const int coalition = kind.kind == EquilibriumKind::Kind::se ? inst.players : kind.k;
  std::optional<Rational> pf_best;

  for_each_canonical_state(groups, catalog, [&](const State& s) {
    ++out.states_scanned;
    const AllocationResult res = progressive_fill(inst, s, search.fill);
    const Rational sw = social_welfare(res);
    if (!pf_best || *pf_best < sw) {
      pf_best = sw;
      if (basis == OptimumBasis::pf_optimum) out.optimum_state = s;
    }
    const bool matters = !out.has_equilibrium || out.best_welfare < sw || sw < out.worst_welfare;
    if (!matters) return true;
    if (!is_nash(inst, catalog, s, search).holds) return true;
    if (kind.kind != EquilibriumKind::Kind::pne && coalition > 1 &&
        !is_strong_equilibrium(inst, catalog, s, coalition, search).holds) {
      return true;
    }
    if (!out.has_equilibrium || out.best_welfare < sw) {
      out.best_welfare = sw;
      out.best_state = s;
    }
    if (!out.has_equilibrium || sw < out.worst_welfare) {
      out.worst_welfare = sw;
      out.worst_state = s;
    }
    out.has_equilibrium = true;
    return true;
  });

  if (basis == OptimumBasis::pf_optimum) {
    out.optimum = *pf_best;
  } else {
    McapOptions mo = options.mcap;
    mo.pf_optimum = false;
    const McapExactResult m = mcap_exact(inst, mo);
    out.optimum = m.mcap.value;
    out.optimum_state = m.mcap.state;
  }
  if (out.has_equilibrium) {
    out.price_of_stability = price_ratio(out.optimum, out.best_welfare);
    out.price_of_anarchy = price_ratio(out.optimum, out.worst_welfare);
  }
  return out;
}

}  // namespace pfg
