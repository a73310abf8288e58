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


// Social welfare and exact prices of anarchy and stability by exhaustive
// state classification.

#ifndef PFG_METRICS_HPP
#define PFG_METRICS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "pfg/equilibrium.hpp"
#include "pfg/optimum.hpp"
#include "pfg/waterfill.hpp"

namespace pfg {

Rational social_welfare(const AllocationResult& result);

enum class OptimumBasis { pf_optimum, mcap };

struct EquilibriumKind {
  enum class Kind { pne, se, kse };
  Kind kind = Kind::pne;
  int k = 1;

  static EquilibriumKind pne() { return {Kind::pne, 1}; }
  static EquilibriumKind se() { return {Kind::se, 0}; }
  static EquilibriumKind kse(int k) { return {Kind::kse, k}; }
  std::string label() const;
};

// A ratio opt / welfare; nullopt encodes an unbounded ratio (welfare 0).
using PriceRatio = std::optional<Rational>;

struct PriceReport {
  OptimumBasis basis = OptimumBasis::mcap;
  EquilibriumKind kind;
  Rational optimum;
  State optimum_state;
  bool has_equilibrium = false;
  Rational best_welfare;
  Rational worst_welfare;
  State best_state;
  State worst_state;
  PriceRatio price_of_stability;
  PriceRatio price_of_anarchy;
  std::uint64_t states_scanned = 0;
};

struct PriceOptions {
  std::uint64_t budget = 2000000;  // canonical states
  SearchOptions search;
  McapOptions mcap;
};

PriceReport price_metrics(const GameInstance& instance, OptimumBasis basis, EquilibriumKind kind,
                          const PriceOptions& options = {});

PriceRatio price_ratio(const Rational& optimum, const Rational& welfare);

}  // namespace pfg

#endif  // PFG_METRICS_HPP
