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


// JSON documents for instances, states and every result type. Rationals are
// written as "p/q" (or "p") strings; integers are accepted on input.

#ifndef PFG_SERIALIZE_HPP
#define PFG_SERIALIZE_HPP

#include <string>

#include "json.hpp"
#include "pfg/equilibrium.hpp"
#include "pfg/game.hpp"
#include "pfg/metrics.hpp"
#include "pfg/optimum.hpp"
#include "pfg/packing.hpp"
#include "pfg/waterfill.hpp"

namespace pfg {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const RateFunction& f);
Json to_json(const GameInstance& instance);
// Structural parse; throws ValidationError on malformed documents. The result
// is not yet checked with validate_instance.
GameInstance instance_from_json(const Json& j);

Json state_to_json(const State& state);
State state_from_json(const Json& j);

Json to_json(const AllocationResult& result);
Json to_json(const DeviationWitness& witness);
Json to_json(const DynamicsTrace& trace);
Json to_json(const DualGreedyResult& result);
Json to_json(const McapSolution& solution);
McapSolution mcap_solution_from_json(const Json& j);
Json to_json(const PriceReport& report);

Json read_json_file(const std::string& path);

}  // namespace pfg

#endif  // PFG_SERIALIZE_HPP
