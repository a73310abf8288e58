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


// Exact rational linear programming: dense two-phase simplex with Bland's
// rule. Every variable is implicitly non-negative.

#ifndef PFG_SIMPLEX_HPP
#define PFG_SIMPLEX_HPP

#include <cstddef>
#include <vector>

#include "pfg/rational.hpp"

namespace pfg {

struct LinearProgram {
  enum class Sense { le, eq, ge };
  struct Constraint {
    std::vector<Rational> coeffs;
    Sense sense = Sense::le;
    Rational rhs;
  };

  std::size_t variables = 0;
  std::vector<Rational> objective;  // maximised
  std::vector<Constraint> constraints;

  void add(std::vector<Rational> coeffs, Sense sense, Rational rhs) {
    constraints.push_back({std::move(coeffs), sense, std::move(rhs)});
  }
};

struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  std::vector<Rational> x;
  Rational value;

  bool optimal() const { return status == Status::optimal; }
};

LpResult solve_lp(const LinearProgram& lp);

// Optimal solution that is lexicographically greatest in (x_0, x_1, ...)
// among all optima.
LpResult solve_lp_lexmax(const LinearProgram& lp);

}  // namespace pfg

#endif  // PFG_SIMPLEX_HPP
