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

#include "pfg/errors.hpp"

namespace pfg {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::string out = "validation failed";
  for (const auto& v : violations) out += "; " + v;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

BudgetExceeded::BudgetExceeded(const std::string& what, std::uint64_t limit, std::uint64_t count_lower_bound)
    : Error(what + " (limit " + std::to_string(limit) + ", at least " + std::to_string(count_lower_bound) + ")"),
      limit_(limit),
      count_lower_bound_(count_lower_bound) {}

}  // namespace pfg
