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

#ifndef PFG_ERRORS_HPP
#define PFG_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An instance, state or parameter set that breaks one or more invariants.
// Every violation is listed, not just the first one found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// A combinatorial search (strategy enumeration, state scan, coalition search)
// would exceed its configured cap. `count_lower_bound` is a proven lower bound
// on the size that was being enumerated.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t limit, std::uint64_t count_lower_bound);
  std::uint64_t limit() const { return limit_; }
  std::uint64_t count_lower_bound() const { return count_lower_bound_; }

 private:
  std::uint64_t limit_;
  std::uint64_t count_lower_bound_;
};

// The filling engine could not make progress (only reachable with
// non-monotone rates) or a caller asked for something the engine refuses.
class EngineError : public Error {
 public:
  using Error::Error;
};

// An algorithmic invariant that must hold by construction did not. Seeing
// this means a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pfg

#endif  // PFG_ERRORS_HPP
