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


#include "pfg/simplex.hpp"

#include <optional>

#include "pfg/errors.hpp"

namespace pfg {

namespace {

class Tableau {
 public:
  // rows: constraint rows (coefficients then rhs); basis: basic column per row.
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<std::size_t> basis, std::size_t columns)
      : rows_(std::move(rows)), basis_(std::move(basis)), columns_(columns) {}

  // Installs the objective to maximise, expressed over all columns.
  void set_objective(const std::vector<Rational>& c) {
    z_.assign(columns_ + 1, Rational());
    for (std::size_t j = 0; j < columns_; ++j) z_[j] = c[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational coef = c[basis_[i]];
      if (coef.is_zero()) continue;
      for (std::size_t j = 0; j <= columns_; ++j) z_[j] -= coef * rows_[i][j];
    }
  }

  // Runs Bland's rule over columns where allowed[j] holds. False when unbounded.
  bool optimize(const std::vector<char>& allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < columns_; ++j) {
        if (allowed[j] && z_[j].sign() > 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][*enter];
        if (a.sign() <= 0) continue;
        Rational ratio = rows_[i][columns_] / a;
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = rows_[r][c];
    for (auto& v : rows_[r]) v /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c].is_zero()) continue;
      const Rational f = rows_[i][c];
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (!rows_[r][j].is_zero()) rows_[i][j] -= f * rows_[r][j];
      }
    }
    if (!z_.empty() && !z_[c].is_zero()) {
      const Rational f = z_[c];
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (!rows_[r][j].is_zero()) z_[j] -= f * rows_[r][j];
      }
    }
    basis_[r] = c;
  }

  // Objective value of the current basic solution.
  Rational value() const { return -z_[columns_]; }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  std::vector<Rational> solution(std::size_t count) const {
    std::vector<Rational> x(count);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < count) x[basis_[i]] = rows_[i][columns_];
    }
    return x;
  }

  std::size_t row_count() const { return rows_.size(); }
  std::size_t basic(std::size_t r) const { return basis_[r]; }
  const Rational& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
  std::size_t columns_;
  std::vector<Rational> z_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  using Sense = LinearProgram::Sense;
  const std::size_t n = lp.variables;
  const std::size_t m = lp.constraints.size();

  // Normalise to non-negative right-hand sides.
  std::vector<LinearProgram::Constraint> cons = lp.constraints;
  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (auto& c : cons) {
    if (c.coeffs.size() != n) throw ValidationError({"constraint width does not match the variable count"});
    if (c.rhs.sign() < 0) {
      for (auto& a : c.coeffs) a = -a;
      c.rhs = -c.rhs;
      if (c.sense == Sense::le) {
        c.sense = Sense::ge;
      } else if (c.sense == Sense::ge) {
        c.sense = Sense::le;
      }
    }
    if (c.sense != Sense::eq) ++slack_count;
    if (c.sense != Sense::le) ++artificial_count;
  }

  const std::size_t first_artificial = n + slack_count;
  const std::size_t columns = first_artificial + artificial_count;
  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(columns + 1));
  std::vector<std::size_t> basis(m);
  std::size_t slack = n;
  std::size_t art = first_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = cons[i];
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = c.coeffs[j];
    rows[i][columns] = c.rhs;
    if (c.sense == Sense::le) {
      rows[i][slack] = 1;
      basis[i] = slack++;
    } else if (c.sense == Sense::ge) {
      rows[i][slack++] = -1;
      rows[i][art] = 1;
      basis[i] = art++;
    } else {
      rows[i][art] = 1;
      basis[i] = art++;
    }
  }

  Tableau tab(std::move(rows), std::move(basis), columns);
  LpResult out;

  if (artificial_count > 0) {
    std::vector<Rational> phase1(columns);
    for (std::size_t j = first_artificial; j < columns; ++j) phase1[j] = -1;
    tab.set_objective(phase1);
    tab.optimize(std::vector<char>(columns, 1));
    if (tab.value().sign() < 0) {
      out.status = LpResult::Status::infeasible;
      return out;
    }
    // Drive zero-level artificials out of the basis or drop redundant rows.
    for (std::size_t r = tab.row_count(); r-- > 0;) {
      if (tab.basic(r) < first_artificial) continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (!tab.at(r, j).is_zero()) {
          col = j;
          break;
        }
      }
      if (col) {
        tab.pivot(r, *col);
      } else {
        tab.drop_row(r);
      }
    }
  }

  std::vector<Rational> phase2(columns);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective.size() > j ? lp.objective[j] : Rational();
  tab.set_objective(phase2);
  std::vector<char> allowed(columns, 1);
  for (std::size_t j = first_artificial; j < columns; ++j) allowed[j] = 0;
  if (!tab.optimize(allowed)) {
    out.status = LpResult::Status::unbounded;
    return out;
  }
  out.status = LpResult::Status::optimal;
  out.x = tab.solution(n);
  out.value = Rational();
  for (std::size_t j = 0; j < n && j < lp.objective.size(); ++j) out.value += lp.objective[j] * out.x[j];
  return out;
}

LpResult solve_lp_lexmax(const LinearProgram& lp) {
  LpResult first = solve_lp(lp);
  if (!first.optimal()) return first;
  LinearProgram fixed = lp;
  std::vector<Rational> obj = lp.objective;
  obj.resize(lp.variables);
  fixed.add(obj, LinearProgram::Sense::eq, first.value);
  LpResult last = first;
  for (std::size_t k = 0; k < lp.variables; ++k) {
    fixed.objective.assign(lp.variables, Rational());
    fixed.objective[k] = 1;
    LpResult step = solve_lp(fixed);
    if (!step.optimal()) throw InternalError("lexicographic refinement lost feasibility");
    std::vector<Rational> pin(lp.variables);
    pin[k] = 1;
    fixed.add(std::move(pin), LinearProgram::Sense::eq, step.x[k]);
    last = std::move(step);
  }
  last.value = first.value;
  return last;
}

}  // namespace pfg
