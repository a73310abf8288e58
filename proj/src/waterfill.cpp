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


#include "pfg/waterfill.hpp"

#include <algorithm>

#include "pfg/errors.hpp"

namespace pfg {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

// First t >= from at which the summed aggregated rate of `users` equals
// `target`, scanning the merged breakpoints piece by piece.
std::optional<Rational> first_hit(const GameInstance& inst, const std::vector<PlayerId>& users, const Rational& from,
                                  const Rational& target) {
  bool constant = true;
  Rational total_rate;
  for (PlayerId i : users) {
    const RateFunction& f = inst.rates[idx(i)];
    if (!f.is_constant()) {
      constant = false;
      break;
    }
    total_rate += f.pieces().front().rate;
  }
  if (constant) {
    Rational t = target / total_rate;
    if (t < from) return std::nullopt;
    return t;
  }

  Rational a = from;
  for (;;) {
    Rational fa;
    Rational slope;
    std::optional<Rational> next;
    for (PlayerId i : users) {
      const RateFunction& f = inst.rates[idx(i)];
      const std::size_t k = f.piece_index(a);
      fa += f.integral_at_piece(k) + f.pieces()[k].rate * (a - f.pieces()[k].start);
      slope += f.pieces()[k].rate;
      if (k + 1 < f.pieces().size()) {
        const Rational& b = f.pieces()[k + 1].start;
        if (!next || b < *next) next = b;
      }
    }
    if (fa == target) return a;
    const bool below = fa < target;
    if (!next) {
      if ((below && slope.sign() > 0) || (!below && slope.sign() < 0)) return a + (target - fa) / slope;
      return std::nullopt;
    }
    const Rational fb = fa + slope * (*next - a);
    if ((below && !(fb < target)) || (!below && !(target < fb))) return a + (target - fa) / slope;
    a = *next;
  }
}

}  // namespace

AllocationResult progressive_fill(const GameInstance& inst, const State& state, const FillOptions& options) {
  const std::size_t n = idx(inst.players);
  const std::size_t m = idx(inst.resource_count());
  if (state.size() != n) throw ValidationError({"state has " + std::to_string(state.size()) + " strategies, expected " +
                                               std::to_string(n)});
  if (!options.nonstandard && !inst.all_monotone()) {
    throw EngineError("non-monotone rate functions require the nonstandard option");
  }

  std::vector<std::vector<PlayerId>> users(m);
  for (std::size_t i = 0; i < n; ++i) {
    if (state[i].empty()) throw ValidationError({"player " + std::to_string(i) + ": empty strategy"});
    for (ResourceId r : state[i]) {
      if (r < 0 || idx(r) >= m) {
        throw ValidationError({"player " + std::to_string(i) + ": strategy references unknown resource " +
                               std::to_string(r)});
      }
      users[idx(r)].push_back(static_cast<PlayerId>(i));
    }
  }

  std::vector<std::size_t> rank(m);
  for (std::size_t r = 0; r < m; ++r) rank[r] = r;
  if (options.tie_priority) {
    std::size_t pos = 0;
    for (ResourceId r : *options.tie_priority) {
      if (r >= 0 && idx(r) < m) rank[idx(r)] = pos++;
    }
  }

  AllocationResult out;
  out.bandwidths.assign(n, Rational());
  out.finishing_times.assign(n, Rational());
  out.saturation_times.assign(m, std::nullopt);

  std::vector<char> active(n, 1);
  std::vector<Rational> residual(m);
  std::vector<std::size_t> active_count(m);
  for (std::size_t r = 0; r < m; ++r) {
    residual[r] = inst.resources[r].capacity;
    active_count[r] = users[r].size();
  }
  // Constant rates: each resource's hit time is residual / summed active rate.
  const bool constant = std::all_of(inst.rates.begin(), inst.rates.end(),
                                    [](const RateFunction& f) { return f.is_constant(); });
  std::vector<Rational> rate_sum(constant ? m : 0);
  if (constant) {
    for (std::size_t r = 0; r < m; ++r) {
      for (PlayerId i : users[r]) rate_sum[r] += inst.rates[idx(i)].pieces().front().rate;
    }
  }
  std::vector<std::optional<Rational>> hit(m);
  std::vector<char> dirty(m, 1);
  std::size_t remaining = n;
  Rational now;
  std::vector<PlayerId> scratch;

  while (remaining > 0) {
    if (out.fix_rounds.size() >= m) throw InternalError("progressive filling exceeded one round per resource");
    std::optional<std::size_t> pick;
    for (std::size_t r = 0; r < m; ++r) {
      if (active_count[r] == 0) continue;
      if (dirty[r] && constant) {
        if (rate_sum[r].sign() > 0) {
          hit[r] = residual[r] / rate_sum[r];
          if (*hit[r] < now) hit[r].reset();
        } else {
          hit[r].reset();
        }
        dirty[r] = 0;
      } else if (dirty[r]) {
        scratch.clear();
        for (PlayerId i : users[r]) {
          if (active[idx(i)]) scratch.push_back(i);
        }
        hit[r] = first_hit(inst, scratch, now, residual[r]);
        dirty[r] = 0;
      }
      if (!hit[r]) continue;
      if (!pick || *hit[r] < *hit[*pick] || (*hit[r] == *hit[*pick] && rank[r] < rank[*pick])) pick = r;
    }
    if (!pick) throw EngineError("no resource saturates for the remaining players; filling cannot terminate");

    const std::size_t r_star = *pick;
    const Rational t_star = *hit[r_star];
    FixRound round{t_star, static_cast<ResourceId>(r_star), {}};
    for (PlayerId i : users[r_star]) {
      if (!active[idx(i)]) continue;
      round.fixed.push_back(i);
    }
    for (PlayerId i : round.fixed) {
      const Rational b = inst.rates[idx(i)].integral(t_star);
      active[idx(i)] = 0;
      --remaining;
      for (ResourceId q : state[idx(i)]) {
        residual[idx(q)] -= b;
        if (constant) rate_sum[idx(q)] -= inst.rates[idx(i)].pieces().front().rate;
        --active_count[idx(q)];
        dirty[idx(q)] = 1;
        if (residual[idx(q)].sign() < 0) throw InternalError("residual capacity became negative");
        if (residual[idx(q)].is_zero() && !out.saturation_times[idx(q)]) out.saturation_times[idx(q)] = t_star;
      }
      out.bandwidths[idx(i)] = b;
      out.finishing_times[idx(i)] = t_star;
    }
    if (!out.saturation_times[r_star]) out.saturation_times[r_star] = t_star;
    hit[r_star].reset();
    now = t_star;
    out.fix_rounds.push_back(std::move(round));
  }
  return out;
}

PotentialVector potential_vector(const AllocationResult& result) {
  PotentialVector out = result.finishing_times;
  std::sort(out.begin(), out.end());
  return out;
}

PotentialVector potential_vector(const GameInstance& inst, const State& state, const FillOptions& options) {
  return potential_vector(progressive_fill(inst, state, options));
}

Rational PiecewiseLinear::operator()(const Rational& x) const {
  Rational acc;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const bool last = k + 1 == pieces.size();
    if (!last && !(x < pieces[k + 1].start)) {
      acc += pieces[k].slope * (pieces[k + 1].start - pieces[k].start);
      continue;
    }
    return acc + pieces[k].slope * (x - pieces[k].start);
  }
  return acc;
}

RateFunction utility_to_rate(const PiecewiseLinear& utility) {
  std::vector<std::string> errors;
  const auto& p = utility.pieces;
  if (p.empty()) {
    errors.emplace_back("utility has no pieces");
  } else if (!p.front().start.is_zero()) {
    errors.emplace_back("utility must start at 0");
  }
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k].slope.sign() <= 0) errors.push_back("utility not strictly increasing on piece " + std::to_string(k));
    if (k > 0 && !(p[k - 1].start < p[k].start)) {
      errors.push_back("utility breakpoints not increasing at piece " + std::to_string(k));
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));

  std::vector<RateFunction::Piece> out;
  Rational level;
  for (std::size_t k = 0; k < p.size(); ++k) {
    out.push_back({level, Rational(1) / p[k].slope});
    if (k + 1 < p.size()) level += p[k].slope * (p[k + 1].start - p[k].start);
  }
  return RateFunction(std::move(out), true);
}

}  // namespace pfg
