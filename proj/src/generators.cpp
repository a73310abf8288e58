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


#include "pfg/generators.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "pfg/errors.hpp"

namespace pfg {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

Rational pow2(int e) {
  mpz_class v = 1;
  v <<= static_cast<unsigned long>(e);
  return Rational(mpq_class(v));
}

GameInstance network_game(int players, const std::vector<Rational>& caps, std::vector<Arc> arcs,
                          std::vector<std::pair<NodeId, NodeId>> endpoints, std::vector<RateFunction> rates) {
  GameInstance g;
  g.players = players;
  for (std::size_t r = 0; r < caps.size(); ++r) g.resources.push_back({static_cast<ResourceId>(r), caps[r]});
  g.space = NetworkSpace{std::move(arcs), std::move(endpoints)};
  g.rates = std::move(rates);
  return g;
}

GeneratedGame family_a(int n) {
  const int h = n / 2;
  std::vector<Rational> caps(idx(h), Rational(1));
  caps.push_back(Rational(0));
  std::vector<Arc> arcs;
  for (int j = 0; j <= h; ++j) {
    const NodeId a = j < h ? j : 0;
    const NodeId b = j < h ? j + 1 : h;
    arcs.push_back({j, a, b});
    arcs.push_back({j, b, a});
  }
  std::vector<std::pair<NodeId, NodeId>> ends;
  for (int i = 0; i < n; ++i) ends.emplace_back(i < h ? std::pair(i, i + 1) : std::pair(0, h));
  GeneratedGame out{network_game(n, caps, std::move(arcs), std::move(ends), std::vector<RateFunction>(idx(n))), {}};

  Strategy chain;
  for (int j = 0; j < h; ++j) chain.push_back(j);
  State pne;
  State opt;
  for (int i = 0; i < n; ++i) {
    pne.push_back(i < h ? Strategy{i} : chain);
    opt.push_back(i < h ? Strategy{i} : Strategy{h});
  }
  out.states["pne"] = pne;
  out.states["optimum"] = opt;
  return out;
}

GeneratedGame family_b(int n, const Rational& eps) {
  std::vector<Rational> caps(idx(n - 1), Rational(1) - eps);
  caps.push_back(Rational(n));
  std::vector<Arc> arcs;
  for (int r = 0; r < n; ++r) arcs.push_back({r, 0, 1});
  GeneratedGame out{network_game(n, caps, std::move(arcs), std::vector<std::pair<NodeId, NodeId>>(idx(n), {0, 1}),
                                 std::vector<RateFunction>(idx(n))),
                    {}};
  State pne(idx(n), Strategy{n - 1});
  State opt;
  for (int i = 0; i < n; ++i) opt.push_back(Strategy{i});
  out.states["pne"] = pne;
  out.states["optimum"] = opt;
  return out;
}

// Node numbering of the gadget chain: u_1..u_{k+1} first, then per gadget
// the pairs v_{i,j}, w_{i,j}.
struct Chain {
  int n;
  int k;
  NodeId u(int i) const { return i - 1; }
  NodeId v(int i, int j) const { return k + 1 + (i - 1) * 2 * n + 2 * (j - 1); }
  NodeId w(int i, int j) const { return v(i, j) + 1; }
};

GeneratedGame family_c(int n, int k) {
  const Chain c{n, k};
  std::vector<Arc> arcs;
  const auto add = [&](NodeId a, NodeId b) {
    arcs.push_back({static_cast<ResourceId>(arcs.size()), a, b});
    return static_cast<ResourceId>(arcs.size() - 1);
  };
  std::vector<std::vector<ResourceId>> enter(idx(k + 1)), rung(idx(k + 1)), step(idx(k + 1)), leave(idx(k + 1));
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= n; ++j) enter[idx(i)].push_back(add(c.u(i), c.v(i, j)));
    for (int j = 1; j <= n; ++j) rung[idx(i)].push_back(add(c.v(i, j), c.w(i, j)));
    for (int j = 1; j < n; ++j) step[idx(i)].push_back(add(c.w(i, j), c.v(i, j + 1)));
    for (int j = 1; j <= n; ++j) leave[idx(i)].push_back(add(c.w(i, j), c.u(i + 1)));
  }
  std::vector<ResourceId> shortcut_in(idx(k + 1), -1), shortcut_out(idx(k + 1), -1);
  for (int i = 2; i <= k; ++i) shortcut_in[idx(i)] = add(c.u(1), c.v(i, 1));
  for (int i = 1; i < k; ++i) shortcut_out[idx(i)] = add(c.w(i, n), c.u(k + 1));

  const std::vector<Rational> caps(arcs.size(), Rational(1));
  GeneratedGame out{network_game(n, caps, std::move(arcs),
                                 std::vector<std::pair<NodeId, NodeId>>(idx(n), {c.u(1), c.u(k + 1)}),
                                 std::vector<RateFunction>(idx(n))),
                    {}};

  State s_star;
  const int group = n / k;
  for (int p = 0; p < n; ++p) {
    const int i = p / group + 1;
    Strategy path;
    path.push_back(i == 1 ? enter[1][0] : shortcut_in[idx(i)]);
    for (int j = 1; j <= n; ++j) {
      path.push_back(rung[idx(i)][idx(j - 1)]);
      if (j < n) path.push_back(step[idx(i)][idx(j - 1)]);
    }
    path.push_back(i == k ? leave[idx(k)][idx(n - 1)] : shortcut_out[idx(i)]);
    s_star.push_back(std::move(path));
  }
  State opt;
  for (int j = 1; j <= n; ++j) {
    Strategy path;
    for (int i = 1; i <= k; ++i) {
      path.push_back(enter[idx(i)][idx(j - 1)]);
      path.push_back(rung[idx(i)][idx(j - 1)]);
      path.push_back(leave[idx(i)][idx(j - 1)]);
    }
    opt.push_back(std::move(path));
  }
  out.states["s_star"] = s_star;
  out.states["optimum"] = opt;
  return out;
}

GeneratedGame family_d(int n) {
  const int h = n / 2;
  // Sources of the small players are 0..h-1; the chain nodes are h..2h.
  const auto chain = [h](int j) { return h + j; };
  std::vector<Rational> caps;
  std::vector<Arc> arcs;
  for (int i = 1; i <= h; ++i) {
    arcs.push_back({static_cast<ResourceId>(caps.size()), i - 1, chain(0)});
    caps.push_back(pow2(i - 1));
  }
  for (int j = 1; j <= h; ++j) {
    arcs.push_back({static_cast<ResourceId>(caps.size()), chain(j - 1), chain(j)});
    caps.push_back(pow2(h + 1));
    arcs.push_back({static_cast<ResourceId>(caps.size()), chain(j - 1), chain(j)});
    caps.push_back(pow2(h + 1) + Rational(1));
  }
  std::vector<std::pair<NodeId, NodeId>> ends;
  for (int i = 1; i <= h; ++i) ends.emplace_back(i - 1, chain(h));
  for (int j = 1; j <= h; ++j) ends.emplace_back(chain(j - 1), chain(j));
  return {network_game(n, caps, std::move(arcs), std::move(ends), std::vector<RateFunction>(idx(n))), {}};
}

GeneratedGame family_e(const GeneratorParams& p) {
  const Rational rho1 = p.rho + Rational(1);
  const Rational v_t1 = p.t1;
  const Rational v_t2 = p.t1 - p.dip;
  GameInstance g;
  g.players = 2;
  const Rational c12 = rho1 * p.t1 + v_t1;
  g.resources = {{0, c12}, {1, c12}, {2, rho1 * p.t2 + v_t2}};
  const std::vector<Strategy> both{{0, 2}, {1, 2}};
  g.space = ExplicitSpace{{both, both}};
  g.rates = {dip_rate(p.t1, p.t2, p.dip), RateFunction::constant(rho1)};
  return {std::move(g), {}};
}

GeneratedGame family_f(int n, const Rational& eps) {
  const NodeId s = 0;
  const NodeId t = 2 * n + 1;
  const auto v = [](int j) { return 1 + 2 * (j - 1); };
  const auto w = [](int j) { return 2 + 2 * (j - 1); };
  const Rational high = Rational(1) + eps;
  std::vector<Rational> caps;
  std::vector<Arc> arcs;
  const auto add = [&](NodeId a, NodeId b, const Rational& cap) {
    arcs.push_back({static_cast<ResourceId>(caps.size()), a, b});
    caps.push_back(cap);
  };
  for (int j = 1; j <= n; ++j) add(s, v(j), j == 1 ? high : Rational(1));
  for (int j = 1; j <= n; ++j) add(v(j), w(j), high);
  for (int j = 1; j < n; ++j) add(w(j), v(j + 1), high);
  for (int j = 1; j <= n; ++j) add(w(j), t, j == n ? high : Rational(1));
  std::vector<RateFunction> rates{RateFunction::constant(1)};
  for (int i = 1; i < n; ++i) rates.push_back(RateFunction::constant(eps / Rational(n)));
  return {network_game(n, caps, std::move(arcs), std::vector<std::pair<NodeId, NodeId>>(idx(n), {s, t}),
                       std::move(rates)),
          {}};
}

std::vector<std::string> family_violations(const GeneratorParams& p) {
  std::vector<std::string> out;
  const auto need = [&](bool ok, const std::string& msg) {
    if (!ok) out.push_back("family " + std::string(1, p.family) + ": " + msg);
  };
  switch (p.family) {
    case 'a':
    case 'd':
      need(p.n >= 2 && p.n % 2 == 0, "n must be even and at least 2");
      if (p.family == 'd') need(p.n <= 40, "n must be at most 40");
      break;
    case 'b':
      need(p.n >= 2, "n must be at least 2");
      need(p.eps.sign() > 0 && !(Rational(1) < p.eps), "eps must lie in (0, 1]");
      break;
    case 'c':
      need(p.n >= 1 && p.k >= 1, "n and k must be positive");
      need(p.k >= 1 && p.n % std::max(p.k, 1) == 0, "k must divide n");
      break;
    case 'e': {
      need(p.t1.sign() > 0, "t1 must be positive");
      need(p.t1 < p.t2, "t2 must exceed t1");
      need(p.dip.sign() > 0 && p.dip < p.t1, "dip must lie in (0, t1)");
      need(p.rho.sign() > 0, "rho must be positive");
      if (p.t1 < p.t2) {
        need(!(p.rho < p.dip / (p.t2 - p.t1)) && !(p.rho < Rational(1)),
             "rho must bound the slope of the aggregated rate");
      }
      need(p.t2 < p.t1 + p.t1 / (p.rho + Rational(1)), "t2 must be below t1 + V(t1)/(rho+1)");
      break;
    }
    case 'f':
      need(p.n >= 1, "n must be positive");
      need(p.eps.sign() > 0 && !(Rational(1) < p.eps), "eps must lie in (0, 1]");
      break;
    default:
      out.push_back("unknown family '" + std::string(1, p.family) + "'");
  }
  return out;
}

}  // namespace

RateFunction dip_rate(const Rational& t1, const Rational& t2, const Rational& dip) {
  return RateFunction({{Rational(0), Rational(1)}, {t1, -(dip / (t2 - t1))}, {t2, Rational(1)}}, false);
}

GeneratedGame generate(const GeneratorParams& params) {
  auto errors = family_violations(params);
  if (!errors.empty()) throw ValidationError(std::move(errors));
  GeneratedGame out;
  switch (params.family) {
    case 'a': out = family_a(params.n); break;
    case 'b': out = family_b(params.n, params.eps); break;
    case 'c': out = family_c(params.n, params.k); break;
    case 'd': out = family_d(params.n); break;
    case 'e': out = family_e(params); break;
    default: out = family_f(params.n, params.eps); break;
  }
  out.instance = validate_instance(std::move(out.instance));
  return out;
}

namespace {

long draw(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational random_capacity(std::mt19937_64& rng, const RandomParams& p) {
  if (draw(rng, 0, 9) == 0) return Rational(0);
  return Rational(draw(rng, 1, p.max_capacity * p.capacity_denominator), p.capacity_denominator);
}

RateFunction random_rate(std::mt19937_64& rng, const RandomParams& p) {
  static const Rational choices[] = {Rational(1, 2), Rational(1), Rational(2), Rational(3)};
  if (p.uniform) return RateFunction::constant(1);
  if (!p.piecewise || draw(rng, 0, 2) == 0) return RateFunction::constant(choices[draw(rng, 0, 3)]);
  std::vector<RateFunction::Piece> pieces{{Rational(0), choices[draw(rng, 0, 3)]}};
  const long extra = draw(rng, 1, 2);
  Rational at;
  for (long k = 0; k < extra; ++k) {
    at += Rational(draw(rng, 1, 4), 2);
    const bool last = k + 1 == extra;
    pieces.push_back({at, last || draw(rng, 0, 3) != 0 ? choices[draw(rng, 0, 3)] : Rational(0)});
  }
  return RateFunction(std::move(pieces), true);
}

std::vector<Strategy> random_strategies(std::mt19937_64& rng, const RandomParams& p, int m) {
  const long count = draw(rng, 1, p.max_strategies);
  std::set<Strategy> seen;
  std::vector<Strategy> out;
  for (long attempt = 0; attempt < 4 * count && static_cast<long>(out.size()) < count; ++attempt) {
    Strategy s;
    if (p.singleton) {
      s.push_back(static_cast<ResourceId>(draw(rng, 0, m - 1)));
    } else {
      for (int r = 0; r < m; ++r) {
        if (draw(rng, 0, 2) == 0) s.push_back(r);
      }
      if (s.empty()) s.push_back(static_cast<ResourceId>(draw(rng, 0, m - 1)));
    }
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

GameInstance random_explicit_game(std::uint64_t seed, const RandomParams& p) {
  std::mt19937_64 rng(seed);
  GameInstance g;
  g.players = static_cast<int>(draw(rng, 1, p.max_players));
  const int m = static_cast<int>(draw(rng, 1, p.max_resources));
  for (int r = 0; r < m; ++r) g.resources.push_back({r, random_capacity(rng, p)});
  ExplicitSpace space;
  for (int i = 0; i < g.players; ++i) {
    if (p.symmetric && i > 0) {
      space.strategies.push_back(space.strategies.front());
    } else {
      space.strategies.push_back(random_strategies(rng, p, m));
    }
  }
  g.space = std::move(space);
  for (int i = 0; i < g.players; ++i) g.rates.push_back(random_rate(rng, p));
  return validate_instance(std::move(g));
}

GameInstance random_network_game(std::uint64_t seed, int players, int max_arcs, long max_capacity) {
  std::mt19937_64 rng(seed);
  const int nodes = static_cast<int>(draw(rng, 2, 5));
  const NodeId s = 0;
  const NodeId t = nodes - 1;
  std::vector<Arc> arcs;
  // A backbone path keeps the sink reachable.
  NodeId at = s;
  while (at != t && static_cast<int>(arcs.size()) < max_arcs - 1) {
    const NodeId next = static_cast<NodeId>(draw(rng, at + 1, t));
    arcs.push_back({static_cast<ResourceId>(arcs.size()), at, next});
    at = next;
  }
  if (at != t) arcs.push_back({static_cast<ResourceId>(arcs.size()), at, t});
  const long extra = draw(rng, 0, max_arcs - static_cast<long>(arcs.size()));
  for (long k = 0; k < extra; ++k) {
    const NodeId a = static_cast<NodeId>(draw(rng, 0, nodes - 1));
    NodeId b = static_cast<NodeId>(draw(rng, 0, nodes - 2));
    if (b >= a) ++b;
    arcs.push_back({static_cast<ResourceId>(arcs.size()), a, b});
  }
  GameInstance g;
  g.players = players;
  for (std::size_t r = 0; r < arcs.size(); ++r) {
    g.resources.push_back({static_cast<ResourceId>(r), Rational(draw(rng, 1, max_capacity))});
  }
  g.space = NetworkSpace{std::move(arcs), std::vector<std::pair<NodeId, NodeId>>(idx(players), {s, t})};
  g.rates.assign(idx(players), RateFunction());
  return validate_instance(std::move(g));
}

}  // namespace pfg
