// Copyright 2026 The TLDG Authors.
//
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

#include "tldg/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "tldg/exact_linear.hpp"

namespace tldg {

Rational Lookahead(const TwoLevelGame& game, StateId s, StateId t,
                   const ValueVector& values) {
  if (!game.is_upper(s)) return values[t];
  const Rational& beta = game.discount();
  return beta * game.reward(s) + (1 - beta) * values[t];
}

namespace {

Rational Expectation(const Distribution& d, const ValueVector& values) {
  Rational acc = 0;
  for (const auto& e : d.entries()) acc += e.probability * values[e.state];
  return acc;
}

Rational Discounted(const TwoLevelGame& game, StateId s, const Rational& cont) {
  if (!game.is_upper(s)) return cont;
  const Rational& beta = game.discount();
  return beta * game.reward(s) + (1 - beta) * cont;
}

}  // namespace

ValueVector BellmanApply(const TwoLevelGame& game, const ValueVector& values) {
  ValueVector out(game.num_states());
  for (StateId s : game.States()) {
    switch (game.owner(s)) {
      case Owner::kChance:
        out[s] = Discounted(game, s, Expectation(game.distribution(s), values));
        break;
      case Owner::kPlayer1:
      case Owner::kPlayer2: {
        const bool maximize = game.owner(s) == Owner::kPlayer1;
        const auto succ = game.successors(s);
        Rational best = values[succ.front()];
        for (StateId t : succ.subspan(1)) {
          const Rational& v = values[t];
          if (maximize ? v > best : v < best) best = v;
        }
        out[s] = Discounted(game, s, best);
        break;
      }
    }
  }
  return out;
}

ValueVector BellmanApply(const TwoLevelGame& game,
                         const PureStrategyProfile& profile,
                         const ValueVector& values) {
  ValueVector out(game.num_states());
  for (StateId s : game.States()) {
    if (game.owner(s) == Owner::kChance) {
      out[s] = Discounted(game, s, Expectation(game.distribution(s), values));
    } else {
      out[s] = Lookahead(game, s, Chosen(game, profile, s), values);
    }
  }
  return out;
}

ChainRow InducedRow(const TwoLevelGame& game,
                    const PureStrategyProfile& profile, StateId s) {
  if (game.owner(s) == Owner::kChance) {
    ChainRow row;
    for (const auto& e : game.distribution(s).entries()) {
      row.emplace_back(e.state, e.probability);
    }
    return row;
  }
  return {{Chosen(game, profile, s), Rational(1)}};
}

StateSet NeverReachesUpper(const TwoLevelGame& game,
                           const PureStrategyProfile& profile) {
  const std::size_t n = game.num_states();
  StateSet reaches = game.UpperStates();
  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId s : game.States()) {
      if (reaches.Contains(s)) continue;
      bool hit = false;
      if (game.owner(s) == Owner::kChance) {
        for (StateId t : game.successors(s)) hit = hit || reaches.Contains(t);
      } else {
        hit = reaches.Contains(Chosen(game, profile, s));
      }
      if (hit) {
        reaches.Insert(s);
        changed = true;
      }
    }
  }
  StateSet out(n);
  for (StateId s : game.States()) {
    if (!reaches.Contains(s)) out.Insert(s);
  }
  return out;
}

ValueVector PolicyEvaluate(const TwoLevelGame& game,
                           const PureStrategyProfile& profile) {
  CheckProfile(game, profile);
  const std::size_t n = game.num_states();
  const StateSet zero = NeverReachesUpper(game, profile);

  std::vector<std::size_t> column(n, n);
  std::vector<StateId> unknowns;
  for (StateId s : game.States()) {
    if (zero.Contains(s)) continue;
    column[s.index()] = unknowns.size();
    unknowns.push_back(s);
  }

  const std::size_t k = unknowns.size();
  RationalMatrix a(k, std::vector<Rational>(k, Rational(0)));
  std::vector<Rational> b(k, Rational(0));
  const Rational& beta = game.discount();
  for (std::size_t i = 0; i < k; ++i) {
    const StateId s = unknowns[i];
    a[i][i] += 1;
    const Rational factor = game.is_upper(s) ? Rational(1 - beta) : Rational(1);
    if (game.is_upper(s)) b[i] = beta * game.reward(s);
    for (const auto& [t, p] : InducedRow(game, profile, s)) {
      if (column[t.index()] == n) continue;  // V(t) = 0
      a[i][column[t.index()]] -= factor * p;
    }
  }

  std::vector<Rational> x;
  try {
    x = SolveLinearSystem(a, b);
  } catch (const SingularSystem&) {
    throw InternalInconsistency(
        "policy evaluation system singular after zeroing unreachable states");
  }

  ValueVector out(n, Rational(0));
  for (std::size_t i = 0; i < k; ++i) out[unknowns[i]] = x[i];
  return out;
}

ApproxValueVector ValueIteration(const TwoLevelGame& game, double tolerance,
                                 std::size_t max_rounds) {
  if (!(tolerance > 0)) throw PreconditionError("tolerance must be positive");
  const std::size_t n = game.num_states();
  const double beta = ToDouble(game.discount());

  // Flatten the game into doubles once.
  std::vector<double> scaled_reward(n, 0.0);
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(n);
  for (StateId s : game.States()) {
    if (game.is_upper(s)) scaled_reward[s.index()] = beta * ToDouble(game.reward(s));
    if (game.owner(s) == Owner::kChance) {
      for (const auto& e : game.distribution(s).entries()) {
        rows[s.index()].emplace_back(e.state.index(), ToDouble(e.probability));
      }
    } else {
      for (StateId t : game.successors(s)) rows[s.index()].emplace_back(t.index(), 0.0);
    }
  }

  ApproxValueVector result;
  result.values.assign(n, 0.0);
  std::vector<double> next(n, 0.0);
  while (result.rounds < max_rounds) {
    double change = 0.0;
    for (StateId s : game.States()) {
      const std::size_t i = s.index();
      double cont = 0.0;
      switch (game.owner(s)) {
        case Owner::kChance:
          for (auto [t, p] : rows[i]) cont += p * result.values[t];
          break;
        case Owner::kPlayer1:
          cont = result.values[rows[i].front().first];
          for (auto [t, p] : rows[i]) cont = std::max(cont, result.values[t]);
          break;
        case Owner::kPlayer2:
          cont = result.values[rows[i].front().first];
          for (auto [t, p] : rows[i]) cont = std::min(cont, result.values[t]);
          break;
      }
      next[i] = game.is_upper(s) ? scaled_reward[i] + (1.0 - beta) * cont : cont;
      change = std::max(change, std::abs(next[i] - result.values[i]));
    }
    result.values.swap(next);
    ++result.rounds;
    result.last_change = change;
    if (change <= tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace tldg
