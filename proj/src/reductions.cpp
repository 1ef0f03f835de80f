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

#include "tldg/reductions.hpp"

#include "tldg/evaluation.hpp"
#include "tldg/exact_linear.hpp"

namespace tldg {

EscapeMassNonzero::EscapeMassNonzero(std::string state, Rational escape)
    : PreconditionError("EscapeMassNonzero(" + state + "): escape mass " +
                        ToString(escape)),
      state_(std::move(state)),
      escape_(std::move(escape)) {}

HitDistribution ComputeHitDistribution(const TwoLevelGame& game,
                                       const PureStrategyProfile& profile) {
  CheckProfile(game, profile);
  const std::size_t n = game.num_states();
  const StateSet never = NeverReachesUpper(game, profile);

  // Transient lower states: lower and able to reach the upper level.
  std::vector<std::size_t> column(n, n);
  std::vector<StateId> transient;
  for (StateId s : game.States()) {
    if (game.is_upper(s) || never.Contains(s)) continue;
    column[s.index()] = transient.size();
    transient.push_back(s);
  }

  const std::size_t k = transient.size();
  RationalMatrix a(k, std::vector<Rational>(k, Rational(0)));
  std::vector<std::vector<Rational>> rhs(n);  // per upper target
  for (std::size_t i = 0; i < k; ++i) {
    a[i][i] += 1;
    for (const auto& [t, p] : InducedRow(game, profile, transient[i])) {
      if (game.is_upper(t)) {
        if (rhs[t.index()].empty()) rhs[t.index()].assign(k, Rational(0));
        rhs[t.index()][i] += p;
      } else if (column[t.index()] != n) {
        a[i][column[t.index()]] -= p;
      }
    }
  }

  HitDistribution out(n);
  for (StateId s : game.States()) {
    if (!game.is_upper(s)) out[s].escape = 1;
  }
  for (StateId t : game.States()) {
    if (rhs[t.index()].empty()) continue;
    std::vector<Rational> h;
    try {
      h = SolveLinearSystem(a, rhs[t.index()]);
    } catch (const SingularSystem&) {
      throw InternalInconsistency("hitting-probability system singular");
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (h[i] == 0) continue;
      out[transient[i]].hits.push_back({t, h[i]});
      out[transient[i]].escape -= h[i];
    }
  }
  return out;
}

TwoLevelGame FreezeLower(const TwoLevelGame& game,
                         const PureStrategyProfile& profile) {
  const HitDistribution hit = ComputeHitDistribution(game, profile);

  RawGame raw;
  raw.discount = game.discount();
  for (StateId s : game.States()) {
    if (game.is_upper(s)) {
      raw.AddState(game.name(s), game.owner(s), Level::kUpper, game.reward(s));
      if (game.owner(s) == Owner::kChance) {
        for (const auto& e : game.distribution(s).entries()) {
          raw.AddProb(game.name(s), game.name(e.state), e.probability);
        }
      } else {
        for (StateId t : game.successors(s)) raw.AddEdge(game.name(s), game.name(t));
      }
      continue;
    }
    if (hit[s].escape != 0) throw EscapeMassNonzero(game.name(s), hit[s].escape);
    raw.AddState(game.name(s), Owner::kChance, Level::kLower);
    for (const auto& e : hit[s].hits) {
      raw.AddProb(game.name(s), game.name(e.state), e.probability);
    }
  }
  return ValidateStructure(raw);
}

bool IsOneStep(const TwoLevelGame& game) {
  for (StateId s : game.States()) {
    if (game.is_upper(s)) continue;
    if (game.owner(s) != Owner::kChance) return false;
    for (StateId t : game.successors(s)) {
      if (!game.is_upper(t)) return false;
    }
  }
  return true;
}

PureStrategyProfile RestrictToUpper(const TwoLevelGame& game,
                                    const PureStrategyProfile& profile) {
  PureStrategyProfile out = profile;
  for (StateId s : game.States()) {
    if (game.is_upper(s)) continue;
    out.sigma.Clear(s);
    out.pi.Clear(s);
  }
  return out;
}

}  // namespace tldg
