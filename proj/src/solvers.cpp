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

#include "tldg/solvers.hpp"

#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tldg/evaluation.hpp"
#include "tldg/exact_linear.hpp"

namespace tldg {

std::string_view ToString(SolveMethod method) {
  switch (method) {
    case SolveMethod::kEnumeration: return "enum";
    case SolveMethod::kStrategyImprovement: return "si";
    case SolveMethod::kEnumerationFallback: return "enum-fallback";
  }
  return "?";
}

std::size_t CountStrategies(const TwoLevelGame& game, Owner owner) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t count = 1;
  for (StateId s : game.StatesOwnedBy(owner)) {
    const std::size_t d = game.successors(s).size();
    if (count > kMax / d) return kMax;
    count *= d;
  }
  return count;
}

void ForEachStrategy(const TwoLevelGame& game, Owner owner,
                     const std::function<void(const Strategy&)>& visit) {
  const std::vector<StateId> owned = game.StatesOwnedBy(owner);
  std::vector<std::size_t> digit(owned.size(), 0);
  Strategy current(game.num_states());
  for (StateId s : owned) current.Set(s, game.successors(s).front());
  while (true) {
    visit(current);
    std::size_t pos = owned.size();
    while (pos > 0) {
      --pos;
      const auto succ = game.successors(owned[pos]);
      if (++digit[pos] < succ.size()) {
        current.Set(owned[pos], succ[digit[pos]]);
        break;
      }
      digit[pos] = 0;
      current.Set(owned[pos], succ.front());
      if (pos == 0) return;
    }
    if (owned.empty()) return;
  }
}

namespace {

PureStrategyProfile MakeProfile(Strategy sigma, Strategy pi) {
  return PureStrategyProfile{std::move(sigma), std::move(pi)};
}

// Exhaustive optimal response of `responder` to the fixed opponent strategy.
BestResponse EnumerateResponse(const TwoLevelGame& game, const Strategy& fixed,
                               Owner responder) {
  const bool maximize = responder == Owner::kPlayer1;
  auto profile_for = [&](const Strategy& response) {
    return maximize ? MakeProfile(response, fixed) : MakeProfile(fixed, response);
  };

  std::optional<ValueVector> envelope;
  ForEachStrategy(game, responder, [&](const Strategy& response) {
    ValueVector v = PolicyEvaluate(game, profile_for(response));
    if (!envelope) {
      envelope = std::move(v);
      return;
    }
    for (StateId s : game.States()) {
      if (maximize ? v[s] > (*envelope)[s] : v[s] < (*envelope)[s]) {
        (*envelope)[s] = v[s];
      }
    }
  });

  std::optional<BestResponse> found;
  ForEachStrategy(game, responder, [&](const Strategy& response) {
    if (found) return;
    ValueVector v = PolicyEvaluate(game, profile_for(response));
    if (v == *envelope) found = BestResponse{std::move(v), response, 0, true};
  });
  if (!found) {
    throw InternalInconsistency(
        "no single pure memoryless response attains the optimum everywhere");
  }
  return *found;
}

// One round of strict-improvement switching for `owner` against values.
// Returns true iff some choice changed.
bool ImproveChoices(const TwoLevelGame& game, Owner owner,
                    const ValueVector& values, Strategy& strategy,
                    const StateSet* frozen = nullptr) {
  const bool maximize = owner == Owner::kPlayer1;
  bool changed = false;
  for (StateId s : game.StatesOwnedBy(owner)) {
    if (frozen && frozen->Contains(s)) continue;
    const Rational current = Lookahead(game, s, strategy.At(s), values);
    std::optional<StateId> best;
    Rational best_value;
    for (StateId t : game.successors(s)) {
      Rational v = Lookahead(game, s, t, values);
      if (!best || (maximize ? v > best_value : v < best_value)) {
        best = t;
        best_value = std::move(v);
      }
    }
    if (maximize ? best_value > current : best_value < current) {
      strategy.Set(s, *best);
      changed = true;
    }
  }
  return changed;
}

// Largest set of lower states that player 2 can keep the play inside
// forever when player 1 plays sigma.
StateSet Player2AvoidSet(const TwoLevelGame& game, const Strategy& sigma) {
  StateSet avoid(game.num_states());
  for (StateId s : game.States()) {
    if (!game.is_upper(s)) avoid.Insert(s);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId s : avoid.Members()) {
      bool stays = false;
      switch (game.owner(s)) {
        case Owner::kPlayer1:
          stays = avoid.Contains(sigma.At(s));
          break;
        case Owner::kPlayer2:
          stays = false;
          for (StateId t : game.successors(s)) stays = stays || avoid.Contains(t);
          break;
        case Owner::kChance:
          stays = true;
          for (StateId t : game.successors(s)) stays = stays && avoid.Contains(t);
          break;
      }
      if (!stays) {
        avoid.Erase(s);
        changed = true;
      }
    }
  }
  return avoid;
}

}  // namespace

SolveResult SolveEnumerate(const TwoLevelGame& game,
                           const SolveOptions& options) {
  const std::size_t n1 = CountStrategies(game, Owner::kPlayer1);
  const std::size_t n2 = CountStrategies(game, Owner::kPlayer2);
  if (n1 > options.enumeration_cap / n2) {
    throw TooLarge("enumeration needs more than " +
                   std::to_string(options.enumeration_cap) +
                   " profile evaluations");
  }

  // Guaranteed value of each player-1 strategy, then its upper envelope.
  std::optional<ValueVector> envelope;
  std::vector<std::pair<Strategy, ValueVector>> guaranteed;
  ForEachStrategy(game, Owner::kPlayer1, [&](const Strategy& sigma) {
    std::optional<ValueVector> worst;
    ForEachStrategy(game, Owner::kPlayer2, [&](const Strategy& pi) {
      ValueVector v = PolicyEvaluate(game, MakeProfile(sigma, pi));
      if (!worst) {
        worst = std::move(v);
        return;
      }
      for (StateId s : game.States()) {
        if (v[s] < (*worst)[s]) (*worst)[s] = v[s];
      }
    });
    if (!envelope) {
      envelope = *worst;
    } else {
      for (StateId s : game.States()) {
        if ((*worst)[s] > (*envelope)[s]) (*envelope)[s] = (*worst)[s];
      }
    }
    guaranteed.emplace_back(sigma, std::move(*worst));
  });

  for (const auto& [sigma, worst] : guaranteed) {
    if (worst != *envelope) continue;
    std::optional<Strategy> pi_star;
    ForEachStrategy(game, Owner::kPlayer2, [&](const Strategy& pi) {
      if (pi_star) return;
      if (PolicyEvaluate(game, MakeProfile(sigma, pi)) == worst) pi_star = pi;
    });
    if (!pi_star) {
      throw InternalInconsistency(
          "no player-2 strategy attains the guaranteed value everywhere");
    }
    SolveResult result;
    result.values = *envelope;
    result.optimal_profile = MakeProfile(sigma, *pi_star);
    result.method = SolveMethod::kEnumeration;
    result.iterations = n1 * n2;
    return result;
  }
  throw InternalInconsistency(
      "no player-1 strategy attains the value at every state");
}

BestResponse BestResponsePlayer2(const TwoLevelGame& game, const Strategy& sigma,
                                 const SolveOptions& options) {
  const StateSet avoid = Player2AvoidSet(game, sigma);
  Strategy pi(game.num_states());
  for (StateId s : game.StatesOwnedBy(Owner::kPlayer2)) {
    StateId choice = game.successors(s).front();
    if (avoid.Contains(s)) {
      for (StateId t : game.successors(s)) {
        if (avoid.Contains(t)) {
          choice = t;
          break;
        }
      }
    }
    pi.Set(s, choice);
  }

  BestResponse out;
  while (true) {
    ++out.iterations;
    out.values = PolicyEvaluate(game, MakeProfile(sigma, pi));
    if (!ImproveChoices(game, Owner::kPlayer2, out.values, pi, &avoid)) break;
    if (out.iterations >= options.best_response_cap) {
      BestResponse fallback = EnumerateResponse(game, sigma, Owner::kPlayer2);
      fallback.iterations = out.iterations;
      return fallback;
    }
  }
  out.strategy = std::move(pi);
  return out;
}

BestResponse BestResponsePlayer1(const TwoLevelGame& game, const Strategy& pi,
                                 const SolveOptions& options) {
  Strategy sigma = DefaultStrategy(game, Owner::kPlayer1);
  BestResponse out;
  while (true) {
    ++out.iterations;
    out.values = PolicyEvaluate(game, MakeProfile(sigma, pi));
    if (!ImproveChoices(game, Owner::kPlayer1, out.values, sigma)) break;
    if (out.iterations >= options.best_response_cap) {
      BestResponse fallback = EnumerateResponse(game, pi, Owner::kPlayer1);
      fallback.iterations = out.iterations;
      return fallback;
    }
  }
  out.strategy = std::move(sigma);
  return out;
}

ValueVector MdpLpSolve(const TwoLevelGame& game) {
  if (!game.StatesOwnedBy(Owner::kPlayer2).empty()) {
    throw PreconditionError("the LP route needs a game without player-2 states");
  }
  const std::size_t n = game.num_states();
  const Rational& beta = game.discount();
  const Rational keep = 1 - beta;

  LinearProgram lp;
  lp.num_variables = n;
  lp.objective.assign(n, Rational(1));
  for (StateId s : game.States()) {
    const bool upper = game.is_upper(s);
    const Rational factor = upper ? keep : Rational(1);
    const Rational rhs = upper ? Rational(beta * game.reward(s)) : Rational(0);
    if (game.owner(s) == Owner::kPlayer1) {
      for (StateId t : game.successors(s)) {
        LinearConstraint c;
        c.coefficients.assign(n, Rational(0));
        c.coefficients[s.index()] += 1;
        c.coefficients[t.index()] -= factor;
        c.relation = Relation::kGreaterEqual;
        c.rhs = rhs;
        lp.constraints.push_back(std::move(c));
      }
    } else {
      LinearConstraint c;
      c.coefficients.assign(n, Rational(0));
      c.coefficients[s.index()] += 1;
      for (const auto& e : game.distribution(s).entries()) {
        c.coefficients[e.state.index()] -= factor * e.probability;
      }
      c.relation = Relation::kEqual;
      c.rhs = rhs;
      lp.constraints.push_back(std::move(c));
    }
  }

  const LpSolution sol = SolveLinearProgram(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InternalInconsistency(sol.status == LpStatus::kInfeasible
                                    ? "MDP linear program infeasible"
                                    : "MDP linear program unbounded");
  }
  ValueVector out(n);
  for (StateId s : game.States()) out[s] = sol.x[s.index()];
  return out;
}

SolveResult SolveStrategyImprovement(const TwoLevelGame& game,
                                     const SolveOptions& options) {
  Strategy sigma = DefaultStrategy(game, Owner::kPlayer1);
  std::set<Strategy> seen;
  std::size_t iteration = 0;
  while (true) {
    seen.insert(sigma);
    ++iteration;
    BestResponse response = BestResponsePlayer2(game, sigma, options);
    if (options.on_outer_iteration) {
      options.on_outer_iteration(iteration, sigma, response.values);
    }
    if (!ImproveChoices(game, Owner::kPlayer1, response.values, sigma)) {
      SolveResult result;
      result.values = std::move(response.values);
      result.optimal_profile = MakeProfile(std::move(sigma),
                                           std::move(response.strategy));
      result.method = SolveMethod::kStrategyImprovement;
      result.iterations = iteration;
      return result;
    }
    if (seen.contains(sigma)) {
      SolveResult result = SolveEnumerate(game, options);
      result.method = SolveMethod::kEnumerationFallback;
      return result;
    }
  }
}

SaddleCertificate CertifySaddle(const TwoLevelGame& game,
                                const PureStrategyProfile& profile,
                                const SolveOptions& options) {
  CheckProfile(game, profile);
  SaddleCertificate cert;
  cert.profile = profile;
  cert.v_sigma_fixed = BestResponsePlayer2(game, profile.sigma, options).values;
  cert.v_pi_fixed = BestResponsePlayer1(game, profile.pi, options).values;
  cert.valid = cert.v_sigma_fixed == cert.v_pi_fixed;
  return cert;
}

bool Compare(const Rational& lhs, Comparison rel, const Rational& rhs) {
  switch (rel) {
    case Comparison::kGe: return lhs >= rhs;
    case Comparison::kGt: return lhs > rhs;
    case Comparison::kLe: return lhs <= rhs;
    case Comparison::kLt: return lhs < rhs;
    case Comparison::kEq: return lhs == rhs;
  }
  return false;
}

bool Decide(const TwoLevelGame& game, StateId state, Comparison rel,
            const Rational& q, const SolveOptions& options) {
  if (state.index() >= game.num_states()) {
    throw PreconditionError("state out of range");
  }
  const SolveResult result = SolveStrategyImprovement(game, options);
  return Compare(result.values[state], rel, q);
}

}  // namespace tldg
