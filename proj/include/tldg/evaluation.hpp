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

// One-step value operator, exact evaluation of fixed pure memoryless
// profiles, and floating-point value iteration.
//
// Value convention: entering an upper state s with continuation value V(t)
// is worth  beta·r(s) + (1 - beta)·V(t);  lower states pass V(t) through
// unchanged. Plays that stop visiting upper states contribute nothing more.

#ifndef TLDG_EVALUATION_HPP_
#define TLDG_EVALUATION_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "tldg/game.hpp"

namespace tldg {

// Value of moving from s to t given continuation values `values`.
Rational Lookahead(const TwoLevelGame& game, StateId s, StateId t,
                   const ValueVector& values);

// max / min / average over successors at each state, with the upper-state
// discounting above.
ValueVector BellmanApply(const TwoLevelGame& game, const ValueVector& values);

// Same operator with player choices fixed by the profile.
ValueVector BellmanApply(const TwoLevelGame& game,
                         const PureStrategyProfile& profile,
                         const ValueVector& values);

using ChainRow = std::vector<std::pair<StateId, Rational>>;

// Transition row of the Markov chain induced by the profile.
ChainRow InducedRow(const TwoLevelGame& game,
                    const PureStrategyProfile& profile, StateId s);

// States from which no upper state is reachable in the induced chain.
StateSet NeverReachesUpper(const TwoLevelGame& game,
                           const PureStrategyProfile& profile);

// Exact expected payoff from every start state under the profile. States in
// NeverReachesUpper get 0; the rest solve a nonsingular linear system.
ValueVector PolicyEvaluate(const TwoLevelGame& game,
                           const PureStrategyProfile& profile);

struct ApproxValueVector {
  std::vector<double> values;  // indexed by StateId::index()
  double last_change = 0.0;
  std::size_t rounds = 0;
  bool converged = false;
};

// Iterates the operator from the zero vector until the sup-norm change is at
// most `tolerance` or `max_rounds` applications have been made.
ApproxValueVector ValueIteration(const TwoLevelGame& game, double tolerance,
                                 std::size_t max_rounds = 10'000'000);

}  // namespace tldg

#endif  // TLDG_EVALUATION_HPP_
