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

// Exact solvers for two-level discounted games.
//
// All of them return pure memoryless strategies and exact rational values.
// Ties are always broken towards the lowest state index, and initial
// strategies pick the lowest-index successor, so every run is reproducible.

#ifndef TLDG_SOLVERS_HPP_
#define TLDG_SOLVERS_HPP_

#include <cstddef>
#include <functional>
#include <string_view>

#include "tldg/game.hpp"

namespace tldg {

class TooLarge : public Error {
 public:
  using Error::Error;
};

enum class SolveMethod {
  kEnumeration,
  kStrategyImprovement,
  // Strategy improvement revisited a strategy and handed over to
  // enumeration. Never expected on valid input.
  kEnumerationFallback,
};

std::string_view ToString(SolveMethod method);

struct SolveOptions {
  // Upper bound on |player-1 strategies| x |player-2 strategies| for
  // exhaustive enumeration.
  std::size_t enumeration_cap = 10'000'000;
  // Policy-iteration rounds inside a best response before falling back to
  // enumerating the responder's strategies.
  std::size_t best_response_cap = 10'000;
  // Called after each outer strategy-improvement evaluation with the
  // iteration number (from 1), the current player-1 strategy and the value
  // it guarantees.
  std::function<void(std::size_t, const Strategy&, const ValueVector&)>
      on_outer_iteration;
};

struct SolveResult {
  ValueVector values;
  PureStrategyProfile optimal_profile;
  SolveMethod method = SolveMethod::kEnumeration;
  std::size_t iterations = 0;
};

struct BestResponse {
  ValueVector values;
  Strategy strategy;
  std::size_t iterations = 0;
  bool fell_back = false;
};

// Number of pure memoryless strategies of `owner`, saturating at SIZE_MAX.
std::size_t CountStrategies(const TwoLevelGame& game, Owner owner);

// Calls `visit` with every pure memoryless strategy of `owner`, in
// lexicographic order of choices (lowest-index state most significant).
void ForEachStrategy(const TwoLevelGame& game, Owner owner,
                     const std::function<void(const Strategy&)>& visit);

// Exhaustive search over all pure memoryless profiles. Throws TooLarge when
// the profile count exceeds options.enumeration_cap, InternalInconsistency
// if no single profile attains the value everywhere.
SolveResult SolveEnumerate(const TwoLevelGame& game,
                           const SolveOptions& options = {});

// Minimizer's exact response to a fixed player-1 strategy. States from which
// player 2 can avoid the upper level forever are pinned to 0 first; the rest
// is policy iteration with strict-improvement switching.
BestResponse BestResponsePlayer2(const TwoLevelGame& game, const Strategy& sigma,
                                 const SolveOptions& options = {});

// Maximizer's exact response to a fixed player-2 strategy, by policy
// iteration.
BestResponse BestResponsePlayer1(const TwoLevelGame& game, const Strategy& pi,
                                 const SolveOptions& options = {});

// Values of a player-1 MDP (no player-2 states) from the linear program
//   minimize sum_s x_s  subject to, for every edge (s, t),
//     x_s >= x_t                         (lower player-1 s)
//     x_s >= beta r(s) + (1-beta) x_t    (upper player-1 s)
//   and for chance states
//     x_s  = sum_t d(s,t) x_t            (lower)
//     x_s  = beta r(s) + (1-beta) sum_t d(s,t) x_t   (upper),
//   x >= 0, solved with the exact simplex method.
ValueVector MdpLpSolve(const TwoLevelGame& game);

// Hierarchical strategy improvement for player 1 with exact player-2 best
// responses in the inner loop.
SolveResult SolveStrategyImprovement(const TwoLevelGame& game,
                                     const SolveOptions& options = {});

struct SaddleCertificate {
  PureStrategyProfile profile;
  ValueVector v_sigma_fixed;  // player 2 best-responds to sigma
  ValueVector v_pi_fixed;     // player 1 best-responds to pi
  bool valid = false;
};

SaddleCertificate CertifySaddle(const TwoLevelGame& game,
                                const PureStrategyProfile& profile,
                                const SolveOptions& options = {});

enum class Comparison { kGe, kGt, kLe, kLt, kEq };

bool Compare(const Rational& lhs, Comparison rel, const Rational& rhs);

// Whether value(state) rel q holds, solved exactly.
bool Decide(const TwoLevelGame& game, StateId state, Comparison rel,
            const Rational& q, const SolveOptions& options = {});

}  // namespace tldg

#endif  // TLDG_SOLVERS_HPP_
