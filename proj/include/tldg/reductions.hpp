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

// Freezing the lower level: every lower state is replaced by a chance state
// that jumps straight to the first upper state reached under a fixed profile.

#ifndef TLDG_REDUCTIONS_HPP_
#define TLDG_REDUCTIONS_HPP_

#include <vector>

#include "tldg/game.hpp"

namespace tldg {

struct HitRow {
  // First upper state reached, with probability; sorted, strictly positive.
  std::vector<Distribution::Entry> hits;
  // Probability of never reaching the upper level.
  Rational escape;
};

// Rows are filled for lower states only.
using HitDistribution = StateVector<HitRow>;

HitDistribution ComputeHitDistribution(const TwoLevelGame& game,
                                       const PureStrategyProfile& profile);

class EscapeMassNonzero : public PreconditionError {
 public:
  EscapeMassNonzero(std::string state, Rational escape);
  const std::string& state() const { return state_; }
  const Rational& escape() const { return escape_; }

 private:
  std::string state_;
  Rational escape_;
};

// One-step game: lower states become chance states over upper states with
// their hit distributions; upper states are unchanged. State names and
// indices are preserved. Throws EscapeMassNonzero if some lower state does
// not reach the upper level almost surely under the profile.
TwoLevelGame FreezeLower(const TwoLevelGame& game,
                         const PureStrategyProfile& profile);

// True iff every lower state is a chance state whose successors are all
// upper states.
bool IsOneStep(const TwoLevelGame& game);

// The profile with choices at lower states dropped, for use on the frozen
// game.
PureStrategyProfile RestrictToUpper(const TwoLevelGame& game,
                                    const PureStrategyProfile& profile);

}  // namespace tldg

#endif  // TLDG_REDUCTIONS_HPP_
