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

// Path payoffs and Monte-Carlo playouts.
//
// The k-th upper state u_k visited by a play contributes
//   (1 - beta)^(k-1) · beta · r(u_k);
// lower states contribute nothing and do not advance the discount.

#ifndef TLDG_SEMANTICS_HPP_
#define TLDG_SEMANTICS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>

#include "tldg/game.hpp"

namespace tldg {

class NotAPath : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InsufficientUpperVisits : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Exact payoff accumulated over the first `upper_horizon` upper states of
// `path`. Throws NotAPath if consecutive states are not edges, and
// InsufficientUpperVisits if the path has fewer upper states.
Rational PathPayoff(const TwoLevelGame& game, std::span<const StateId> path,
                    std::size_t upper_horizon);

struct SimulationOptions {
  std::size_t samples = 1;
  std::size_t upper_horizon = 60;
  std::uint64_t seed = 0;
  // Raw transitions per sample before giving up on a play stuck in lower
  // states.
  std::size_t max_steps = 1'000'000;
  // 0 means std::thread::hardware_concurrency().
  unsigned workers = 1;
};

struct SimulationReport {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::size_t truncation_horizon = 0;
  std::uint64_t seed = 0;
  // (1 - beta)^horizon · max reward: the most the cut-off tail can be worth.
  double truncation_bound = 0.0;
  // Worst-case floating-point error of the estimate itself.
  double rounding_bound = 0.0;
  // Samples that hit max_steps.
  std::size_t truncated = 0;
};

// Mean of per-sample truncated payoffs from `start` under the profile.
// Sample i draws from a generator seeded by a fixed function of (seed, i), so
// the report is bit-identical for any worker count. Chance moves compare a
// 53-bit uniform k/2^53 exactly against cumulative rational probabilities.
SimulationReport SimulateValue(const TwoLevelGame& game,
                               const PureStrategyProfile& profile,
                               StateId start, const SimulationOptions& options);

}  // namespace tldg

#endif  // TLDG_SEMANTICS_HPP_
