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

// Random instance generation and the cross-solver oracle harness.

#ifndef TLDG_TESTKIT_HPP_
#define TLDG_TESTKIT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tldg/game.hpp"
#include "tldg/solvers.hpp"

namespace tldg {

struct GeneratorConfig {
  std::size_t min_states = 5;
  std::size_t max_states = 7;
  std::size_t min_degree = 1;
  std::size_t max_degree = 3;
  double weight_p1 = 1.0;
  double weight_p2 = 1.0;
  double weight_chance = 1.0;
  // Probability that a state is drawn on the lower level.
  double lower_weight = 0.4;
  // Rewards are p/q with 1 <= p, q <= reward_bound.
  std::int64_t reward_bound = 10;
  // Chance rows draw integer weights in [1, prob_weight_bound] and normalize.
  std::int64_t prob_weight_bound = 4;
  std::vector<Rational> discounts = {Rational(1, 3), Rational(1, 2),
                                     Rational(9, 10)};
  std::uint64_t seed = 0;
  std::size_t max_repair_rounds = 16;
};

// Throws PreconditionError on empty ranges, negative or all-zero weights, or
// discounts outside (0, 1).
void CheckConfig(const GeneratorConfig& config);

class RepairFailed : public Error {
 public:
  using Error::Error;
};

// Random game repaired until it passes ValidateTwoLevel. Deterministic in
// the config (including its seed).
TwoLevelGame Generate(const GeneratorConfig& config);

// Arbitrary structurally valid game: the almost-sure condition is not
// enforced. Used to exercise the qualitative algorithms.
TwoLevelGame GenerateUnrepaired(const GeneratorConfig& config);

using Solver =
    std::function<SolveResult(const TwoLevelGame&, const SolveOptions&)>;

struct SuiteOptions {
  SolveOptions solve;
  // Solver under test, compared against enumeration. Defaults to strategy
  // improvement.
  Solver solver;
  double vi_tolerance = 1e-10;
  double vi_max_error = 1e-6;
  bool check_simulation = true;
  std::size_t sim_samples = 2000;
  std::size_t sim_horizon = 40;
  // Accepted deviation in standard errors, on top of truncation and
  // rounding bounds.
  double sim_sigmas = 4.0;
  unsigned workers = 1;
};

struct CheckTally {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct GameOutcome {
  bool passed = true;
  std::vector<std::string> failures;  // "<check>: <detail>"
  std::map<std::string, bool> checks;
};

// Runs every cross-check on a single game:
//   si=enum     solver values equal enumeration values exactly
//   lp          (no player-2 states) LP = player-1 best response = enumeration
//   saddle      certificates of both returned profiles are valid
//   invariants  values = policy evaluation of the profile = Bellman fixpoint
//   freeze      freezing the lower level preserves every value
//   vi          value iteration within vi_max_error
//   simulation  Monte-Carlo estimate within statistical bounds
GameOutcome CheckGame(const TwoLevelGame& game, const SuiteOptions& options,
                      std::uint64_t sim_seed = 0);

struct SuiteReport {
  std::size_t games = 0;
  std::size_t passed_games = 0;
  std::size_t failed_games = 0;
  std::map<std::string, CheckTally> checks;
  std::optional<std::uint64_t> first_failing_seed;
  std::vector<std::string> failures;
  bool ok() const { return failed_games == 0; }
};

// CheckGame over `count` generated games; game i uses seed config.seed + i.
// Pure function of (config, count, options).
SuiteReport OracleSuite(const GeneratorConfig& config, std::size_t count,
                        const SuiteOptions& options = {});

std::string FormatSuiteReport(const SuiteReport& report);

}  // namespace tldg

#endif  // TLDG_TESTKIT_HPP_
