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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fixtures.hpp"
#include "tldg/io.hpp"
#include "tldg/testkit.hpp"

namespace tldg {
namespace {

// Solves the game with player 1 minimizing too, then reports the result as if
// it were an answer for the original game.
SolveResult MinimizingSolver(const TwoLevelGame& game, const SolveOptions& options) {
  RawGame raw = ToRaw(game);
  for (auto& st : raw.states) {
    if (st.owner == Owner::kPlayer1) st.owner = Owner::kPlayer2;
  }
  const TwoLevelGame flipped = ValidateStructure(raw);
  SolveResult r = SolveStrategyImprovement(flipped, options);
  Strategy sigma(game.num_states()), pi(game.num_states());
  for (StateId s : game.States()) {
    if (game.owner(s) == Owner::kPlayer1) sigma.Set(s, r.optimal_profile.pi.At(s));
    if (game.owner(s) == Owner::kPlayer2) pi.Set(s, r.optimal_profile.pi.At(s));
  }
  r.optimal_profile = {sigma, pi};
  return r;
}

TEST_CASE("config checks") {
  GeneratorConfig c;
  CHECK_NOTHROW(CheckConfig(c));
  auto rejected = [](auto mutate) {
    GeneratorConfig bad;
    mutate(bad);
    return static_cast<bool>([&] {
      try {
        CheckConfig(bad);
      } catch (const PreconditionError&) {
        return true;
      }
      return false;
    }());
  };
  CHECK(rejected([](GeneratorConfig& g) { g.min_states = 8; }));
  CHECK(rejected([](GeneratorConfig& g) { g.min_states = 0; }));
  CHECK(rejected([](GeneratorConfig& g) { g.min_degree = 0; }));
  CHECK(rejected([](GeneratorConfig& g) { g.weight_p1 = g.weight_p2 = g.weight_chance = 0; }));
  CHECK(rejected([](GeneratorConfig& g) { g.weight_p2 = -1; }));
  CHECK(rejected([](GeneratorConfig& g) { g.lower_weight = 1.5; }));
  CHECK(rejected([](GeneratorConfig& g) { g.reward_bound = 0; }));
  CHECK(rejected([](GeneratorConfig& g) { g.discounts = {}; }));
  CHECK(rejected([](GeneratorConfig& g) { g.discounts = {Rational(1)}; }));
}

TEST_CASE("generation is deterministic per seed") {
  GeneratorConfig c;
  c.seed = 42;
  CHECK(SerializeGame(Generate(c)) == SerializeGame(Generate(c)));
  c.seed = 43;
  const std::string other = SerializeGame(Generate(c));
  c.seed = 42;
  CHECK(SerializeGame(Generate(c)) != other);
}

TEST_CASE("no lower weight gives one-level games") {
  GeneratorConfig c;
  c.lower_weight = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    c.seed = seed;
    const TwoLevelGame g = Generate(c);
    CHECK_FALSE(g.HasLowerStates());
    CHECK(GenerateUnrepaired(c) == g);
  }
}

TEST_CASE("generated games respect the config") {
  GeneratorConfig c;
  std::size_t repaired = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    c.seed = seed;
    const TwoLevelGame g = Generate(c);
    CAPTURE(seed);
    CHECK(ValidateTwoLevel(g).empty());
    CHECK(g.num_states() >= 5);
    CHECK(g.num_states() <= 7);
    CHECK((g.discount() == Rational(1, 3) || g.discount() == Rational(1, 2) ||
           g.discount() == Rational(9, 10)));
    for (StateId s : g.States()) {
      CHECK(g.successors(s).size() >= 1);
      CHECK(g.successors(s).size() <= 3);
      if (!g.is_upper(s)) continue;
      const Rational& r = g.reward(s);
      CHECK(r > 0);
      CHECK(boost::multiprecision::numerator(r) <= 10);
      CHECK(boost::multiprecision::denominator(r) <= 10);
    }
    if (!ValidateTwoLevel(GenerateUnrepaired(c)).empty()) ++repaired;
  }
  // The repair path is exercised, not just the lucky draws.
  CHECK(repaired > 20);
}

TEST_CASE("repair gives up after the configured rounds") {
  GeneratorConfig c;
  c.max_repair_rounds = 0;
  bool raised = false;
  for (std::uint64_t seed = 0; seed < 50 && !raised; ++seed) {
    c.seed = seed;
    if (ValidateTwoLevel(GenerateUnrepaired(c)).empty()) continue;
    CHECK_THROWS_AS(Generate(c), RepairFailed);
    raised = true;
  }
  CHECK(raised);
}

TEST_CASE("empty suite passes") {
  const SuiteReport r = OracleSuite(GeneratorConfig{}, 0);
  CHECK(r.ok());
  CHECK(r.games == 0);
  CHECK_FALSE(r.first_failing_seed.has_value());
}

TEST_CASE("regression set passes every check") {
  for (const auto& [name, game] : testing::RegressionSet()) {
    CAPTURE(name);
    const GameOutcome o = CheckGame(game, SuiteOptions{});
    CHECK(o.passed);
    for (const auto& f : o.failures) MESSAGE(f);
    CHECK(o.checks.count("si=enum") == 1);
    CHECK(o.checks.count("simulation") == 1);
  }
}

TEST_CASE("a corrupted solver fails the suite") {
  SuiteOptions options;
  options.solver = MinimizingSolver;
  options.check_simulation = false;
  const SuiteReport r = OracleSuite(GeneratorConfig{}, 30, options);
  CHECK_FALSE(r.ok());
  CHECK(r.failed_games > 0);
  REQUIRE(r.first_failing_seed.has_value());
  CHECK(r.checks.at("si=enum").failed > 0);
  CHECK(FormatSuiteReport(r).find("FAIL") != std::string::npos);

  const GameOutcome choice = CheckGame(testing::Choice(), options);
  CHECK_FALSE(choice.passed);
}

TEST_CASE("suite results depend only on config and count") {
  GeneratorConfig c;
  c.seed = 500;
  SuiteOptions serial;
  serial.sim_samples = 300;
  SuiteOptions parallel = serial;
  parallel.workers = 4;
  const SuiteReport a = OracleSuite(c, 40, serial);
  const SuiteReport b = OracleSuite(c, 40, parallel);
  CHECK(a.ok());
  CHECK(FormatSuiteReport(a) == FormatSuiteReport(b));
  CHECK(a.games == 40);
  CHECK(a.checks.at("si=enum").passed == 40);
}

}  // namespace
}  // namespace tldg
