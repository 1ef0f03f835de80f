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
#include "oracles.hpp"
#include "tldg/evaluation.hpp"
#include "tldg/reductions.hpp"
#include "tldg/solvers.hpp"
#include "tldg/testkit.hpp"

namespace tldg {
namespace {

using testing::Choices;
using testing::Q;

PureStrategyProfile Defaults(const TwoLevelGame& g) {
  return {DefaultStrategy(g, Owner::kPlayer1), DefaultStrategy(g, Owner::kPlayer2)};
}

Rational HitOf(const HitRow& row, StateId t) {
  for (const auto& e : row.hits) {
    if (e.state == t) return e.probability;
  }
  return 0;
}

// Probability of first entering the upper level at `t`, by a direct solve
// over the lower states that can still get there.
std::vector<Rational> OracleHits(const TwoLevelGame& g, const testing::Picks& picks,
                                 StateId t) {
  const std::size_t n = g.num_states();
  const auto rows = testing::ChainOf(g, picks);
  std::vector<bool> upper(n);
  for (std::size_t i = 0; i < n; ++i) upper[i] = g.is_upper(MakeStateId(i));
  const auto live = testing::CanReach(rows, upper);
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  std::vector<Rational> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = 1;
    if (upper[i]) {
      b[i] = i == t.index() ? 1 : 0;
      continue;
    }
    if (!live[i]) continue;
    for (const auto& [j, p] : rows[i]) a[i][j] -= p;
  }
  return testing::GaussJordan(a, b);
}

TEST_CASE("geometric absorption into one upper state") {
  const TwoLevelGame g = testing::Abs();
  const HitDistribution h = ComputeHitDistribution(g, Defaults(g));
  const HitRow& row = h[g.Lookup("l")];
  REQUIRE(row.hits.size() == 1);
  CHECK(row.hits[0].state == g.Lookup("u"));
  CHECK(row.hits[0].probability == 1);
  CHECK(row.escape == 0);
}

TEST_CASE("three-way split") {
  const TwoLevelGame g = testing::ThreeWay();
  const HitDistribution h = ComputeHitDistribution(g, Defaults(g));
  const HitRow& row = h[g.Lookup("l")];
  CHECK(HitOf(row, g.Lookup("u1")) == Q("1/2"));
  CHECK(HitOf(row, g.Lookup("u2")) == Q("1/2"));
  CHECK(row.escape == 0);

  const TwoLevelGame frozen = FreezeLower(g, Defaults(g));
  const StateId l = frozen.Lookup("l");
  CHECK(frozen.owner(l) == Owner::kChance);
  CHECK(frozen.distribution(l).Probability(frozen.Lookup("u1")) == Q("1/2"));
  CHECK(frozen.distribution(l).Probability(frozen.Lookup("u2")) == Q("1/2"));
  CHECK(frozen.distribution(l).Probability(l) == 0);
  CHECK(IsOneStep(frozen));
  CHECK_FALSE(IsOneStep(g));
}

TEST_CASE("a lower self-loop escapes") {
  const TwoLevelGame g = testing::Bad();
  const PureStrategyProfile stay{Choices(g, {{"u", "u"}}), Choices(g, {{"l", "l"}})};
  const HitDistribution h = ComputeHitDistribution(g, stay);
  const HitRow& row = h[g.Lookup("l")];
  CHECK(row.hits.empty());
  CHECK(row.escape == 1);
  try {
    FreezeLower(g, stay);
    FAIL("freeze accepted a profile with escape mass");
  } catch (const EscapeMassNonzero& e) {
    CHECK(e.state() == "l");
    CHECK(e.escape() == 1);
  }
}

TEST_CASE("freezing the small examples") {
  const TwoLevelGame abs = testing::Abs();
  const TwoLevelGame frozen = FreezeLower(abs, Defaults(abs));
  const StateId l = frozen.Lookup("l");
  CHECK(frozen.owner(l) == Owner::kChance);
  CHECK(frozen.level(l) == Level::kLower);
  CHECK(frozen.distribution(l).entries().size() == 1);
  CHECK(frozen.distribution(l).Probability(frozen.Lookup("u")) == 1);

  RawGame raw = testing::RawLoop();
  raw.AddState("v", Owner::kPlayer1, Level::kUpper, Rational(3)).AddEdge("v", "v");
  raw.AddState("l", Owner::kPlayer1, Level::kLower).AddEdge("l", "u").AddEdge("l", "v");
  const TwoLevelGame g = ValidateStructure(raw);
  const PureStrategyProfile p{Choices(g, {{"u", "u"}, {"v", "v"}, {"l", "v"}}),
                              Strategy(g.num_states())};
  const TwoLevelGame f = FreezeLower(g, p);
  CHECK(f.owner(f.Lookup("l")) == Owner::kChance);
  CHECK(f.distribution(f.Lookup("l")).Probability(f.Lookup("v")) == 1);
  // Upper states are unchanged.
  CHECK(f.owner(f.Lookup("u")) == Owner::kPlayer1);
  CHECK(f.reward(f.Lookup("v")) == 3);

  const PureStrategyProfile r = RestrictToUpper(g, p);
  CHECK_FALSE(r.sigma.Has(g.Lookup("l")));
  CHECK(r.sigma.At(g.Lookup("v")) == g.Lookup("v"));
}

TEST_CASE("hit distributions agree with a direct solve") {
  GeneratorConfig config;
  config.lower_weight = 0.6;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    config.seed = seed;
    const TwoLevelGame g = Generate(config);
    const PureStrategyProfile p = Defaults(g);
    testing::Picks picks(g.num_states(), 0);
    for (StateId s : g.States()) {
      if (g.owner(s) != Owner::kChance) picks[s.index()] = Chosen(g, p, s).index();
    }
    const HitDistribution h = ComputeHitDistribution(g, p);
    for (StateId t : g.UpperStates().Members()) {
      const auto expected = OracleHits(g, picks, t);
      for (StateId s : g.States()) {
        if (g.is_upper(s)) continue;
        CAPTURE(seed);
        CHECK(HitOf(h[s], t) == expected[s.index()]);
      }
    }
    for (StateId s : g.States()) {
      if (g.is_upper(s)) continue;
      Rational total = h[s].escape;
      for (const auto& e : h[s].hits) total += e.probability;
      CHECK(total == 1);
    }
  }
}

TEST_CASE("freezing under an optimal profile keeps every value") {
  GeneratorConfig config;
  config.lower_weight = 0.6;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    config.seed = seed;
    const TwoLevelGame g = Generate(config);
    const SolveResult r = SolveStrategyImprovement(g);
    const TwoLevelGame f = FreezeLower(g, r.optimal_profile);
    CAPTURE(seed);
    CHECK(IsOneStep(f));
    CHECK(ValidateTwoLevel(f).empty());
    CHECK(testing::AsVector(SolveEnumerate(f).values) == testing::AsVector(r.values));
    CHECK(PolicyEvaluate(f, RestrictToUpper(g, r.optimal_profile)) == r.values);
  }
}

}  // namespace
}  // namespace tldg
