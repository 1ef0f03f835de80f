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

#include <cmath>
#include <vector>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fixtures.hpp"
#include "tldg/evaluation.hpp"
#include "tldg/semantics.hpp"
#include "tldg/solvers.hpp"
#include "tldg/testkit.hpp"

namespace tldg {
namespace {

using testing::Q;

std::vector<StateId> PathOf(const TwoLevelGame& g, std::initializer_list<const char*> names) {
  std::vector<StateId> path;
  for (const char* n : names) path.push_back(g.Lookup(n));
  return path;
}

PureStrategyProfile Defaults(const TwoLevelGame& g) {
  return {DefaultStrategy(g, Owner::kPlayer1), DefaultStrategy(g, Owner::kPlayer2)};
}

TEST_CASE("geometric partial sum") {
  const TwoLevelGame g = testing::Loop();
  CHECK(PathPayoff(g, PathOf(g, {"u", "u", "u"}), 3) == Q("7/8"));
  CHECK(PathPayoff(g, PathOf(g, {"u", "u", "u"}), 1) == Q("1/2"));
  CHECK(PathPayoff(g, PathOf(g, {"u"}), 0) == 0);
}

TEST_CASE("lower prefixes add nothing") {
  const TwoLevelGame g = testing::Abs();
  CHECK(PathPayoff(g, PathOf(g, {"l", "u"}), 1) == Q("1/2"));
  CHECK(PathPayoff(g, PathOf(g, {"l", "l", "l", "l", "u"}), 1) == Q("1/2"));
}

TEST_CASE("alternating path") {
  const TwoLevelGame g = testing::Alt();
  // 1/2 * 2 + 1/4 * 6.
  CHECK(PathPayoff(g, PathOf(g, {"u1", "u2"}), 2) == Q("5/2"));
  CHECK(PathPayoff(g, PathOf(g, {"u2", "u1", "u2"}), 3) == Q("3") + Q("1/2") + Q("3/4"));
}

TEST_CASE("payoff grows with the horizon and stays below the largest reward") {
  const TwoLevelGame g = testing::Alt();
  std::vector<StateId> path;
  for (int i = 0; i < 30; ++i) path.push_back(g.Lookup(i % 2 ? "u2" : "u1"));
  Rational previous = 0;
  for (std::size_t h = 0; h <= path.size(); ++h) {
    const Rational p = PathPayoff(g, path, h);
    CHECK(p >= previous);
    CHECK(p <= g.max_reward());
    previous = p;
  }
}

TEST_CASE("path errors") {
  const TwoLevelGame g = testing::Alt();
  CHECK_THROWS_AS(PathPayoff(g, PathOf(g, {"u1", "u1"}), 1), NotAPath);
  CHECK_THROWS_AS(PathPayoff(g, PathOf(g, {"u1", "u2"}), 3), InsufficientUpperVisits);
  const TwoLevelGame abs = testing::Abs();
  CHECK_THROWS_AS(PathPayoff(abs, PathOf(abs, {"l", "l"}), 1), InsufficientUpperVisits);
}

TEST_CASE("deterministic chain gives the truncated sum") {
  const TwoLevelGame g = testing::Loop();
  SimulationOptions opt;
  opt.samples = 1;
  opt.upper_horizon = 40;
  const auto report = SimulateValue(g, Defaults(g), g.Lookup("u"), opt);
  CHECK(report.estimate == 1.0 - std::ldexp(1.0, -40));
  CHECK(report.standard_error == 0.0);
  CHECK(report.truncation_bound == std::ldexp(1.0, -40));
  CHECK(report.samples == 1);
  CHECK(report.truncation_horizon == 40);
}

TEST_CASE("absorbing chance state estimates one") {
  const TwoLevelGame g = testing::Abs();
  SimulationOptions opt;
  opt.samples = 20000;
  opt.upper_horizon = 60;
  opt.seed = 5;
  const auto report = SimulateValue(g, Defaults(g), g.Lookup("l"), opt);
  CHECK(report.standard_error == 0.0);
  CHECK(std::abs(report.estimate - 1.0) <=
        3 * report.standard_error + report.truncation_bound + report.rounding_bound);
}

TEST_CASE("random chain lands within three standard errors") {
  const TwoLevelGame g = testing::ThreeWay();
  const PureStrategyProfile p = Defaults(g);
  const ValueVector exact = PolicyEvaluate(g, p);
  SimulationOptions opt;
  opt.samples = 50000;
  opt.seed = 99;
  const auto report = SimulateValue(g, p, g.Lookup("l"), opt);
  CHECK(report.standard_error > 0);
  CHECK(std::abs(report.estimate - ToDouble(exact[g.Lookup("l")])) <=
        3 * report.standard_error + report.truncation_bound + report.rounding_bound);
}

TEST_CASE("seed sweep stays within the bound almost always") {
  const TwoLevelGame g = testing::ThreeWay();
  const PureStrategyProfile p = Defaults(g);
  const double exact = ToDouble(PolicyEvaluate(g, p)[g.Lookup("l")]);
  SimulationOptions opt;
  opt.samples = 2000;
  opt.upper_horizon = 40;
  constexpr int kSeeds = 400;
  int within = 0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    opt.seed = static_cast<std::uint64_t>(seed);
    const auto r = SimulateValue(g, p, g.Lookup("l"), opt);
    if (std::abs(r.estimate - exact) <=
        3 * r.standard_error + r.truncation_bound + r.rounding_bound) {
      ++within;
    }
  }
  CHECK(within >= kSeeds * 99 / 100);
}

TEST_CASE("zero samples is a precondition error") {
  const TwoLevelGame g = testing::Loop();
  SimulationOptions opt;
  opt.samples = 0;
  CHECK_THROWS_AS(SimulateValue(g, Defaults(g), g.Lookup("u"), opt), PreconditionError);
}

TEST_CASE("plays stuck below the upper level stop early") {
  const TwoLevelGame g = testing::Bad();
  const PureStrategyProfile stay{testing::Choices(g, {{"u", "u"}}),
                                 testing::Choices(g, {{"l", "l"}})};
  SimulationOptions opt;
  opt.samples = 10;
  const auto report = SimulateValue(g, stay, g.Lookup("l"), opt);
  CHECK(report.estimate == 0.0);
  CHECK(report.truncated == 0);
}

TEST_CASE("results do not depend on the worker count") {
  GeneratorConfig config;
  config.seed = 4;
  const TwoLevelGame g = Generate(config);
  const SolveResult solved = SolveStrategyImprovement(g);
  SimulationOptions opt;
  opt.samples = 3001;
  opt.seed = 17;
  std::vector<SimulationReport> reports;
  for (unsigned workers : {1u, 2u, 3u, 8u, 0u}) {
    opt.workers = workers;
    reports.push_back(SimulateValue(g, solved.optimal_profile, MakeStateId(0), opt));
  }
  for (const auto& r : reports) {
    CHECK(r.estimate == reports.front().estimate);
    CHECK(r.standard_error == reports.front().standard_error);
  }
  opt.seed = 18;
  opt.workers = 1;
  const auto other = SimulateValue(g, solved.optimal_profile, MakeStateId(0), opt);
  CHECK(other.seed == 18);
  CHECK(reports.front().seed == 17);
}

TEST_CASE("reported bounds") {
  const TwoLevelGame g = testing::Alt();
  SimulationOptions opt;
  opt.samples = 4;
  opt.upper_horizon = 10;
  const auto report = SimulateValue(g, Defaults(g), g.Lookup("u1"), opt);
  // (1 - beta)^horizon times the largest reward.
  CHECK(report.truncation_bound == doctest::Approx(6.0 / 1024));
  CHECK(report.rounding_bound > 0);
  CHECK(report.rounding_bound < 1e-10);
  const double exact = 10.0 / 3;
  CHECK(std::abs(report.estimate - exact) <= report.truncation_bound + report.rounding_bound);
}

}  // namespace
}  // namespace tldg
