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

#include <string>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fixtures.hpp"
#include "tldg/io.hpp"
#include "tldg/solvers.hpp"
#include "tldg/testkit.hpp"

namespace tldg {
namespace {

using testing::Q;

ParseError ParseFailure(const std::string& text) {
  try {
    ParseGame(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("text was accepted");
  return ParseError(ParseErrorKind::kSyntaxError, 0, "");
}

ValidationError Invalid(const std::string& text) {
  try {
    ParseGame(text);
  } catch (const ValidationError& e) {
    return e;
  }
  FAIL("text was accepted");
  return ValidationError({});
}

constexpr const char* kAltText =
    "tldg 1\n"
    "discount 1/2\n"
    "state u1 p1 upper reward=2\n"
    "state u2 p1 upper reward=6\n"
    "edge u1 u2\n"
    "edge u2 u1\n";

TEST_CASE("serialization of the alternating game") {
  CHECK(SerializeGame(testing::Alt()) == kAltText);
  CHECK(ParseGame(kAltText) == testing::Alt());
}

TEST_CASE("round trip is byte-stable") {
  const std::string once = SerializeGame(testing::Alt());
  CHECK(SerializeGame(ParseGame(once)) == once);
  for (const auto& [name, game] : testing::RegressionSet()) {
    CAPTURE(name);
    CHECK(ParseGame(SerializeGame(game)) == game);
  }
}

TEST_CASE("generated games round-trip") {
  GeneratorConfig config;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    config.seed = seed;
    const TwoLevelGame g = Generate(config);
    const std::string text = SerializeGame(g);
    CHECK(SerializeGame(ParseGame(text)) == text);
    CHECK(ParseGame(text) == g);
  }
}

TEST_CASE("comments, blank lines and unsorted input") {
  const TwoLevelGame g = ParseGame(
      "# two states\n"
      "tldg 1   # header\n"
      "\n"
      "state u2 p1 upper reward=12/2\n"
      "  state u1 p1 upper reward=2\n"
      "edge u2 u1\n"
      "discount 2/4\n"
      "edge u1 u2   \n");
  CHECK(SerializeGame(g) == kAltText);
}

TEST_CASE("chance states and lower levels") {
  const std::string text =
      "tldg 1\n"
      "discount 1/2\n"
      "state l chance lower\n"
      "state u p1 upper reward=1\n"
      "prob l l 1/2\n"
      "prob l u 1/2\n"
      "edge u u\n";
  const TwoLevelGame g = ParseGame(text);
  CHECK(g == testing::Abs());
  CHECK(SerializeGame(g) == text);
}

TEST_CASE("syntax errors carry line numbers") {
  auto e = ParseFailure("tldg 1\ndiscount 1/2\nstate u p1 upper reward=1\nedge u\n");
  CHECK(e.kind() == ParseErrorKind::kSyntaxError);
  CHECK(e.line() == 4);

  CHECK(ParseFailure("tldg 2\n").line() == 1);
  CHECK(ParseFailure("").kind() == ParseErrorKind::kSyntaxError);
  CHECK(ParseFailure("tldg 1\ndiscount x\n").line() == 2);
  CHECK(ParseFailure("tldg 1\nstate u p3 upper reward=1\n").line() == 2);
  CHECK(ParseFailure("tldg 1\nstate u p1 middle\n").line() == 2);
  CHECK(ParseFailure("tldg 1\nstate u p1 upper bonus=1\n").line() == 2);
  CHECK(ParseFailure("tldg 1\nfrobnicate\n").line() == 2);
  CHECK(ParseFailure("tldg 1\ndiscount 1/2\ndiscount 1/3\n").line() == 3);
}

TEST_CASE("duplicate and unknown states") {
  auto dup = ParseFailure(
      "tldg 1\ndiscount 1/2\nstate u p1 upper reward=1\nstate u p2 upper reward=1\n");
  CHECK(dup.kind() == ParseErrorKind::kDuplicateState);
  CHECK(dup.line() == 4);

  auto unknown = ParseFailure(
      "tldg 1\ndiscount 1/2\nstate u p1 upper reward=1\nedge u u\nedge u v\n");
  CHECK(unknown.kind() == ParseErrorKind::kUnknownState);
  CHECK(unknown.line() == 5);
}

TEST_CASE("structural errors pass through") {
  CHECK(Invalid("tldg 1\ndiscount 3/2\nstate u p1 upper reward=1\nedge u u\n")
            .Has(ViolationKind::kDiscountOutOfRange));
  CHECK(Invalid("tldg 1\ndiscount 1/2\nstate u p1 upper reward=1\nedge u u\n"
                "state l chance lower\nprob l u 1/2\n")
            .Has(ViolationKind::kBadDistribution));
  const auto e = Invalid("tldg 1\ndiscount 1/2\nstate u p1 upper reward=0\nedge u u\n");
  REQUIRE(e.violations().size() == 1);
  CHECK(e.violations()[0].line == 3);
}

TEST_CASE("strategy files") {
  const TwoLevelGame g = testing::Choice();
  const Strategy s = ParseStrategy("tldg-strategy 1\nchoose u b\n", g, Owner::kPlayer1);
  CHECK(s.At(g.Lookup("u")) == g.Lookup("b"));
  CHECK(SerializeStrategy(g, s) == "tldg-strategy 1\nchoose u b\n");
  CHECK(ParseStrategy("tldg-strategy 1\nplayer p1\nchoose u b\n", g, Owner::kPlayer1) == s);

  const Strategy none = ParseStrategy("tldg-strategy 1\n", g, Owner::kPlayer2);
  CHECK_FALSE(none.Has(g.Lookup("u")));

  for (const char* bad : {"tldg-strategy 1\n",                       // not total
                          "tldg-strategy 1\nchoose u u\n",           // not an edge
                          "tldg-strategy 1\nchoose a a\n",           // not p1's
                          "tldg-strategy 1\nchoose u a\nchoose u b\n",
                          "tldg-strategy 1\nplayer p2\nchoose u a\n",
                          "tldg-strategy 1\npick u a\n",
                          "strategy\nchoose u a\n"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(ParseStrategy(bad, g, Owner::kPlayer1), ParseError);
  }
  try {
    ParseStrategy("tldg-strategy 1\nchoose u zz\n", g, Owner::kPlayer1);
    FAIL("unknown successor accepted");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::kUnknownState);
    CHECK(e.line() == 2);
  }
}

TEST_CASE("comparison keywords") {
  CHECK(ParseComparison("ge") == Comparison::kGe);
  CHECK(ParseComparison("gt") == Comparison::kGt);
  CHECK(ParseComparison("le") == Comparison::kLe);
  CHECK(ParseComparison("lt") == Comparison::kLt);
  CHECK(ParseComparison("eq") == Comparison::kEq);
  CHECK_FALSE(ParseComparison(">=").has_value());
}

TEST_CASE("solve output") {
  const TwoLevelGame alt = testing::Alt();
  CHECK(FormatSolveOutput(alt, SolveStrategyImprovement(alt)) ==
        "value u1 10/3\n"
        "value u2 14/3\n"
        "strategy p1 u1 u2\n"
        "strategy p1 u2 u1\n");
  const TwoLevelGame minmax = testing::MinMax();
  CHECK(FormatSolveOutput(minmax, SolveStrategyImprovement(minmax)) ==
        "value a 1\n"
        "value b 3\n"
        "value u 1\n"
        "strategy p2 u a\n");
  CHECK(FormatValues(alt, SolveEnumerate(alt).values) == "value u1 10/3\nvalue u2 14/3\n");
}

}  // namespace
}  // namespace tldg
