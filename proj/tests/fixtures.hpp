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

// Small hand-written games shared by the tests.

#ifndef TLDG_TESTS_FIXTURES_HPP_
#define TLDG_TESTS_FIXTURES_HPP_

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tldg/game.hpp"

namespace tldg::testing {

inline Rational Q(const char* text) {
  auto r = ParseRational(text);
  if (!r) throw std::invalid_argument(text);
  return *r;
}

// One player-1 upper state with a self-loop, r = 1, beta = 1/2.
inline RawGame RawLoop(Rational discount = Rational(1, 2)) {
  RawGame raw;
  raw.discount = discount;
  raw.AddState("u", Owner::kPlayer1, Level::kUpper, Rational(1));
  raw.AddEdge("u", "u");
  return raw;
}
inline TwoLevelGame Loop() { return ValidateStructure(RawLoop()); }

// u1 -> u2 -> u1 with rewards 2 and 6, beta = 1/2.
inline TwoLevelGame Alt() {
  RawGame raw;
  raw.discount = Rational(1, 2);
  raw.AddState("u1", Owner::kPlayer1, Level::kUpper, Rational(2));
  raw.AddState("u2", Owner::kPlayer1, Level::kUpper, Rational(6));
  raw.AddEdge("u1", "u2").AddEdge("u2", "u1");
  return ValidateStructure(raw);
}

// u (r = 1) chooses between absorbing upper states a (r = 1) and b (r = 3).
inline TwoLevelGame Choice(Owner chooser = Owner::kPlayer1) {
  RawGame raw;
  raw.discount = Rational(1, 2);
  raw.AddState("u", chooser, Level::kUpper, Rational(1));
  raw.AddState("a", Owner::kChance, Level::kUpper, Rational(1));
  raw.AddState("b", Owner::kChance, Level::kUpper, Rational(3));
  raw.AddEdge("u", "a").AddEdge("u", "b");
  raw.AddProb("a", "a", Rational(1)).AddProb("b", "b", Rational(1));
  return ValidateStructure(raw);
}
inline TwoLevelGame MinMax() { return Choice(Owner::kPlayer2); }

// Lower chance l flips between itself and the looping upper u.
inline TwoLevelGame Abs() {
  RawGame raw = RawLoop();
  raw.AddState("l", Owner::kChance, Level::kLower);
  raw.AddProb("l", "l", Rational(1, 2)).AddProb("l", "u", Rational(1, 2));
  return ValidateStructure(raw);
}

// Lower player-2 l can stay in place forever.
inline TwoLevelGame Bad() {
  RawGame raw = RawLoop();
  raw.AddState("l", Owner::kPlayer2, Level::kLower);
  raw.AddEdge("l", "l").AddEdge("l", "u");
  return ValidateStructure(raw);
}

// Lower chance l: a third each to u1, u2 and itself.
inline TwoLevelGame ThreeWay() {
  RawGame raw;
  raw.discount = Rational(1, 2);
  raw.AddState("u1", Owner::kPlayer1, Level::kUpper, Rational(2));
  raw.AddState("u2", Owner::kPlayer1, Level::kUpper, Rational(4));
  raw.AddState("l", Owner::kChance, Level::kLower);
  raw.AddEdge("u1", "l").AddEdge("u2", "u2");
  raw.AddProb("l", "u1", Rational(1, 3))
      .AddProb("l", "u2", Rational(1, 3))
      .AddProb("l", "l", Rational(1, 3));
  return ValidateStructure(raw);
}

// The regression set, by name.
inline std::vector<std::pair<std::string, TwoLevelGame>> RegressionSet() {
  return {{"loop", Loop()},
          {"alt", Alt()},
          {"choice", Choice()},
          {"minmax", MinMax()},
          {"abs", Abs()}};
}

// Builds a strategy from (state, successor) name pairs.
inline Strategy Choices(
    const TwoLevelGame& game,
    std::initializer_list<std::pair<const char*, const char*>> picks) {
  Strategy strategy(game.num_states());
  for (const auto& [s, t] : picks) strategy.Set(game.Lookup(s), game.Lookup(t));
  return strategy;
}

inline Rational ValueAt(const TwoLevelGame& game, const ValueVector& values,
                        const char* name) {
  return values[game.Lookup(name)];
}

}  // namespace tldg::testing

#endif  // TLDG_TESTS_FIXTURES_HPP_
