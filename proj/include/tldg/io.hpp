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

// Line-oriented text formats.
//
// Game file ("tldg 1"):
//
//   tldg 1
//   discount 1/2
//   state u p1 upper reward=1
//   state l chance lower
//   edge u l
//   prob l u 1/2
//   prob l l 1/2
//
// Strategy file ("tldg-strategy 1"):
//
//   tldg-strategy 1
//   choose u l
//
// `#` starts a comment; blank lines are ignored. Rationals are `p/q` or an
// integer. Serialization sorts states and edges by name and writes every
// rational in lowest terms, so parse and serialize are mutually inverse on
// validated games.

#ifndef TLDG_IO_HPP_
#define TLDG_IO_HPP_

#include <string>
#include <string_view>

#include "tldg/game.hpp"
#include "tldg/solvers.hpp"

namespace tldg {

enum class ParseErrorKind { kSyntaxError, kDuplicateState, kUnknownState };

std::string_view ToString(ParseErrorKind kind);

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& detail);
  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

// Syntax only; no structural checks beyond name resolution.
RawGame ParseRawGame(std::string_view text);

// ParseRawGame + ValidateStructure. The almost-sure condition is not checked
// here; see ValidateTwoLevel.
TwoLevelGame ParseGame(std::string_view text);

std::string SerializeGame(const TwoLevelGame& game);

// `player` names whose states the file must cover exactly. An optional
// `player p1|p2` line after the header must agree with it.
Strategy ParseStrategy(std::string_view text, const TwoLevelGame& game,
                       Owner player);

std::string SerializeStrategy(const TwoLevelGame& game, const Strategy& strategy);

std::optional<Comparison> ParseComparison(std::string_view text);

// `value <state> <rational>` lines in name order, then
// `strategy p1|p2 <state> <successor>` lines.
std::string FormatSolveOutput(const TwoLevelGame& game,
                              const SolveResult& result);

std::string FormatValues(const TwoLevelGame& game, const ValueVector& values);

}  // namespace tldg

#endif  // TLDG_IO_HPP_
