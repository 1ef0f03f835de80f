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

#include "tldg/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace tldg {

std::string_view ToString(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kSyntaxError: return "SyntaxError";
    case ParseErrorKind::kDuplicateState: return "DuplicateState";
    case ParseErrorKind::kUnknownState: return "UnknownState";
  }
  return "?";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& detail)
    : Error("line " + std::to_string(line) + ": " +
            std::string(ToString(kind)) + ": " + detail),
      kind_(kind),
      line_(line) {}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> Tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

Rational ExpectRational(const std::string& token, int line) {
  auto r = ParseRational(token);
  if (!r) {
    throw ParseError(ParseErrorKind::kSyntaxError, line,
                     "malformed rational '" + token + "'");
  }
  return *r;
}

void ExpectArity(const Line& line, std::size_t min, std::size_t max) {
  const std::size_t n = line.tokens.size();
  if (n < min || n > max) {
    throw ParseError(ParseErrorKind::kSyntaxError, line.number,
                     "wrong number of fields for '" + line.tokens[0] + "'");
  }
}

}  // namespace

RawGame ParseRawGame(std::string_view text) {
  const std::vector<Line> lines = Tokenize(text);
  if (lines.empty() || lines[0].tokens != std::vector<std::string>{"tldg", "1"}) {
    throw ParseError(ParseErrorKind::kSyntaxError,
                     lines.empty() ? 1 : lines[0].number,
                     "expected header 'tldg 1'");
  }

  RawGame raw;
  std::map<std::string, int> declared;
  int discount_line = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& keyword = line.tokens[0];
    if (keyword == "discount") {
      ExpectArity(line, 2, 2);
      if (discount_line) {
        throw ParseError(ParseErrorKind::kSyntaxError, line.number,
                         "discount already given on line " +
                             std::to_string(discount_line));
      }
      discount_line = line.number;
      raw.discount = ExpectRational(line.tokens[1], line.number);
    } else if (keyword == "state") {
      ExpectArity(line, 4, 5);
      RawState st;
      st.name = line.tokens[1];
      st.line = line.number;
      const std::string& owner = line.tokens[2];
      if (owner == "p1") {
        st.owner = Owner::kPlayer1;
      } else if (owner == "p2") {
        st.owner = Owner::kPlayer2;
      } else if (owner == "chance") {
        st.owner = Owner::kChance;
      } else {
        throw ParseError(ParseErrorKind::kSyntaxError, line.number,
                         "unknown owner '" + owner + "'");
      }
      const std::string& level = line.tokens[3];
      if (level == "upper") {
        st.level = Level::kUpper;
      } else if (level == "lower") {
        st.level = Level::kLower;
      } else {
        throw ParseError(ParseErrorKind::kSyntaxError, line.number,
                         "unknown level '" + level + "'");
      }
      if (line.tokens.size() == 5) {
        const std::string& attr = line.tokens[4];
        if (attr.rfind("reward=", 0) != 0) {
          throw ParseError(ParseErrorKind::kSyntaxError, line.number,
                           "expected reward=<rational>");
        }
        st.reward = ExpectRational(attr.substr(7), line.number);
      }
      if (auto [it, fresh] = declared.emplace(st.name, line.number); !fresh) {
        throw ParseError(ParseErrorKind::kDuplicateState, line.number,
                         "'" + st.name + "' already declared on line " +
                             std::to_string(it->second));
      }
      raw.states.push_back(std::move(st));
    } else if (keyword == "edge") {
      ExpectArity(line, 3, 3);
      raw.edges.push_back(RawEdge{line.tokens[1], line.tokens[2], line.number});
    } else if (keyword == "prob") {
      ExpectArity(line, 4, 4);
      raw.probs.push_back(RawProb{line.tokens[1], line.tokens[2],
                                  ExpectRational(line.tokens[3], line.number),
                                  line.number});
    } else {
      throw ParseError(ParseErrorKind::kSyntaxError, line.number,
                       "unknown keyword '" + keyword + "'");
    }
  }

  auto check_known = [&](const std::string& name, int line) {
    if (!declared.contains(name)) {
      throw ParseError(ParseErrorKind::kUnknownState, line,
                       "'" + name + "' is not declared");
    }
  };
  for (const auto& e : raw.edges) {
    check_known(e.source, e.line);
    check_known(e.target, e.line);
  }
  for (const auto& p : raw.probs) {
    check_known(p.source, p.line);
    check_known(p.target, p.line);
  }
  return raw;
}

TwoLevelGame ParseGame(std::string_view text) {
  return ValidateStructure(ParseRawGame(text));
}

std::string SerializeGame(const TwoLevelGame& game) {
  std::ostringstream out;
  out << "tldg 1\n";
  out << "discount " << ToString(game.discount()) << "\n";
  for (StateId s : game.States()) {
    out << "state " << game.name(s) << " " << ToString(game.owner(s)) << " "
        << ToString(game.level(s));
    if (game.is_upper(s)) out << " reward=" << ToString(game.reward(s));
    out << "\n";
  }
  for (StateId s : game.States()) {
    if (game.owner(s) == Owner::kChance) {
      for (const auto& e : game.distribution(s).entries()) {
        out << "prob " << game.name(s) << " " << game.name(e.state) << " "
            << ToString(e.probability) << "\n";
      }
    } else {
      for (StateId t : game.successors(s)) {
        out << "edge " << game.name(s) << " " << game.name(t) << "\n";
      }
    }
  }
  return out.str();
}

Strategy ParseStrategy(std::string_view text, const TwoLevelGame& game,
                       Owner player) {
  const std::vector<Line> lines = Tokenize(text);
  if (lines.empty() ||
      lines[0].tokens != std::vector<std::string>{"tldg-strategy", "1"}) {
    throw ParseError(ParseErrorKind::kSyntaxError,
                     lines.empty() ? 1 : lines[0].number,
                     "expected header 'tldg-strategy 1'");
  }
  Strategy strategy(game.num_states());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens[0] == "player" && i == 1) {
      ExpectArity(line, 2, 2);
      if (line.tokens[1] != ToString(player)) {
        throw ParseError(ParseErrorKind::kSyntaxError, line.number,
                         "strategy is for " + line.tokens[1] + ", expected " +
                             std::string(ToString(player)));
      }
      continue;
    }
    if (line.tokens[0] != "choose") {
      throw ParseError(ParseErrorKind::kSyntaxError, line.number,
                       "unknown keyword '" + line.tokens[0] + "'");
    }
    ExpectArity(line, 3, 3);
    auto s = game.Find(line.tokens[1]);
    auto t = game.Find(line.tokens[2]);
    if (!s || !t) {
      throw ParseError(ParseErrorKind::kUnknownState, line.number,
                       "'" + (s ? line.tokens[2] : line.tokens[1]) +
                           "' is not a state");
    }
    if (game.owner(*s) != player) {
      throw ParseError(ParseErrorKind::kSyntaxError, line.number,
                       "'" + line.tokens[1] + "' is not a " +
                           std::string(ToString(player)) + " state");
    }
    if (strategy.Has(*s)) {
      throw ParseError(ParseErrorKind::kSyntaxError, line.number,
                       "second choice for '" + line.tokens[1] + "'");
    }
    const auto succ = game.successors(*s);
    if (!std::binary_search(succ.begin(), succ.end(), *t)) {
      throw ParseError(ParseErrorKind::kSyntaxError, line.number,
                       line.tokens[1] + " -> " + line.tokens[2] +
                           " is not an edge");
    }
    strategy.Set(*s, *t);
  }
  for (StateId s : game.StatesOwnedBy(player)) {
    if (!strategy.Has(s)) {
      throw ParseError(ParseErrorKind::kSyntaxError,
                       lines.back().number,
                       "no choice for state '" + game.name(s) + "'");
    }
  }
  return strategy;
}

std::string SerializeStrategy(const TwoLevelGame& game,
                              const Strategy& strategy) {
  std::ostringstream out;
  out << "tldg-strategy 1\n";
  for (StateId s : game.States()) {
    if (strategy.Has(s)) {
      out << "choose " << game.name(s) << " " << game.name(strategy.At(s))
          << "\n";
    }
  }
  return out.str();
}

std::optional<Comparison> ParseComparison(std::string_view text) {
  if (text == "ge") return Comparison::kGe;
  if (text == "gt") return Comparison::kGt;
  if (text == "le") return Comparison::kLe;
  if (text == "lt") return Comparison::kLt;
  if (text == "eq") return Comparison::kEq;
  return std::nullopt;
}

std::string FormatValues(const TwoLevelGame& game, const ValueVector& values) {
  std::ostringstream out;
  for (StateId s : game.States()) {
    out << "value " << game.name(s) << " " << ToString(values[s]) << "\n";
  }
  return out.str();
}

std::string FormatSolveOutput(const TwoLevelGame& game,
                              const SolveResult& result) {
  std::ostringstream out;
  out << FormatValues(game, result.values);
  for (auto [strategy, label] :
       {std::pair{&result.optimal_profile.sigma, "p1"},
        std::pair{&result.optimal_profile.pi, "p2"}}) {
    for (StateId s : game.States()) {
      if (!strategy->Has(s)) continue;
      out << "strategy " << label << " " << game.name(s) << " "
          << game.name(strategy->At(s)) << "\n";
    }
  }
  return out.str();
}

}  // namespace tldg
