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

#include "tldg/game.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace tldg {

std::string_view ToString(Owner owner) {
  switch (owner) {
    case Owner::kPlayer1: return "p1";
    case Owner::kPlayer2: return "p2";
    case Owner::kChance: return "chance";
  }
  return "?";
}

std::string_view ToString(Level level) {
  return level == Level::kUpper ? "upper" : "lower";
}

std::string_view ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kBadStateName: return "BadStateName";
    case ViolationKind::kDuplicateState: return "DuplicateState";
    case ViolationKind::kDanglingEdge: return "DanglingEdge";
    case ViolationKind::kDuplicateEdge: return "DuplicateEdge";
    case ViolationKind::kEdgeKindMismatch: return "EdgeKindMismatch";
    case ViolationKind::kEmptySuccessors: return "EmptySuccessors";
    case ViolationKind::kBadDistribution: return "BadDistribution";
    case ViolationKind::kMissingReward: return "MissingReward";
    case ViolationKind::kRewardOnLower: return "RewardOnLower";
    case ViolationKind::kNonPositiveReward: return "NonPositiveReward";
    case ViolationKind::kMissingDiscount: return "MissingDiscount";
    case ViolationKind::kDiscountOutOfRange: return "DiscountOutOfRange";
    case ViolationKind::kLowerStateCannotForceUpper:
      return "LowerStateCannotForceUpper";
  }
  return "?";
}

std::string FormatViolation(const Violation& v) {
  std::ostringstream os;
  if (v.line > 0) os << "line " << v.line << ": ";
  os << ToString(v.kind);
  if (!v.states.empty()) {
    os << "(";
    for (std::size_t i = 0; i < v.states.size(); ++i) {
      os << (i ? ", " : "") << v.states[i];
    }
    os << ")";
  }
  if (!v.message.empty()) os << ": " << v.message;
  return os.str();
}

namespace {

std::string JoinViolations(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += FormatViolation(v);
  }
  return out;
}

bool IsValidName(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(JoinViolations(violations)), violations_(std::move(violations)) {}

bool ValidationError::Has(ViolationKind kind) const {
  return std::any_of(violations_.begin(), violations_.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::size_t StateSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<StateId> StateSet::Members() const {
  std::vector<StateId> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(MakeStateId(i));
  }
  return out;
}

bool StateSet::IsSubsetOf(const StateSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

Distribution::Distribution(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.state < b.state; });
}

Rational Distribution::Probability(StateId s) const {
  for (const auto& e : entries_) {
    if (e.state == s) return e.probability;
  }
  return Rational(0);
}

std::optional<StateId> Strategy::Get(StateId s) const {
  if (!Has(s)) return std::nullopt;
  return At(s);
}

RawGame& RawGame::AddState(std::string name, Owner owner, Level level,
                           std::optional<Rational> reward) {
  states.push_back(RawState{std::move(name), owner, level, std::move(reward)});
  return *this;
}

RawGame& RawGame::AddEdge(std::string source, std::string target) {
  edges.push_back(RawEdge{std::move(source), std::move(target)});
  return *this;
}

RawGame& RawGame::AddProb(std::string source, std::string target, Rational p) {
  probs.push_back(RawProb{std::move(source), std::move(target), std::move(p)});
  return *this;
}

// ---------------------------------------------------------------------------

std::optional<StateId> TwoLevelGame::Find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return MakeStateId(static_cast<std::size_t>(it - names_.begin()));
}

StateId TwoLevelGame::Lookup(std::string_view name) const {
  if (auto s = Find(name)) return *s;
  throw PreconditionError("unknown state '" + std::string(name) + "'");
}

std::vector<StateId> TwoLevelGame::States() const {
  std::vector<StateId> out;
  out.reserve(num_states());
  for (std::size_t i = 0; i < num_states(); ++i) out.push_back(MakeStateId(i));
  return out;
}

std::vector<StateId> TwoLevelGame::StatesOwnedBy(Owner owner) const {
  std::vector<StateId> out;
  for (std::size_t i = 0; i < num_states(); ++i) {
    if (owners_[i] == owner) out.push_back(MakeStateId(i));
  }
  return out;
}

StateSet TwoLevelGame::UpperStates() const {
  StateSet out(num_states());
  for (std::size_t i = 0; i < num_states(); ++i) {
    if (levels_[i] == Level::kUpper) out.Insert(MakeStateId(i));
  }
  return out;
}

bool TwoLevelGame::HasLowerStates() const {
  return std::find(levels_.begin(), levels_.end(), Level::kLower) !=
         levels_.end();
}

TwoLevelGame ValidateStructure(const RawGame& raw) {
  std::vector<Violation> violations;
  auto report = [&](ViolationKind kind, std::string message,
                    std::vector<std::string> states = {}, int line = 0) {
    violations.push_back(
        Violation{kind, std::move(message), std::move(states), line});
  };

  if (!raw.discount) {
    report(ViolationKind::kMissingDiscount, "no discount declared");
  } else if (*raw.discount <= 0 || *raw.discount >= 1) {
    report(ViolationKind::kDiscountOutOfRange,
           "discount " + ToString(*raw.discount) + " not in (0, 1)");
  }

  // Index order = lexicographic name order.
  std::map<std::string, const RawState*, std::less<>> by_name;
  for (const auto& st : raw.states) {
    if (!IsValidName(st.name)) {
      report(ViolationKind::kBadStateName, "'" + st.name + "'", {}, st.line);
      continue;
    }
    if (!by_name.emplace(st.name, &st).second) {
      report(ViolationKind::kDuplicateState, "", {st.name}, st.line);
    }
  }

  TwoLevelGame game;
  const std::size_t n = by_name.size();
  game.names_.reserve(n);
  for (const auto& [name, st] : by_name) {
    game.names_.push_back(name);
    game.owners_.push_back(st->owner);
    game.levels_.push_back(st->level);
    if (st->level == Level::kUpper) {
      if (!st->reward) {
        report(ViolationKind::kMissingReward, "", {name}, st->line);
        game.rewards_.emplace_back(0);
      } else {
        if (*st->reward <= 0) {
          report(ViolationKind::kNonPositiveReward, ToString(*st->reward),
                 {name}, st->line);
        }
        game.rewards_.push_back(*st->reward);
      }
    } else {
      if (st->reward) {
        report(ViolationKind::kRewardOnLower, "", {name}, st->line);
      }
      game.rewards_.emplace_back(0);
    }
  }
  game.successors_.assign(n, {});
  game.discount_ = raw.discount.value_or(Rational(0));

  std::vector<std::set<StateId>> succ(n);
  std::vector<std::vector<Distribution::Entry>> dist(n);

  auto resolve = [&](const std::string& src, const std::string& dst,
                     int line) -> std::optional<std::pair<StateId, StateId>> {
    auto s = game.Find(src);
    auto t = game.Find(dst);
    if (!s || !t) {
      report(ViolationKind::kDanglingEdge, src + " -> " + dst, {}, line);
      return std::nullopt;
    }
    return std::make_pair(*s, *t);
  };

  for (const auto& e : raw.edges) {
    auto st = resolve(e.source, e.target, e.line);
    if (!st) continue;
    auto [s, t] = *st;
    if (game.owner(s) == Owner::kChance) {
      report(ViolationKind::kEdgeKindMismatch,
             "chance state takes `prob` lines, not `edge`", {e.source}, e.line);
      continue;
    }
    if (!succ[s.index()].insert(t).second) {
      report(ViolationKind::kDuplicateEdge, e.source + " -> " + e.target, {},
             e.line);
    }
  }

  for (const auto& p : raw.probs) {
    auto st = resolve(p.source, p.target, p.line);
    if (!st) continue;
    auto [s, t] = *st;
    if (game.owner(s) != Owner::kChance) {
      report(ViolationKind::kEdgeKindMismatch,
             "player state takes `edge` lines, not `prob`", {p.source}, p.line);
      continue;
    }
    if (p.probability <= 0) {
      report(ViolationKind::kBadDistribution,
             "probability " + ToString(p.probability) + " is not positive",
             {p.source}, p.line);
      continue;
    }
    if (!succ[s.index()].insert(t).second) {
      report(ViolationKind::kDuplicateEdge, p.source + " -> " + p.target, {},
             p.line);
      continue;
    }
    dist[s.index()].push_back({t, p.probability});
  }

  game.distributions_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const StateId s = MakeStateId(i);
    if (succ[i].empty()) {
      report(ViolationKind::kEmptySuccessors, "", {game.name(s)});
      continue;
    }
    game.successors_[i].assign(succ[i].begin(), succ[i].end());
    if (game.owner(s) == Owner::kChance) {
      Rational total = 0;
      for (const auto& e : dist[i]) total += e.probability;
      if (total != 1) {
        report(ViolationKind::kBadDistribution,
               "probabilities sum to " + ToString(total), {game.name(s)});
      }
      game.distributions_[i] = Distribution(std::move(dist[i]));
    }
  }

  if (!violations.empty()) throw ValidationError(std::move(violations));

  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (game.levels_[i] != Level::kUpper) continue;
    const Rational& r = game.rewards_[i];
    if (first || r > game.max_reward_) game.max_reward_ = r;
    if (first || r < game.min_reward_) game.min_reward_ = r;
    first = false;
  }
  return game;
}

RawGame ToRaw(const TwoLevelGame& game) {
  RawGame raw;
  raw.discount = game.discount();
  for (StateId s : game.States()) {
    std::optional<Rational> reward;
    if (game.is_upper(s)) reward = game.reward(s);
    raw.AddState(game.name(s), game.owner(s), game.level(s), reward);
  }
  for (StateId s : game.States()) {
    if (game.owner(s) == Owner::kChance) {
      for (const auto& e : game.distribution(s).entries()) {
        raw.AddProb(game.name(s), game.name(e.state), e.probability);
      }
    } else {
      for (StateId t : game.successors(s)) {
        raw.AddEdge(game.name(s), game.name(t));
      }
    }
  }
  return raw;
}

// ---------------------------------------------------------------------------

namespace {

// Least set containing target ∩ live, closed under player-1 "some successor",
// chance "some successor" and player-2 "all live successors".
StateSet ForceableRegion(const TwoLevelGame& game, const StateSet& live,
                         const StateSet& target) {
  const std::size_t n = game.num_states();
  StateSet reach(n);
  for (std::size_t i = 0; i < n; ++i) {
    const StateId s = MakeStateId(i);
    if (live.Contains(s) && target.Contains(s)) reach.Insert(s);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const StateId s = MakeStateId(i);
      if (!live.Contains(s) || reach.Contains(s)) continue;
      bool any = false;
      bool all = true;
      for (StateId t : game.successors(s)) {
        if (!live.Contains(t)) continue;
        if (reach.Contains(t)) {
          any = true;
        } else {
          all = false;
        }
      }
      const bool joins =
          game.owner(s) == Owner::kPlayer2 ? (any && all) : any;
      if (joins) {
        reach.Insert(s);
        changed = true;
      }
    }
  }
  return reach;
}

// Player-2 positive attractor of `bad` inside `live`. Dead states count as
// bad; target states are absorbing and never attracted.
StateSet PositiveAttractor(const TwoLevelGame& game, const StateSet& live,
                           const StateSet& target, const StateSet& bad) {
  const std::size_t n = game.num_states();
  StateSet attr = bad;
  auto lost = [&](StateId t) { return attr.Contains(t) || !live.Contains(t); };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const StateId s = MakeStateId(i);
      if (!live.Contains(s) || attr.Contains(s) || target.Contains(s)) continue;
      const auto succ = game.successors(s);
      const bool joins =
          game.owner(s) == Owner::kPlayer1
              ? std::all_of(succ.begin(), succ.end(), lost)
              : std::any_of(succ.begin(), succ.end(), lost);
      if (joins) {
        attr.Insert(s);
        changed = true;
      }
    }
  }
  return attr;
}

}  // namespace

StateSet AlmostSureReachSet(const TwoLevelGame& game, const StateSet& target) {
  const std::size_t n = game.num_states();
  if (target.universe() != n) {
    throw PreconditionError("target set does not match the game size");
  }
  if (target.empty()) return StateSet(n);

  StateSet live(n, true);
  while (true) {
    const StateSet reach = ForceableRegion(game, live, target);
    StateSet bad(n);
    for (std::size_t i = 0; i < n; ++i) {
      const StateId s = MakeStateId(i);
      if (live.Contains(s) && !reach.Contains(s)) bad.Insert(s);
    }
    if (bad.empty()) return live;
    const StateSet attr = PositiveAttractor(game, live, target, bad);
    for (StateId s : attr.Members()) live.Erase(s);
  }
}

std::vector<Violation> ValidateTwoLevel(const TwoLevelGame& game) {
  const StateSet winning = AlmostSureReachSet(game, game.UpperStates());
  std::vector<std::string> failing;
  for (StateId s : game.States()) {
    if (!game.is_upper(s) && !winning.Contains(s)) {
      failing.push_back(game.name(s));
    }
  }
  if (failing.empty()) return {};
  return {Violation{ViolationKind::kLowerStateCannotForceUpper,
                    "player 1 cannot force an upper state with probability 1",
                    std::move(failing)}};
}

TwoLevelGame ValidateGame(const RawGame& raw) {
  TwoLevelGame game = ValidateStructure(raw);
  auto violations = ValidateTwoLevel(game);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return game;
}

void CheckProfile(const TwoLevelGame& game,
                  const PureStrategyProfile& profile) {
  const std::size_t n = game.num_states();
  if (profile.sigma.size() != n || profile.pi.size() != n) {
    throw PreconditionError("strategy size does not match the game");
  }
  for (StateId s : game.States()) {
    const Owner o = game.owner(s);
    for (auto [strategy, who] : {std::pair{&profile.sigma, Owner::kPlayer1},
                                 std::pair{&profile.pi, Owner::kPlayer2}}) {
      const bool owned = (o == who);
      if (owned != strategy->Has(s)) {
        throw PreconditionError(
            std::string(owned ? "missing" : "spurious") + " " +
            std::string(ToString(who)) + " choice at state " + game.name(s));
      }
      if (!owned) continue;
      const StateId t = strategy->At(s);
      const auto succ = game.successors(s);
      if (!std::binary_search(succ.begin(), succ.end(), t)) {
        throw PreconditionError("choice " + game.name(s) + " -> " +
                                (t.index() < n ? game.name(t) : "?") +
                                " is not an edge");
      }
    }
  }
}

Strategy DefaultStrategy(const TwoLevelGame& game, Owner owner) {
  Strategy out(game.num_states());
  for (StateId s : game.StatesOwnedBy(owner)) {
    out.Set(s, game.successors(s).front());
  }
  return out;
}

}  // namespace tldg
