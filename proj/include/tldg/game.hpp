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

// Domain types for two-level discounted games on turn-based stochastic game
// graphs, plus structural validation and the almost-sure reachability check.
//
// States are stored densely. Index order is the lexicographic order of state
// names, so "lowest index" tie-breaking everywhere is tie-breaking by name.

#ifndef TLDG_GAME_HPP_
#define TLDG_GAME_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tldg/errors.hpp"
#include "tldg/rational.hpp"

namespace tldg {

struct StateId {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const StateId&) const = default;
  constexpr std::size_t index() const { return value; }
};

inline constexpr StateId MakeStateId(std::size_t index) {
  return StateId{static_cast<std::uint32_t>(index)};
}

enum class Owner { kPlayer1, kPlayer2, kChance };
enum class Level { kUpper, kLower };

std::string_view ToString(Owner owner);
std::string_view ToString(Level level);

// Dense per-state storage addressed by StateId.
template <typename T>
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t n, const T& init = T{}) : data_(n, init) {}

  T& operator[](StateId s) { return data_[s.index()]; }
  const T& operator[](StateId s) const { return data_[s.index()]; }

  std::size_t size() const { return data_.size(); }
  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  const std::vector<T>& raw() const { return data_; }

  bool operator==(const StateVector&) const = default;

 private:
  std::vector<T> data_;
};

using ValueVector = StateVector<Rational>;

class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t n, bool all = false) : bits_(n, all) {}

  bool Contains(StateId s) const { return bits_[s.index()]; }
  void Insert(StateId s) { bits_[s.index()] = true; }
  void Erase(StateId s) { bits_[s.index()] = false; }

  std::size_t universe() const { return bits_.size(); }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<StateId> Members() const;
  bool IsSubsetOf(const StateSet& other) const;

  bool operator==(const StateSet&) const = default;

 private:
  std::vector<bool> bits_;
};

// Probability distribution over successors. Only the support is stored,
// sorted by state; entries are strictly positive and sum to exactly 1.
class Distribution {
 public:
  struct Entry {
    StateId state;
    Rational probability;
    bool operator==(const Entry&) const = default;
  };

  Distribution() = default;
  explicit Distribution(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  Rational Probability(StateId s) const;
  bool empty() const { return entries_.empty(); }

  bool operator==(const Distribution&) const = default;

 private:
  std::vector<Entry> entries_;
};

// Pure memoryless choice function for one player. Partial over the state
// space: only the states owned by the player carry a choice.
class Strategy {
 public:
  Strategy() = default;
  explicit Strategy(std::size_t num_states) : choice_(num_states, kNone) {}

  void Set(StateId s, StateId t) { choice_[s.index()] = t.value; }
  void Clear(StateId s) { choice_[s.index()] = kNone; }
  bool Has(StateId s) const { return choice_[s.index()] != kNone; }
  // Precondition: Has(s).
  StateId At(StateId s) const { return StateId{choice_[s.index()]}; }
  std::optional<StateId> Get(StateId s) const;

  std::size_t size() const { return choice_.size(); }
  bool operator==(const Strategy&) const = default;
  auto operator<=>(const Strategy&) const = default;

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> choice_;
};

struct PureStrategyProfile {
  Strategy sigma;  // player 1
  Strategy pi;     // player 2
  bool operator==(const PureStrategyProfile&) const = default;
};

// ---------------------------------------------------------------------------
// Unvalidated description, as produced by the parser or built in code.

struct RawState {
  std::string name;
  Owner owner = Owner::kPlayer1;
  Level level = Level::kUpper;
  std::optional<Rational> reward;
  int line = 0;
};

struct RawEdge {
  std::string source;
  std::string target;
  int line = 0;
};

struct RawProb {
  std::string source;
  std::string target;
  Rational probability;
  int line = 0;
};

struct RawGame {
  std::optional<Rational> discount;
  std::vector<RawState> states;
  std::vector<RawEdge> edges;
  std::vector<RawProb> probs;

  RawGame& AddState(std::string name, Owner owner, Level level,
                    std::optional<Rational> reward = std::nullopt);
  RawGame& AddEdge(std::string source, std::string target);
  RawGame& AddProb(std::string source, std::string target, Rational p);
};

enum class ViolationKind {
  kBadStateName,
  kDuplicateState,
  kDanglingEdge,
  kDuplicateEdge,
  kEdgeKindMismatch,  // `edge` on a chance state or `prob` on a player state
  kEmptySuccessors,
  kBadDistribution,
  kMissingReward,
  kRewardOnLower,
  kNonPositiveReward,
  kMissingDiscount,
  kDiscountOutOfRange,
  kLowerStateCannotForceUpper,
};

std::string_view ToString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
  std::vector<std::string> states;
  int line = 0;  // source line, 0 if unknown
};

std::string FormatViolation(const Violation& v);

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }
  bool Has(ViolationKind kind) const;

 private:
  std::vector<Violation> violations_;
};

// ---------------------------------------------------------------------------

// A structurally valid, immutable two-level discounted game. Only
// ValidateStructure (and transformations built on validated games) can
// construct one.
class TwoLevelGame {
 public:
  std::size_t num_states() const { return names_.size(); }

  const std::string& name(StateId s) const { return names_[s.index()]; }
  Owner owner(StateId s) const { return owners_[s.index()]; }
  Level level(StateId s) const { return levels_[s.index()]; }
  bool is_upper(StateId s) const { return level(s) == Level::kUpper; }

  // Sorted ascending; nonempty.
  std::span<const StateId> successors(StateId s) const {
    return successors_[s.index()];
  }
  // Only meaningful for chance states.
  const Distribution& distribution(StateId s) const {
    return distributions_[s.index()];
  }
  // Zero on lower states.
  const Rational& reward(StateId s) const { return rewards_[s.index()]; }
  const Rational& discount() const { return discount_; }

  std::optional<StateId> Find(std::string_view name) const;
  // Throws PreconditionError if the name is unknown.
  StateId Lookup(std::string_view name) const;

  std::vector<StateId> States() const;
  std::vector<StateId> StatesOwnedBy(Owner owner) const;
  StateSet UpperStates() const;
  bool HasLowerStates() const;

  const Rational& max_reward() const { return max_reward_; }
  const Rational& min_reward() const { return min_reward_; }

  bool operator==(const TwoLevelGame&) const = default;

 private:
  friend TwoLevelGame ValidateStructure(const RawGame& raw);

  TwoLevelGame() = default;

  std::vector<std::string> names_;
  std::vector<Owner> owners_;
  std::vector<Level> levels_;
  std::vector<std::vector<StateId>> successors_;
  std::vector<Distribution> distributions_;
  std::vector<Rational> rewards_;
  Rational discount_;
  Rational max_reward_;
  Rational min_reward_;
};

// Checks every structural invariant (all but the almost-sure condition) and
// returns the validated game. Throws ValidationError listing every violation.
TwoLevelGame ValidateStructure(const RawGame& raw);

// Inverse of ValidateStructure; states, edges and probabilities come out in
// index order.
RawGame ToRaw(const TwoLevelGame& game);

// States from which player 1 can force a visit to `target` with probability
// 1 against every player-2 strategy. Target states count as reached on
// arrival. Precondition: target nonempty and sized to the game.
StateSet AlmostSureReachSet(const TwoLevelGame& game, const StateSet& target);

// Empty iff every lower state lies in the almost-sure reach set of the upper
// states. Otherwise a single kLowerStateCannotForceUpper violation naming the
// offending states.
std::vector<Violation> ValidateTwoLevel(const TwoLevelGame& game);

// ValidateStructure followed by ValidateTwoLevel; throws on any violation.
TwoLevelGame ValidateGame(const RawGame& raw);

// Throws PreconditionError unless sigma (pi) chooses a legal successor at
// exactly the player-1 (player-2) states.
void CheckProfile(const TwoLevelGame& game, const PureStrategyProfile& profile);

// Lowest-index successor at every state of the given owner.
Strategy DefaultStrategy(const TwoLevelGame& game, Owner owner);

// Successor taken under the profile at a player state.
inline StateId Chosen(const TwoLevelGame& game,
                      const PureStrategyProfile& profile, StateId s) {
  return game.owner(s) == Owner::kPlayer1 ? profile.sigma.At(s)
                                          : profile.pi.At(s);
}

}  // namespace tldg

#endif  // TLDG_GAME_HPP_
