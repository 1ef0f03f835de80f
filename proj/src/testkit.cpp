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

#include "tldg/testkit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "tldg/evaluation.hpp"
#include "tldg/reductions.hpp"
#include "tldg/semantics.hpp"

namespace tldg {

void CheckConfig(const GeneratorConfig& config) {
  if (config.min_states < 1 || config.min_states > config.max_states) {
    throw PreconditionError("state count range is empty");
  }
  if (config.min_degree < 1 || config.min_degree > config.max_degree) {
    throw PreconditionError("out-degree range is empty");
  }
  if (config.weight_p1 < 0 || config.weight_p2 < 0 || config.weight_chance < 0 ||
      config.weight_p1 + config.weight_p2 + config.weight_chance <= 0) {
    throw PreconditionError("owner weights must be >= 0 and not all zero");
  }
  if (!(config.lower_weight >= 0 && config.lower_weight <= 1)) {
    throw PreconditionError("lower weight must lie in [0, 1]");
  }
  if (config.reward_bound < 1 || config.prob_weight_bound < 1) {
    throw PreconditionError("reward and probability bounds must be >= 1");
  }
  if (config.discounts.empty()) throw PreconditionError("no discount candidates");
  for (const auto& b : config.discounts) {
    if (b <= 0 || b >= 1) throw PreconditionError("discount outside (0, 1)");
  }
}

namespace {

// Portable draws on top of mt19937_64, whose output sequence is fixed by the
// standard (the std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Uniform(std::uint64_t lo, std::uint64_t hi) {
    return lo + engine_() % (hi - lo + 1);
  }
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct DraftState {
  Owner owner = Owner::kPlayer1;
  Level level = Level::kUpper;
  Rational reward;
  std::vector<std::size_t> succ;
  std::vector<std::int64_t> weight;  // chance only, parallel to succ
};

std::string StateName(std::size_t i, std::size_t n) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::to_string(n - 1).size();
  return "s" + std::string(width - digits.size(), '0') + digits;
}

std::vector<DraftState> Draft(const GeneratorConfig& config, Rng& rng,
                              Rational& discount) {
  const std::size_t n = rng.Uniform(config.min_states, config.max_states);
  discount = config.discounts[rng.Uniform(0, config.discounts.size() - 1)];
  const double total =
      config.weight_p1 + config.weight_p2 + config.weight_chance;

  std::vector<DraftState> states(n);
  for (auto& st : states) {
    const double u = rng.Unit() * total;
    st.owner = u < config.weight_p1                      ? Owner::kPlayer1
               : u < config.weight_p1 + config.weight_p2 ? Owner::kPlayer2
                                                         : Owner::kChance;
    // Zero-weight owners must never be drawn, whatever the rounding.
    if (st.owner == Owner::kChance && config.weight_chance <= 0) {
      st.owner = config.weight_p2 > 0 ? Owner::kPlayer2 : Owner::kPlayer1;
    }
    st.level = rng.Unit() < config.lower_weight ? Level::kLower : Level::kUpper;

    const std::size_t max_deg = std::min(config.max_degree, n);
    const std::size_t min_deg = std::min(config.min_degree, max_deg);
    const std::size_t degree = rng.Uniform(min_deg, max_deg);
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t k = 0; k < degree; ++k) {
      std::swap(pool[k], pool[rng.Uniform(k, n - 1)]);
      st.succ.push_back(pool[k]);
    }
    std::sort(st.succ.begin(), st.succ.end());
    if (st.owner == Owner::kChance) {
      for (std::size_t k = 0; k < degree; ++k) {
        st.weight.push_back(static_cast<std::int64_t>(
            rng.Uniform(1, static_cast<std::uint64_t>(config.prob_weight_bound))));
      }
    }
    const auto bound = static_cast<std::uint64_t>(config.reward_bound);
    const auto p = static_cast<std::int64_t>(rng.Uniform(1, bound));
    const auto q = static_cast<std::int64_t>(rng.Uniform(1, bound));
    st.reward = Rational(p, q);
  }
  if (std::none_of(states.begin(), states.end(), [](const DraftState& st) {
        return st.level == Level::kUpper;
      })) {
    states[0].level = Level::kUpper;
  }
  return states;
}

RawGame ToRawGame(const std::vector<DraftState>& states,
                  const Rational& discount) {
  const std::size_t n = states.size();
  RawGame raw;
  raw.discount = discount;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& st = states[i];
    std::optional<Rational> reward;
    if (st.level == Level::kUpper) reward = st.reward;
    raw.AddState(StateName(i, n), st.owner, st.level, reward);
    if (st.owner == Owner::kChance) {
      std::int64_t total = 0;
      for (auto w : st.weight) total += w;
      for (std::size_t k = 0; k < st.succ.size(); ++k) {
        raw.AddProb(StateName(i, n), StateName(st.succ[k], n),
                    Rational(st.weight[k], total));
      }
    } else {
      for (std::size_t t : st.succ) raw.AddEdge(StateName(i, n), StateName(t, n));
    }
  }
  return raw;
}

void Repair(DraftState& st, const StateSet& winning, Rng& rng) {
  const std::vector<StateId> good = winning.Members();
  auto pick = [&] { return good[rng.Uniform(0, good.size() - 1)].index(); };
  if (st.owner == Owner::kPlayer1) {
    st.succ[rng.Uniform(0, st.succ.size() - 1)] = pick();
  } else {
    for (auto& t : st.succ) {
      if (!winning.Contains(MakeStateId(t))) t = pick();
    }
  }
  std::sort(st.succ.begin(), st.succ.end());
  st.succ.erase(std::unique(st.succ.begin(), st.succ.end()), st.succ.end());
  if (st.owner == Owner::kChance) st.weight.assign(st.succ.size(), 1);
}

}  // namespace

TwoLevelGame GenerateUnrepaired(const GeneratorConfig& config) {
  CheckConfig(config);
  Rng rng(config.seed);
  Rational discount;
  const auto states = Draft(config, rng, discount);
  return ValidateStructure(ToRawGame(states, discount));
}

TwoLevelGame Generate(const GeneratorConfig& config) {
  CheckConfig(config);
  Rng rng(config.seed);
  Rational discount;
  auto states = Draft(config, rng, discount);
  for (std::size_t round = 0; round <= config.max_repair_rounds; ++round) {
    TwoLevelGame game = ValidateStructure(ToRawGame(states, discount));
    if (ValidateTwoLevel(game).empty()) return game;
    const StateSet winning = AlmostSureReachSet(game, game.UpperStates());
    for (StateId s : game.States()) {
      if (!game.is_upper(s) && !winning.Contains(s)) {
        Repair(states[s.index()], winning, rng);
      }
    }
  }
  throw RepairFailed("seed " + std::to_string(config.seed) +
                     ": still invalid after " +
                     std::to_string(config.max_repair_rounds) + " repair rounds");
}

// ---------------------------------------------------------------------------

GameOutcome CheckGame(const TwoLevelGame& game, const SuiteOptions& options,
                      std::uint64_t sim_seed) {
  GameOutcome outcome;
  auto record = [&](const std::string& check, bool ok, const std::string& detail) {
    outcome.checks[check] = ok;
    if (!ok) {
      outcome.passed = false;
      outcome.failures.push_back(check + ": " + detail);
    }
  };
  auto guarded = [&](const std::string& check, const auto& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record(check, false, std::string("exception: ") + e.what());
    }
  };

  const Solver solver = options.solver ? options.solver : Solver(SolveStrategyImprovement);
  std::optional<SolveResult> truth;
  std::optional<SolveResult> result;
  guarded("si=enum", [&] {
    truth = SolveEnumerate(game, options.solve);
    result = solver(game, options.solve);
    record("si=enum", result->values == truth->values,
           "solver values differ from enumeration");
  });
  if (!truth || !result) return outcome;

  if (game.StatesOwnedBy(Owner::kPlayer2).empty()) {
    guarded("lp", [&] {
      const ValueVector lp = MdpLpSolve(game);
      const ValueVector br =
          BestResponsePlayer1(game, Strategy(game.num_states()), options.solve).values;
      record("lp", lp == truth->values && br == truth->values,
             "LP / best response / enumeration disagree");
    });
  }

  guarded("saddle", [&] {
    const auto mine = CertifySaddle(game, result->optimal_profile, options.solve);
    const auto theirs = CertifySaddle(game, truth->optimal_profile, options.solve);
    record("saddle", mine.valid && theirs.valid && mine.v_sigma_fixed == result->values,
           "certificate of a returned profile is invalid");
  });

  guarded("invariants", [&] {
    const bool eval = PolicyEvaluate(game, result->optimal_profile) == result->values;
    const bool fixpoint = BellmanApply(game, result->values) == result->values;
    bool canonical = true;
    for (const auto& v : result->values) canonical = canonical && IsCanonical(v);
    record("invariants", eval && fixpoint && canonical,
           "values are not the profile's value / a fixed point / canonical");
  });

  guarded("freeze", [&] {
    const TwoLevelGame frozen = FreezeLower(game, result->optimal_profile);
    const SolveResult again = SolveStrategyImprovement(frozen, options.solve);
    record("freeze", IsOneStep(frozen) && again.values == truth->values,
           "frozen game values differ");
  });

  guarded("vi", [&] {
    const auto vi = ValueIteration(game, options.vi_tolerance);
    double worst = 0.0;
    for (StateId s : game.States()) {
      worst = std::max(worst, std::abs(vi.values[s.index()] - ToDouble(truth->values[s])));
    }
    record("vi", vi.converged && worst <= options.vi_max_error,
           "sup error " + std::to_string(worst));
  });

  if (options.check_simulation) {
    guarded("simulation", [&] {
      SimulationOptions sim;
      sim.samples = options.sim_samples;
      sim.upper_horizon = options.sim_horizon;
      sim.seed = sim_seed;
      const StateId start = MakeStateId(sim_seed % game.num_states());
      const auto report = SimulateValue(game, result->optimal_profile, start, sim);
      const double error = std::abs(report.estimate - ToDouble(truth->values[start]));
      const double allowed = options.sim_sigmas * report.standard_error +
                             report.truncation_bound + report.rounding_bound;
      record("simulation", error <= allowed && report.truncated == 0,
             "error " + std::to_string(error) + " > " + std::to_string(allowed));
    });
  }
  return outcome;
}

SuiteReport OracleSuite(const GeneratorConfig& config, std::size_t count,
                        const SuiteOptions& options) {
  CheckConfig(config);
  std::vector<GameOutcome> outcomes(count);

  auto run = [&](std::size_t i) {
    GeneratorConfig cfg = config;
    cfg.seed = config.seed + i;
    try {
      const TwoLevelGame game = Generate(cfg);
      outcomes[i] = CheckGame(game, options, cfg.seed);
    } catch (const std::exception& e) {
      outcomes[i].passed = false;
      outcomes[i].failures.push_back(std::string("generate: ") + e.what());
      outcomes[i].checks["generate"] = false;
    }
  };

  unsigned workers = options.workers == 0
                         ? std::max(1u, std::thread::hardware_concurrency())
                         : options.workers;
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) run(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  SuiteReport report;
  report.games = count;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& o = outcomes[i];
    for (const auto& [name, ok] : o.checks) {
      auto& tally = report.checks[name];
      (ok ? tally.passed : tally.failed) += 1;
    }
    if (o.passed) {
      ++report.passed_games;
      continue;
    }
    ++report.failed_games;
    if (!report.first_failing_seed) report.first_failing_seed = config.seed + i;
    for (const auto& f : o.failures) {
      report.failures.push_back("seed " + std::to_string(config.seed + i) + ": " + f);
    }
  }
  return report;
}

std::string FormatSuiteReport(const SuiteReport& report) {
  std::ostringstream out;
  out << "games " << report.games << " passed " << report.passed_games
      << " failed " << report.failed_games << "\n";
  for (const auto& [name, tally] : report.checks) {
    out << "check " << name << " passed " << tally.passed << " failed "
        << tally.failed << "\n";
  }
  if (report.first_failing_seed) {
    out << "first-failing-seed " << *report.first_failing_seed << "\n";
  }
  constexpr std::size_t kShown = 20;
  for (std::size_t i = 0; i < std::min(kShown, report.failures.size()); ++i) {
    out << "failure " << report.failures[i] << "\n";
  }
  out << (report.ok() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace tldg
