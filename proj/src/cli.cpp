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

#include "tldg/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "tldg/evaluation.hpp"
#include "tldg/io.hpp"
#include "tldg/reductions.hpp"
#include "tldg/semantics.hpp"
#include "tldg/solvers.hpp"
#include "tldg/testkit.hpp"

namespace tldg {
namespace {

// Raised for anything the user got wrong on the command line.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::string& path, const std::string& content,
               std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << content;
}

// Full validation: structure plus the almost-sure condition.
TwoLevelGame LoadGame(const std::string& path) {
  TwoLevelGame game = ParseGame(ReadFile(path));
  auto violations = ValidateTwoLevel(game);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return game;
}

Strategy LoadStrategy(const std::string& path, const TwoLevelGame& game,
                      Owner player) {
  if (path.empty()) {
    Strategy empty(game.num_states());
    if (!game.StatesOwnedBy(player).empty()) {
      throw UsageError(std::string("a ") + std::string(ToString(player)) +
                       " strategy file is required for this game");
    }
    return empty;
  }
  return ParseStrategy(ReadFile(path), game, player);
}

Rational RequireRational(const std::string& text, const std::string& what) {
  auto r = ParseRational(text);
  if (!r) throw UsageError(what + ": malformed rational '" + text + "'");
  return *r;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ConfigFlags {
  GeneratorConfig config;
  std::string discounts = "1/3,1/2,9/10";

  void Attach(CLI::App* app) {
    app->add_option("--min-states", config.min_states, "Fewest states");
    app->add_option("--max-states", config.max_states, "Most states");
    app->add_option("--min-degree", config.min_degree, "Smallest out-degree");
    app->add_option("--max-degree", config.max_degree, "Largest out-degree");
    app->add_option("--w-p1", config.weight_p1, "Player-1 owner weight");
    app->add_option("--w-p2", config.weight_p2, "Player-2 owner weight");
    app->add_option("--w-chance", config.weight_chance, "Chance owner weight");
    app->add_option("--lower-weight", config.lower_weight,
                    "Probability of a lower-level state");
    app->add_option("--reward-bound", config.reward_bound,
                    "Bound on reward numerators and denominators");
    app->add_option("--prob-weight-bound", config.prob_weight_bound,
                    "Bound on chance weights before normalization");
    app->add_option("--discounts", discounts,
                    "Comma-separated discount candidates");
  }

  GeneratorConfig Resolve() const {
    GeneratorConfig out = config;
    out.discounts.clear();
    std::stringstream in(discounts);
    for (std::string item; std::getline(in, item, ',');) {
      out.discounts.push_back(RequireRational(item, "--discounts"));
    }
    try {
      CheckConfig(out);
    } catch (const PreconditionError& e) {
      throw UsageError(e.what());
    }
    return out;
  }
};

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Solver for two-level discounted stochastic games", "tldg"};
  app.require_subcommand(1);

  std::string file;
  std::string method = "si";
  std::string tol = "1e-10";
  std::string sigma_out, pi_out;
  auto* validate = app.add_subcommand("validate", "Check a game file");
  validate->add_option("FILE", file, "Game file")->required();

  auto* solve = app.add_subcommand("solve", "Compute values and strategies");
  solve->add_option("FILE", file, "Game file")->required();
  solve->add_option("--method", method, "si | vi | enum | lp")
      ->check(CLI::IsMember({"si", "vi", "enum", "lp"}));
  solve->add_option("--tol", tol, "Value-iteration tolerance");
  solve->add_option("--sigma-out", sigma_out, "Write the player-1 strategy");
  solve->add_option("--pi-out", pi_out, "Write the player-2 strategy");

  std::string state, rel, value;
  auto* check = app.add_subcommand("check", "Compare a state's value with q");
  check->add_option("FILE", file, "Game file")->required();
  check->add_option("--state", state, "State name")->required();
  check->add_option("--rel", rel, "ge | gt | le | lt | eq")
      ->required()
      ->check(CLI::IsMember({"ge", "gt", "le", "lt", "eq"}));
  check->add_option("--value", value, "Rational q")->required();

  std::string sigma_file, pi_file, start;
  std::size_t samples = 0, horizon = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo playouts");
  simulate->add_option("FILE", file, "Game file")->required();
  simulate->add_option("--sigma", sigma_file, "Player-1 strategy file");
  simulate->add_option("--pi", pi_file, "Player-2 strategy file");
  simulate->add_option("--start", start, "Start state")->required();
  simulate->add_option("--samples", samples, "Number of playouts")->required();
  simulate->add_option("--horizon", horizon, "Upper-level visits per playout")
      ->required();
  simulate->add_option("--seed", seed, "Random seed")->required();
  simulate->add_option("--workers", workers, "Worker threads (0 = all cores)");

  std::string output;
  auto* freeze = app.add_subcommand("freeze", "Freeze the lower level");
  freeze->add_option("FILE", file, "Game file")->required();
  freeze->add_option("--sigma", sigma_file, "Player-1 strategy file");
  freeze->add_option("--pi", pi_file, "Player-2 strategy file");
  freeze->add_option("-o,--output", output, "Output game file")->required();

  ConfigFlags gen_flags;
  auto* gen = app.add_subcommand("gen", "Generate a random valid game");
  gen->add_option("--seed", gen_flags.config.seed, "Random seed")->required();
  gen->add_option("-o,--output", output, "Output game file (default stdout)");
  gen_flags.Attach(gen);

  ConfigFlags suite_flags;
  std::size_t count = 0;
  bool no_sim = false;
  auto* suite = app.add_subcommand("suite", "Cross-check all solvers");
  suite->add_option("--count", count, "Number of games")->required();
  suite->add_option("--seed", suite_flags.config.seed, "First seed");
  suite->add_option("--workers", workers, "Worker threads (0 = all cores)");
  suite->add_flag("--no-simulation", no_sim, "Skip the Monte-Carlo check");
  suite_flags.Attach(suite);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) {
      const TwoLevelGame game = LoadGame(file);
      out << "ok " << game.num_states() << " states\n";
      return kExitOk;
    }

    if (*solve) {
      const TwoLevelGame game = LoadGame(file);
      if (method == "vi") {
        double tolerance = 0.0;
        try {
          tolerance = std::stod(tol);
        } catch (const std::exception&) {
          tolerance = ToDouble(RequireRational(tol, "--tol"));
        }
        if (!(tolerance > 0)) throw UsageError("--tol must be positive");
        const auto vi = ValueIteration(game, tolerance);
        for (StateId s : game.States()) {
          out << "~value " << game.name(s) << " "
              << FormatDouble(vi.values[s.index()]) << "\n";
        }
        if (!vi.converged) {
          err << "value iteration stopped after " << vi.rounds
              << " rounds without reaching the tolerance\n";
        }
        return kExitOk;
      }
      if (method == "lp") {
        if (!game.StatesOwnedBy(Owner::kPlayer2).empty()) {
          throw UsageError("--method lp needs a game without p2 states");
        }
        out << FormatValues(game, MdpLpSolve(game));
        return kExitOk;
      }
      const SolveResult result = method == "enum"
                                     ? SolveEnumerate(game)
                                     : SolveStrategyImprovement(game);
      out << FormatSolveOutput(game, result);
      if (!sigma_out.empty()) {
        WriteFile(sigma_out, SerializeStrategy(game, result.optimal_profile.sigma), out);
      }
      if (!pi_out.empty()) {
        WriteFile(pi_out, SerializeStrategy(game, result.optimal_profile.pi), out);
      }
      return kExitOk;
    }

    if (*check) {
      const TwoLevelGame game = LoadGame(file);
      const auto s = game.Find(state);
      if (!s) throw UsageError("unknown state '" + state + "'");
      const Rational q = RequireRational(value, "--value");
      const bool holds = Decide(game, *s, *ParseComparison(rel), q);
      out << (holds ? "true" : "false") << "\n";
      return holds ? kExitOk : kExitFalse;
    }

    if (*simulate) {
      const TwoLevelGame game = LoadGame(file);
      const auto s = game.Find(start);
      if (!s) throw UsageError("unknown state '" + start + "'");
      if (samples == 0) throw UsageError("--samples must be at least 1");
      PureStrategyProfile profile{LoadStrategy(sigma_file, game, Owner::kPlayer1),
                                  LoadStrategy(pi_file, game, Owner::kPlayer2)};
      SimulationOptions options;
      options.samples = samples;
      options.upper_horizon = horizon;
      options.seed = seed;
      options.workers = workers;
      const auto report = SimulateValue(game, profile, *s, options);
      out << "estimate " << FormatDouble(report.estimate) << "\n"
          << "standard_error " << FormatDouble(report.standard_error) << "\n"
          << "samples " << report.samples << "\n"
          << "horizon " << report.truncation_horizon << "\n"
          << "truncation_bound " << FormatDouble(report.truncation_bound) << "\n"
          << "rounding_bound " << FormatDouble(report.rounding_bound) << "\n"
          << "truncated " << report.truncated << "\n"
          << "seed " << report.seed << "\n";
      return kExitOk;
    }

    if (*freeze) {
      const TwoLevelGame game = LoadGame(file);
      PureStrategyProfile profile{LoadStrategy(sigma_file, game, Owner::kPlayer1),
                                  LoadStrategy(pi_file, game, Owner::kPlayer2)};
      CheckProfile(game, profile);
      const TwoLevelGame frozen = FreezeLower(game, profile);
      WriteFile(output, SerializeGame(frozen), out);
      return kExitOk;
    }

    if (*gen) {
      const TwoLevelGame game = Generate(gen_flags.Resolve());
      WriteFile(output, SerializeGame(game), out);
      return kExitOk;
    }

    if (*suite) {
      SuiteOptions options;
      options.workers = workers;
      options.check_simulation = !no_sim;
      const SuiteReport report = OracleSuite(suite_flags.Resolve(), count, options);
      out << FormatSuiteReport(report);
      return report.ok() ? kExitOk : kExitFalse;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) err << "error: " << FormatViolation(v) << "\n";
    return kExitInvalid;
  } catch (const EscapeMassNonzero& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}

}  // namespace tldg
