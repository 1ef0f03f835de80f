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

#include "tldg/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "tldg/evaluation.hpp"

namespace tldg {

Rational PathPayoff(const TwoLevelGame& game, std::span<const StateId> path,
                    std::size_t upper_horizon) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i].index() >= game.num_states()) throw NotAPath("unknown state");
    if (i == 0) continue;
    const auto succ = game.successors(path[i - 1]);
    if (!std::binary_search(succ.begin(), succ.end(), path[i])) {
      throw NotAPath(game.name(path[i - 1]) + " -> " + game.name(path[i]) +
                     " is not an edge");
    }
  }
  const Rational& beta = game.discount();
  Rational weight = 1;
  Rational total = 0;
  std::size_t seen = 0;
  for (StateId s : path) {
    if (seen == upper_horizon) break;
    if (!game.is_upper(s)) continue;
    total += weight * beta * game.reward(s);
    weight *= 1 - beta;
    ++seen;
  }
  if (seen < upper_horizon) {
    throw InsufficientUpperVisits("path has " + std::to_string(seen) +
                                  " upper states, horizon is " +
                                  std::to_string(upper_horizon));
  }
  return total;
}

namespace {

constexpr int kUniformBits = 53;

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over a combination of both inputs.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// The induced chain flattened for fast sampling.
struct CompiledChain {
  struct Row {
    std::vector<std::uint32_t> targets;
    // Smallest integer T with k < T  <=>  k / 2^53 < cumulative probability.
    std::vector<std::uint64_t> thresholds;
  };
  std::vector<Row> rows;
  std::vector<double> gain;  // beta · r(s) on upper states, 0 below
  std::vector<bool> upper;
  std::vector<bool> dead;    // upper states unreachable from here
};

CompiledChain Compile(const TwoLevelGame& game,
                      const PureStrategyProfile& profile) {
  const std::size_t n = game.num_states();
  const Integer scale = Integer(1) << kUniformBits;
  const double beta = ToDouble(game.discount());
  const StateSet dead = NeverReachesUpper(game, profile);

  CompiledChain chain;
  chain.rows.resize(n);
  chain.gain.assign(n, 0.0);
  chain.upper.assign(n, false);
  chain.dead.assign(n, false);
  for (StateId s : game.States()) {
    const std::size_t i = s.index();
    chain.upper[i] = game.is_upper(s);
    chain.dead[i] = dead.Contains(s);
    if (chain.upper[i]) chain.gain[i] = beta * ToDouble(game.reward(s));
    Rational cumulative = 0;
    for (const auto& [t, p] : InducedRow(game, profile, s)) {
      cumulative += p;
      const Rational scaled = cumulative * Rational(scale);
      Integer q = boost::multiprecision::numerator(scaled) /
                  boost::multiprecision::denominator(scaled);
      if (q * boost::multiprecision::denominator(scaled) !=
          boost::multiprecision::numerator(scaled)) {
        q += 1;
      }
      chain.rows[i].targets.push_back(t.value);
      chain.rows[i].thresholds.push_back(q.convert_to<std::uint64_t>());
    }
  }
  return chain;
}

struct SampleOutcome {
  double payoff = 0.0;
  bool truncated = false;
};

SampleOutcome RunSample(const CompiledChain& chain, std::size_t start,
                        double discount_keep, const SimulationOptions& options,
                        std::size_t sample_index) {
  std::mt19937_64 rng(MixSeed(options.seed, sample_index));
  SampleOutcome out;
  double weight = 1.0;
  std::size_t upper_seen = 0;
  std::size_t steps = 0;
  std::size_t s = start;
  while (true) {
    if (chain.dead[s]) break;
    if (chain.upper[s]) {
      out.payoff += weight * chain.gain[s];
      weight *= discount_keep;
      if (++upper_seen == options.upper_horizon) break;
    }
    if (steps == options.max_steps) {
      out.truncated = true;
      break;
    }
    const auto& row = chain.rows[s];
    if (row.targets.size() == 1) {
      s = row.targets.front();
    } else {
      const std::uint64_t k = rng() >> (64 - kUniformBits);
      std::size_t j = 0;
      while (j + 1 < row.targets.size() && k >= row.thresholds[j]) ++j;
      s = row.targets[j];
    }
    ++steps;
  }
  return out;
}

}  // namespace

SimulationReport SimulateValue(const TwoLevelGame& game,
                               const PureStrategyProfile& profile,
                               StateId start, const SimulationOptions& options) {
  if (options.samples == 0) throw PreconditionError("samples must be >= 1");
  if (start.index() >= game.num_states()) {
    throw PreconditionError("start state out of range");
  }
  CheckProfile(game, profile);

  const CompiledChain chain = Compile(game, profile);
  const double keep = ToDouble(1 - game.discount());
  std::vector<SampleOutcome> outcomes(options.samples);

  unsigned workers = options.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, options.samples));
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      outcomes[i] = RunSample(chain, start.index(), keep, options, i);
    }
  };
  if (workers <= 1) {
    run_range(0, options.samples);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (options.samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(options.samples, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  // Reduce in sample order so the result does not depend on scheduling.
  SimulationReport report;
  report.samples = options.samples;
  report.truncation_horizon = options.upper_horizon;
  report.seed = options.seed;
  double sum = 0.0;
  for (const auto& o : outcomes) {
    sum += o.payoff;
    if (o.truncated) ++report.truncated;
  }
  const double n = static_cast<double>(options.samples);
  report.estimate = sum / n;
  if (options.samples > 1) {
    double squares = 0.0;
    for (const auto& o : outcomes) {
      const double d = o.payoff - report.estimate;
      squares += d * d;
    }
    report.standard_error = std::sqrt(squares / (n - 1.0) / n);
  }
  const double max_reward = ToDouble(game.max_reward());
  report.truncation_bound =
      std::pow(keep, static_cast<double>(options.upper_horizon)) * max_reward;
  const double h = static_cast<double>(options.upper_horizon) + 4.0;
  report.rounding_bound = (h * h + n) * std::ldexp(1.0, -52) * max_reward;
  return report;
}

}  // namespace tldg
