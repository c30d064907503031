// Copyright 2026 The benchdyn Authors. All rights reserved.
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

#ifndef BENCHDYN_SIMULATOR_H_
#define BENCHDYN_SIMULATOR_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "benchdyn/game.h"
#include "benchdyn/play_record.h"
#include "benchdyn/strategy.h"
#include "benchdyn/switch_budget.h"

namespace benchdyn {

struct StrategySpec {
  std::string kind;
  StrategyFactory factory;
};

struct MatchConfig {
  std::shared_ptr<const Game> game;
  std::vector<StrategySpec> strategies;
  std::int64_t horizon = 1;
  std::uint64_t seed = 0;
  // Deliver payoffs from make_injective(game); required by trigger seats.
  bool injective_transform = false;
  // Standard deviation of additive Gaussian payoff noise (clamped to the
  // payoff range). Zero means exact delivery.
  double noise = 0.0;
  // Sorted, within [1, horizon]; empty means powers of 2 up to T, plus T.
  std::vector<std::int64_t> checkpoints;
  // Hashed into PlayRecord::config_digest.
  std::string description;
};

std::vector<std::int64_t> default_checkpoints(std::int64_t horizon);
std::vector<std::int64_t> resolved_checkpoints(const MatchConfig& config);

// Throws std::invalid_argument on arity mismatch, horizon < 1, bad
// checkpoints, or a trigger seat without the injective transform.
void validate(const MatchConfig& config);

PlayRecord run_match(const MatchConfig& config);

// Exact profile counts over rounds 1..upto.
std::vector<std::int64_t> profile_counts(const PlayRecord& record, std::int64_t upto);
JointDistribution empirical_distribution(const PlayRecord& record, std::int64_t upto);

struct CheckpointDiagnostics {
  std::int64_t t = 0;
  JointDistribution empirical;
  // regret[player][budget] with the budget evaluated at t.
  std::vector<std::vector<double>> regret;
  double distance_to_hannan = 0.0;
};

struct Diagnostics {
  std::vector<CheckpointDiagnostics> checkpoints;
  std::vector<std::optional<std::int64_t>> defection_times;
};

// Regret is measured on `game` payoffs (not the delivered, possibly
// transformed ones). `with_distance` = false skips the LP.
Diagnostics diagnostics(const Game& game, const PlayRecord& record,
                        std::span<const SwitchBudgetSchedule> budgets,
                        std::span<const std::int64_t> checkpoints, bool with_distance = true);

struct Summary {
  double mean = 0.0;
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
};

// Linear-interpolation quantile of an unsorted sample (q in [0,1]).
double quantile(std::vector<double> sample, double q);
Summary summarize(std::span<const double> sample);

struct ReplicationReport {
  std::vector<std::int64_t> checkpoints;
  std::vector<std::uint64_t> seeds;
  // per_seed[r][c]: diagnostics of replication r at checkpoint c.
  std::vector<std::vector<CheckpointDiagnostics>> per_seed;
  std::vector<std::vector<std::optional<std::int64_t>>> defections;
  // regret[c][player][budget], distance[c].
  std::vector<std::vector<std::vector<Summary>>> regret;
  std::vector<Summary> distance;

  // Regret of `player` under budget `b` at checkpoint c, one entry per seed.
  std::vector<double> regret_sample(std::size_t c, int player, std::size_t b) const;
  std::vector<double> distance_sample(std::size_t c) const;
};

std::uint64_t replication_seed(std::uint64_t master, std::uint64_t r);

// Runs n_seeds matches with seeds replication_seed(config.seed, r),
// concurrently up to `threads` (0: BENCHDYN_THREADS or all cores).
ReplicationReport replicate(const MatchConfig& config, int n_seeds,
                            std::span<const SwitchBudgetSchedule> budgets,
                            bool with_distance = true, int threads = 0);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace benchdyn

#endif  // BENCHDYN_SIMULATOR_H_
