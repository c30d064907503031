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

#ifndef BENCHDYN_DYNAMIC_REGRET_H_
#define BENCHDYN_DYNAMIC_REGRET_H_

#include <cstdint>
#include <span>
#include <vector>

#include "benchdyn/game.h"
#include "benchdyn/play_record.h"

namespace benchdyn {

// Opponents' actions in one round, in player order with the subject removed.
using OpponentActions = std::vector<int>;

// rewards(t, k) = u_i(k, a_{-i,t}), row-major over rounds.
struct RewardMatrix {
  std::int64_t rounds = 0;
  int actions = 0;
  std::vector<double> values;

  double operator()(std::int64_t t, int k) const {
    return values[static_cast<std::size_t>(t) * actions + k];
  }
};

RewardMatrix reward_matrix(const Game& game, int player,
                           std::span<const OpponentActions> opp_record);
// Uses the first `upto` rounds of a play record (0 means all).
RewardMatrix reward_matrix(const Game& game, int player, const PlayRecord& record,
                           std::int64_t upto = 0);

// Best hindsight sequence subject to a switch budget.
struct BenchmarkResult {
  double value = 0.0;
  std::vector<int> sequence;
  std::int64_t switches_used = 0;
};

// floor(budget), clamped to [0, rounds - 1].
std::int64_t switch_cap(double budget, std::int64_t rounds);

// Sum over rounds of the per-round best reply.
double pointwise_best_sum(const RewardMatrix& rewards);
// Fewest switches of any sequence attaining pointwise_best_sum.
std::int64_t min_switches_for_pointwise_best(const RewardMatrix& rewards);

// Serial reference kernel: best value with at most j switches, for every
// j = 0..max_switches. O(T * K * (max_switches + 1)).
std::vector<double> best_values_by_switches_serial(const RewardMatrix& rewards,
                                                   std::int64_t max_switches);
double best_dynamic_value_serial(const RewardMatrix& rewards,
                                 std::int64_t max_switches);

// Production kernel. Short-circuits once the budget covers the pointwise
// best-reply path and splits the switch dimension across OpenMP threads
// for large budgets. Bit-identical to the serial kernel.
double best_dynamic_value(const RewardMatrix& rewards, std::int64_t max_switches,
                          int threads = 0);

// Among optimal sequences returns the one with the fewest switches, then the
// lexicographically smallest. Memory is O(T * K * (switches + 1)).
BenchmarkResult best_dynamic_sequence(const RewardMatrix& rewards, double budget);
BenchmarkResult best_dynamic_sequence(const Game& game, int player,
                                      std::span<const OpponentActions> opp_record,
                                      double budget);

// Benchmark value minus the realized payoff of `player` over the first
// `upto` rounds (0 means all), both computed from `game`.
double dynamic_regret(const Game& game, int player, const PlayRecord& record,
                      double budget, std::int64_t upto = 0);

}  // namespace benchdyn

#endif  // BENCHDYN_DYNAMIC_REGRET_H_
