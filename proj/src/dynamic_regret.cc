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

#include "benchdyn/dynamic_regret.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "benchdyn/parallel.h"

namespace benchdyn {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Below this many (switch, action) cells per round the OpenMP region costs
// more than it saves.
constexpr std::int64_t kParallelCells = 4096;

void check_player(const Game& game, int player) {
  if (player < 0 || player >= game.num_players()) {
    throw GameError("player index out of range");
  }
}

// One round of the rolling-max recurrence on cells [j_begin, j_end).
// best_prev[j] holds max_k W[j][k] from the previous round.
inline void advance_rows(std::vector<double>& w, const std::vector<double>& best_prev,
                         const double* reward, int actions, std::int64_t j_begin,
                         std::int64_t j_end) {
  for (std::int64_t j = j_begin; j < j_end; ++j) {
    const double carry = j > 0 ? best_prev[j - 1] : kNegInf;
    double* row = w.data() + j * actions;
    for (int k = 0; k < actions; ++k) {
      row[k] = reward[k] + std::max(row[k], carry);
    }
  }
}

inline double row_max(const std::vector<double>& w, std::int64_t j, int actions) {
  const double* row = w.data() + j * actions;
  return *std::max_element(row, row + actions);
}

}  // namespace

RewardMatrix reward_matrix(const Game& game, int player,
                           std::span<const OpponentActions> opp_record) {
  check_player(game, player);
  if (opp_record.empty()) throw std::invalid_argument("empty opponent record");
  RewardMatrix r;
  r.rounds = static_cast<std::int64_t>(opp_record.size());
  r.actions = game.num_actions(player);
  r.values.resize(static_cast<std::size_t>(r.rounds) * r.actions);
  for (std::int64_t t = 0; t < r.rounds; ++t) {
    const auto& opp = opp_record[t];
    if (static_cast<int>(opp.size()) != game.num_players() - 1) {
      throw GameError("opponent record row has the wrong number of players");
    }
    std::size_t index = 0;
    int slot = 0;
    for (int j = 0; j < game.num_players(); ++j) {
      if (j == player) continue;
      const int a = opp[slot++];
      if (a < 0 || a >= game.num_actions(j)) {
        throw GameError("opponent action out of range");
      }
      index = index * static_cast<std::size_t>(game.num_actions(j)) +
              static_cast<std::size_t>(a);
    }
    for (int k = 0; k < r.actions; ++k) {
      r.values[static_cast<std::size_t>(t) * r.actions + k] =
          game.payoff(player, game.compose(player, k, index));
    }
  }
  return r;
}

RewardMatrix reward_matrix(const Game& game, int player, const PlayRecord& record,
                           std::int64_t upto) {
  check_player(game, player);
  if (record.action_counts != game.action_counts()) {
    throw GameError("play record does not belong to this game");
  }
  if (upto == 0) upto = record.rounds();
  if (upto < 1 || upto > record.rounds()) {
    throw std::out_of_range("prefix length outside the record");
  }
  RewardMatrix r;
  r.rounds = upto;
  r.actions = game.num_actions(player);
  r.values.resize(static_cast<std::size_t>(upto) * r.actions);
  for (std::int64_t t = 0; t < upto; ++t) {
    const std::size_t profile = record.profiles[t];
    for (int k = 0; k < r.actions; ++k) {
      r.values[static_cast<std::size_t>(t) * r.actions + k] =
          game.payoff(player, game.with_action(profile, player, k));
    }
  }
  return r;
}

std::int64_t switch_cap(double budget, std::int64_t rounds) {
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be >= 0");
  const double floored = std::floor(budget);
  const auto limit = static_cast<double>(std::max<std::int64_t>(rounds - 1, 0));
  return static_cast<std::int64_t>(std::min(floored, limit));
}

double pointwise_best_sum(const RewardMatrix& rewards) {
  double total = 0.0;
  for (std::int64_t t = 0; t < rewards.rounds; ++t) {
    const double* row = rewards.values.data() + t * rewards.actions;
    total += *std::max_element(row, row + rewards.actions);
  }
  return total;
}

std::int64_t min_switches_for_pointwise_best(const RewardMatrix& rewards) {
  if (rewards.rounds == 0) return 0;
  const int k_count = rewards.actions;
  std::vector<char> current(k_count), next(k_count);
  auto argmax_set = [&](std::int64_t t, std::vector<char>& out) {
    const double* row = rewards.values.data() + t * k_count;
    const double best = *std::max_element(row, row + k_count);
    for (int k = 0; k < k_count; ++k) out[k] = row[k] == best;
  };
  argmax_set(0, current);
  std::int64_t switches = 0;
  for (std::int64_t t = 1; t < rewards.rounds; ++t) {
    argmax_set(t, next);
    bool overlap = false;
    for (int k = 0; k < k_count; ++k) {
      current[k] = current[k] && next[k];
      overlap = overlap || current[k];
    }
    if (!overlap) {
      ++switches;
      current = next;
    }
  }
  return switches;
}

std::vector<double> best_values_by_switches_serial(const RewardMatrix& rewards,
                                                   std::int64_t max_switches) {
  if (rewards.rounds < 1) throw std::invalid_argument("empty reward matrix");
  if (max_switches < 0) throw std::invalid_argument("negative switch count");
  const int k_count = rewards.actions;
  const std::int64_t rows = max_switches + 1;
  std::vector<double> w(static_cast<std::size_t>(rows) * k_count);
  for (std::int64_t j = 0; j < rows; ++j) {
    std::copy_n(rewards.values.data(), k_count, w.data() + j * k_count);
  }
  std::vector<double> best_prev(rows);
  for (std::int64_t t = 1; t < rewards.rounds; ++t) {
    for (std::int64_t j = 0; j < rows; ++j) best_prev[j] = row_max(w, j, k_count);
    advance_rows(w, best_prev, rewards.values.data() + t * k_count, k_count, 0, rows);
  }
  std::vector<double> out(rows);
  for (std::int64_t j = 0; j < rows; ++j) out[j] = row_max(w, j, k_count);
  return out;
}

double best_dynamic_value_serial(const RewardMatrix& rewards,
                                 std::int64_t max_switches) {
  return best_values_by_switches_serial(rewards, max_switches).back();
}

double best_dynamic_value(const RewardMatrix& rewards, std::int64_t max_switches,
                          int threads) {
  if (rewards.rounds < 1) throw std::invalid_argument("empty reward matrix");
  if (max_switches < 0) throw std::invalid_argument("negative switch count");
  const std::int64_t needed = min_switches_for_pointwise_best(rewards);
  if (max_switches >= needed) return pointwise_best_sum(rewards);

  const int k_count = rewards.actions;
  const std::int64_t rows = max_switches + 1;
  const int nthreads = resolve_threads(threads);
  if (nthreads <= 1 || rows * k_count < kParallelCells) {
    return best_dynamic_value_serial(rewards, max_switches);
  }

  std::vector<double> w(static_cast<std::size_t>(rows) * k_count);
  for (std::int64_t j = 0; j < rows; ++j) {
    std::copy_n(rewards.values.data(), k_count, w.data() + j * k_count);
  }
  std::vector<double> best_prev(rows);
#pragma omp parallel num_threads(nthreads)
  {
    for (std::int64_t t = 1; t < rewards.rounds; ++t) {
#pragma omp for schedule(static)
      for (std::int64_t j = 0; j < rows; ++j) best_prev[j] = row_max(w, j, k_count);
      const double* reward = rewards.values.data() + t * k_count;
#pragma omp for schedule(static)
      for (std::int64_t j = 0; j < rows; ++j) {
        advance_rows(w, best_prev, reward, k_count, j, j + 1);
      }
    }
  }
  return row_max(w, rows - 1, k_count);
}

BenchmarkResult best_dynamic_sequence(const RewardMatrix& rewards, double budget) {
  if (rewards.rounds < 1) throw std::invalid_argument("empty opponent record");
  const std::int64_t rounds = rewards.rounds;
  const int k_count = rewards.actions;
  const std::int64_t cap = std::min(switch_cap(budget, rounds),
                                    min_switches_for_pointwise_best(rewards));

  // Fewest switches attaining the optimum under the cap.
  const std::vector<double> by_switches = best_values_by_switches_serial(rewards, cap);
  const double optimum = by_switches.back();
  const double tol = 1e-10 * std::max(1.0, std::abs(optimum));
  std::int64_t used = cap;
  for (std::int64_t j = 0; j <= cap; ++j) {
    if (by_switches[j] >= optimum - tol) {
      used = j;
      break;
    }
  }

  // Backward table: suffix[t][j][k] = best payoff over rounds t.. when the
  // action at t is k and at most j further switches are allowed.
  const std::int64_t rows = used + 1;
  const auto cells = static_cast<std::size_t>(rounds) * rows * k_count;
  if (cells > (std::size_t{1} << 28)) {
    throw std::length_error(
        "sequence reconstruction table too large; use best_dynamic_value");
  }
  std::vector<double> suffix(cells);
  auto at = [&](std::int64_t t, std::int64_t j, int k) -> double& {
    return suffix[(static_cast<std::size_t>(t) * rows + j) * k_count + k];
  };
  std::vector<double> row_best(rows);
  for (std::int64_t j = 0; j < rows; ++j) {
    for (int k = 0; k < k_count; ++k) at(rounds - 1, j, k) = rewards(rounds - 1, k);
  }
  auto continuation = [&](std::int64_t t, std::int64_t j, int k) {
    // Value of rounds t+1.. given action k at t and j switches left.
    double best = at(t + 1, j, k);
    if (j > 0) {
      for (int k2 = 0; k2 < k_count; ++k2) best = std::max(best, at(t + 1, j - 1, k2));
    }
    return best;
  };
  for (std::int64_t t = rounds - 2; t >= 0; --t) {
    for (std::int64_t j = 0; j < rows; ++j) {
      for (int k = 0; k < k_count; ++k) {
        at(t, j, k) = rewards(t, k) + continuation(t, j, k);
      }
    }
  }

  BenchmarkResult result;
  result.sequence.reserve(rounds);
  double value = kNegInf;
  for (int k = 0; k < k_count; ++k) value = std::max(value, at(0, used, k));
  int current = 0;
  while (at(0, used, current) < value - tol) ++current;
  result.value = value;
  result.sequence.push_back(current);
  std::int64_t left = used;
  for (std::int64_t t = 0; t + 1 < rounds; ++t) {
    const double target = continuation(t, left, current);
    int chosen = -1;
    for (int k = 0; k < k_count && chosen < 0; ++k) {
      double candidate = kNegInf;
      if (k == current) {
        candidate = at(t + 1, left, k);
      } else if (left > 0) {
        candidate = at(t + 1, left - 1, k);
      }
      if (candidate >= target - tol) chosen = k;
    }
    if (chosen != current) {
      --left;
      ++result.switches_used;
    }
    current = chosen;
    result.sequence.push_back(current);
  }
  return result;
}

BenchmarkResult best_dynamic_sequence(const Game& game, int player,
                                      std::span<const OpponentActions> opp_record,
                                      double budget) {
  return best_dynamic_sequence(reward_matrix(game, player, opp_record), budget);
}

double dynamic_regret(const Game& game, int player, const PlayRecord& record,
                      double budget, std::int64_t upto) {
  const RewardMatrix rewards = reward_matrix(game, player, record, upto);
  double realized = 0.0;
  for (std::int64_t t = 0; t < rewards.rounds; ++t) {
    realized += game.payoff(player, record.profiles[t]);
  }
  const double benchmark =
      best_dynamic_value(rewards, switch_cap(budget, rewards.rounds));
  return benchmark - realized;
}

}  // namespace benchdyn
