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


#include <random>
#include <vector>

#include "benchdyn/dynamic_regret.h"
#include "benchdyn/game.h"
#include "benchdyn/play_record.h"
#include "doctest.h"
#include "oracles.h"

namespace benchdyn {
namespace {

constexpr int kLow = 0;
constexpr int kHigh = 1;

std::vector<OpponentActions> example_record() { return {{kHigh}, {kLow}, {kLow}}; }

// Record in which firm1 plays `own[t]` against `opp[t]`.
PlayRecord make_record(const Game& g, const std::vector<int>& own, const std::vector<int>& opp) {
  PlayRecord r;
  r.action_counts = g.action_counts();
  r.payoffs.assign(2, {});
  r.defection_times.assign(2, std::nullopt);
  for (std::size_t t = 0; t < own.size(); ++t) {
    const std::size_t a = g.profile_index(ActionProfile{{own[t], opp[t]}});
    r.profiles.push_back(a);
    for (int i = 0; i < 2; ++i) r.payoffs[i].push_back(g.payoff(i, a));
  }
  return r;
}

struct RandomInstance {
  Game game;
  int player;
  std::vector<OpponentActions> opp;
};

RandomInstance random_instance(std::mt19937_64& gen, int max_rounds) {
  const std::vector<int> counts = {2 + static_cast<int>(gen() % 3),
                                   2 + static_cast<int>(gen() % 2)};
  std::vector<std::vector<double>> u(2, std::vector<double>(counts[0] * counts[1]));
  for (auto& row : u) {
    for (double& x : row) x = static_cast<double>(gen() % 10);
  }
  Game g(counts, u);
  const int player = static_cast<int>(gen() % 2);
  std::vector<OpponentActions> opp(1 + gen() % max_rounds);
  for (auto& o : opp) o = {static_cast<int>(gen() % counts[1 - player])};
  return {std::move(g), player, std::move(opp)};
}

TEST_SUITE("dynamic_regret") {
  TEST_CASE("three-round pricing example") {
    const Game g = oracle::pricing_game();
    const auto opp = example_record();
    const BenchmarkResult one = best_dynamic_sequence(g, 0, opp, 1.0);
    CHECK(one.value == 26);
    CHECK(one.sequence == std::vector<int>{kHigh, kLow, kLow});
    CHECK(one.switches_used == 1);
    const BenchmarkResult zero = best_dynamic_sequence(g, 0, opp, 0.0);
    CHECK(zero.value == 24);
    CHECK(zero.switches_used == 0);
  }

  TEST_CASE("dynamic regret examples") {
    const Game g = oracle::pricing_game();
    const PlayRecord constant_low = make_record(g, {kLow, kLow, kLow}, {kHigh, kLow, kLow});
    CHECK(dynamic_regret(g, 0, constant_low, 1.0) == 2);
    const PlayRecord optimal = make_record(g, {kHigh, kLow, kLow}, {kHigh, kLow, kLow});
    CHECK(dynamic_regret(g, 0, optimal, 1.0) == 0);
    // Budget 0 is static regret.
    CHECK(dynamic_regret(g, 0, optimal, 0.0) == 24 - 26);
  }

  TEST_CASE("switch cap") {
    CHECK(switch_cap(2.7, 10) == 2);
    CHECK(switch_cap(50, 10) == 9);
    CHECK(switch_cap(0.0, 1) == 0);
  }

  TEST_CASE("tie-break prefers fewer switches, then the smallest sequence") {
    // All-zero payoffs: every sequence ties at 0.
    const Game flat({2, 2}, {{0, 0, 0, 0}, {0, 0, 0, 0}}, 1.0);
    const std::vector<OpponentActions> opp = {{0}, {1}, {0}, {1}};
    const BenchmarkResult r = best_dynamic_sequence(flat, 0, opp, 3.0);
    CHECK(r.switches_used == 0);
    CHECK(r.sequence == std::vector<int>{0, 0, 0, 0});
  }

  TEST_CASE("property: matches brute force, replays to its value, respects the cap") {
    std::mt19937_64 gen(4242);
    for (int trial = 0; trial < 150; ++trial) {
      const RandomInstance in = random_instance(gen, 7);
      std::vector<std::vector<int>> full;
      for (const auto& o : in.opp) {
        std::vector<int> p(2, 0);
        p[1 - in.player] = o[0];
        full.push_back(p);
      }
      double prev = -1e300;
      for (double budget : {0.0, 0.5, 1.0, 2.0, 3.0, 10.0}) {
        const BenchmarkResult r = best_dynamic_sequence(in.game, in.player, in.opp, budget);
        const auto cap = switch_cap(budget, static_cast<std::int64_t>(in.opp.size()));
        CHECK(r.value == oracle::brute_force_best(in.game, in.player, full, cap));
        CHECK(r.switches_used <= cap);
        CHECK(r.value >= prev);
        prev = r.value;
        double replay = 0.0;
        std::int64_t switches = 0;
        for (std::size_t t = 0; t < in.opp.size(); ++t) {
          replay += oracle::payoff_against(in.game, in.player, r.sequence[t], full[t]);
          if (t > 0) switches += r.sequence[t] != r.sequence[t - 1];
        }
        CHECK(replay == r.value);
        CHECK(switches == r.switches_used);
      }
    }
  }

  TEST_CASE("property: unconstrained budget equals the pointwise best sum") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 100; ++trial) {
      const RandomInstance in = random_instance(gen, 40);
      const RewardMatrix m = reward_matrix(in.game, in.player, in.opp);
      const double unconstrained = best_dynamic_sequence(m, 1e9).value;
      CHECK(unconstrained == pointwise_best_sum(m));
      const std::int64_t needed = min_switches_for_pointwise_best(m);
      CHECK(best_dynamic_sequence(m, static_cast<double>(needed)).value == unconstrained);
      if (needed > 0) {
        CHECK(best_dynamic_sequence(m, static_cast<double>(needed - 1)).value < unconstrained);
      }
    }
  }

  TEST_CASE("property: parallel kernel is bit-identical to the serial one") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 6; ++trial) {
      RewardMatrix m;
      m.rounds = 2000 + static_cast<std::int64_t>(gen() % 500);
      m.actions = 4 + static_cast<int>(gen() % 2);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      // 1101 rows x >= 4 actions clears the parallel threshold.
      m.values.resize(static_cast<std::size_t>(m.rounds) * m.actions);
      for (double& x : m.values) x = u(gen);
      REQUIRE(min_switches_for_pointwise_best(m) > 1100);
      for (std::int64_t s : {0, 1, 5, 40, 1100}) {
        const double serial = best_dynamic_value_serial(m, s);
        for (int threads : {1, 2, 4}) CHECK(best_dynamic_value(m, s, threads) == serial);
        CHECK(best_values_by_switches_serial(m, s).back() == serial);
      }
    }
  }

  TEST_CASE("empty record is rejected") {
    const Game g = oracle::pricing_game();
    const std::vector<OpponentActions> none;
    CHECK_THROWS(best_dynamic_sequence(g, 0, none, 1.0));
  }
}

}  // namespace
}  // namespace benchdyn
