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


#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "benchdyn/game.h"
#include "benchdyn/hannan.h"
#include "benchdyn/simplex.h"
#include "doctest.h"
#include "oracles.h"

namespace benchdyn {
namespace {

constexpr int kLow = 0;
constexpr int kHigh = 1;

JointDistribution off_diagonal(const Game& g) {
  const std::vector<ActionProfile> support = {ActionProfile{{kLow, kHigh}},
                                              ActionProfile{{kHigh, kLow}}};
  return JointDistribution::uniform_over(g, support);
}

Game random_game(std::mt19937_64& gen, std::vector<int> counts, int range) {
  std::size_t n = 1;
  for (int k : counts) n *= static_cast<std::size_t>(k);
  std::vector<std::vector<double>> u(counts.size(), std::vector<double>(n));
  for (auto& row : u) {
    for (double& x : row) x = static_cast<double>(gen() % static_cast<unsigned>(range));
  }
  return Game(std::move(counts), std::move(u));
}

// Same game with player 0's actions listed in reverse and the players
// swapped.
Game relabeled(const Game& g) {
  const int k0 = g.num_actions(0);
  const int k1 = g.num_actions(1);
  std::vector<std::vector<double>> u(2, std::vector<double>(g.num_profiles()));
  for (int b = 0; b < k1; ++b) {
    for (int a = 0; a < k0; ++a) {
      const std::size_t src = g.profile_index(ActionProfile{{a, b}});
      const std::size_t dst = static_cast<std::size_t>(b * k0 + (k0 - 1 - a));
      u[0][dst] = g.payoff(1, src);
      u[1][dst] = g.payoff(0, src);
    }
  }
  return Game({k1, k0}, u);
}

std::vector<double> random_point(std::mt19937_64& gen, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (double& x : p) total += (x = e(gen));
  for (double& x : p) x /= total;
  return p;
}

TEST_SUITE("equilibria") {
  TEST_CASE("membership examples") {
    const Game g = oracle::pricing_game();
    const JointDistribution hh = JointDistribution::dirac(g, ActionProfile{{kHigh, kHigh}});
    // Staying put gains 0; each p_l deviation loses 2.
    CHECK(hannan_violation(g, hh) == 0);
    for (const DeviationGain& d : deviation_gains(g, hh)) {
      CHECK(d.gain == (d.deviation == kLow ? -2 : 0));
    }
    CHECK(is_hannan_member(g, hh));
    const JointDistribution off = off_diagonal(g);
    CHECK_FALSE(is_hannan_member(g, off));
    // p_l deviations gain 0.5; p_h deviations gain 1 and set the maximum.
    CHECK(hannan_violation(g, off) == doctest::Approx(1.0));
    for (const DeviationGain& d : deviation_gains(g, off)) {
      CHECK(d.gain == doctest::Approx(d.deviation == kLow ? 0.5 : 1.0));
    }
    CHECK(hannan_violation(g, off) == doctest::Approx(oracle::max_deviation_gain(
                                          g, {off.mass().begin(), off.mass().end()})));
  }

  TEST_CASE("constraint rows count one per player and action") {
    std::mt19937_64 gen(1);
    const Game g = random_game(gen, {2, 3, 4}, 5);
    CHECK(hannan_constraints(g).size() == 9);
  }

  TEST_CASE("property: Nash equilibria are Hannan members") {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 100; ++trial) {
      const Game g = random_game(gen, {3, 3}, 10);
      for (std::size_t a = 0; a < g.num_profiles(); ++a) {
        bool nash = true;
        for (int i = 0; i < 2 && nash; ++i) {
          for (int x = 0; x < 3; ++x) {
            if (g.payoff(i, g.with_action(a, i, x)) > g.payoff(i, a)) nash = false;
          }
        }
        if (nash) CHECK(is_hannan_member(g, JointDistribution::dirac(g, g.profile_at(a))));
      }
    }
  }

  TEST_CASE("welfare extremes of the pricing game") {
    const Game g = oracle::pricing_game();
    const LpResult low = extremal_social_welfare(g, Direction::kMin);
    REQUIRE(low.status == LpStatus::kOptimal);
    REQUIRE(low.exact_value.has_value());
    CHECK(*low.exact_value == 14);
    CHECK(low.value == 14.0);
    REQUIRE(low.argument.has_value());
    CHECK(is_hannan_member(g, *low.argument));
    const LpResult high = max_welfare(g);
    CHECK(high.value == 24.0);
    CHECK(extremal_social_welfare(g, Direction::kMax).value == 24.0);
    CHECK(price_of_anarchy(g) == doctest::Approx(12.0 / 7).epsilon(1e-15));
  }

  TEST_CASE("constant and identical-interest games have price of anarchy 1") {
    const Game flat({2, 3}, {{4, 4, 4, 4, 4, 4}, {4, 4, 4, 4, 4, 4}});
    CHECK(extremal_social_welfare(flat, Direction::kMin).value == 8.0);
    CHECK(extremal_social_welfare(flat, Direction::kMax).value == 8.0);
    CHECK(price_of_anarchy(flat) == 1.0);
    // Identical interests with a dominant, welfare-optimal profile.
    const Game common({2, 2}, {{9, 3, 3, 1}, {9, 3, 3, 1}});
    CHECK(price_of_anarchy(common) == 1.0);
    const oracle::GridResult grid = oracle::grid_oracle4(common, 60, {0.25, 0.25, 0.25, 0.25});
    CHECK(grid.min_welfare == 18.0);
  }

  TEST_CASE("price of anarchy rejects negative payoffs") {
    const Game g({2, 2}, {{-1, 0, 0, 1}, {0, 0, 0, 1}});
    CHECK_THROWS_AS(price_of_anarchy(g), std::invalid_argument);
  }

  TEST_CASE("distance of the off-diagonal point") {
    const Game g = oracle::pricing_game();
    const JointDistribution off = off_diagonal(g);
    const LpResult d = distance_to_hannan(g, off);
    REQUIRE(d.exact_value.has_value());
    CHECK(*d.exact_value == Rational(10, 9));
    REQUIRE(d.argument.has_value());
    CHECK(is_hannan_member(g, *d.argument));
    double l1 = 0.0;
    for (std::size_t a = 0; a < 4; ++a) l1 += std::abs((*d.argument)[a] - off[a]);
    CHECK(l1 == doctest::Approx(d.value).epsilon(1e-12));
    // Grid oracle: spacing 1/90 contains the optimum (4/9, 2/9, 2/9, 1/9).
    const std::vector<double> q(off.mass().begin(), off.mass().end());
    const oracle::GridResult grid = oracle::grid_oracle4(g, 90, q);
    CHECK(grid.min_distance == doctest::Approx(10.0 / 9).epsilon(1e-12));
    // Rejection sampling can only overestimate the minimum.
    const oracle::GridResult sampled = oracle::sampling_oracle(g, 200000, 5, q);
    CHECK(sampled.members > 0);
    CHECK(sampled.min_distance >= d.value - 1e-12);
    CHECK(sampled.min_distance <= d.value + 0.05);
  }

  TEST_CASE("property: distance is zero exactly on members") {
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 40; ++trial) {
      const Game g = random_game(gen, {2, 3}, 6);
      for (int s = 0; s < 10; ++s) {
        const JointDistribution q({2, 3}, random_point(gen, 6));
        const LpResult d = distance_to_hannan(g, q);
        REQUIRE(d.status == LpStatus::kOptimal);
        CHECK(d.value >= 0.0);
        CHECK(is_hannan_member(g, q) == (d.value <= 1e-9));
      }
    }
  }

  TEST_CASE("property: welfare extremes are invariant under relabeling") {
    std::mt19937_64 gen(9);
    for (int trial = 0; trial < 40; ++trial) {
      const Game g = random_game(gen, {2 + static_cast<int>(gen() % 2), 3}, 10);
      const Game h = relabeled(g);
      for (Direction dir : {Direction::kMin, Direction::kMax}) {
        const LpResult a = extremal_social_welfare(g, dir);
        const LpResult b = extremal_social_welfare(h, dir);
        REQUIRE(a.exact_value.has_value());
        REQUIRE(b.exact_value.has_value());
        CHECK(*a.exact_value == *b.exact_value);
      }
    }
  }

  TEST_CASE("property: LP minimum welfare never exceeds any grid member") {
    std::mt19937_64 gen(10);
    int compared = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const Game g = random_game(gen, {2, 2}, 10);
      const LpResult low = extremal_social_welfare(g, Direction::kMin);
      const oracle::GridResult grid = oracle::grid_oracle4(g, 40, {0.25, 0.25, 0.25, 0.25});
      // The set can miss the grid when it is a single off-grid point.
      if (grid.members == 0) continue;
      ++compared;
      CHECK(low.value <= grid.min_welfare + 1e-9);
    }
    CHECK(compared >= 10);
  }

  TEST_CASE("smoothness examples") {
    const Game g = oracle::pricing_game();
    CHECK(smoothness_check(g, 0, 0).holds);
    const SmoothnessResult r = smoothness_check(g, 1, 0);
    CHECK_FALSE(r.holds);
    CHECK(r.worst_a == g.profile_index(ActionProfile{{kLow, kLow}}));
    CHECK(r.worst_a_prime == g.profile_index(ActionProfile{{kHigh, kHigh}}));
    CHECK(r.worst_violation == 12.0);
  }

  TEST_CASE("congestion-style game: tightest grid pair is consistent with the LP") {
    // Two users pick one of two links; a shared link halves the value.
    const Game g({2, 2}, {{3, 6, 4, 2}, {3, 4, 6, 2}});
    const double optimum = max_welfare(g).value;
    const double low = extremal_social_welfare(g, Direction::kMin).value;
    double best = 0.0;
    for (int li = 0; li <= 200; ++li) {
      for (int mi = 0; mi <= 200; ++mi) {
        const SmoothnessResult s = smoothness_check(g, li * 0.01, mi * 0.01, 1);
        if (!s.holds) continue;
        best = std::max(best, s.welfare_fraction);
        CHECK(low >= s.welfare_fraction * optimum - 1e-9);
      }
    }
    CHECK(best > 0.0);
  }

  TEST_CASE("property: smoothness kernels agree") {
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 20; ++trial) {
      const Game g = random_game(gen, {3, 4, 2}, 10);
      for (double lambda : {0.0, 0.5, 1.0}) {
        for (double mu : {0.0, 0.3}) {
          const SmoothnessResult a = smoothness_check_serial(g, lambda, mu);
          for (int threads : {1, 3}) {
            const SmoothnessResult b = smoothness_check(g, lambda, mu, threads);
            CHECK(a.holds == b.holds);
            CHECK(a.worst_violation == b.worst_violation);
            CHECK(a.worst_a == b.worst_a);
            CHECK(a.worst_a_prime == b.worst_a_prime);
          }
        }
      }
    }
  }

  TEST_CASE("boundary cloud points are members on the boundary") {
    const Game g = oracle::pricing_game();
    const auto cloud = boundary_cloud(g, 50, 3, 1);
    REQUIRE(cloud.size() == 50);
    CHECK(cloud == boundary_cloud(g, 50, 3, 2));
    for (const auto& point : cloud) {
      const JointDistribution q({2, 2}, point);
      CHECK(hannan_violation(g, q) <= 1e-7);
      const bool on_face = hannan_violation(g, q) >= -1e-7 ||
                           *std::min_element(point.begin(), point.end()) <= 1e-9;
      CHECK(on_face);
    }
  }

  TEST_CASE("simplex solver: exact and floating routes agree") {
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 30; ++trial) {
      LinearProgram<mpq_class> exact;
      LinearProgram<double> approx;
      const std::size_t vars = 3;
      exact.num_vars = approx.num_vars = vars;
      exact.maximize = approx.maximize = true;
      for (std::size_t v = 0; v < vars; ++v) {
        const int c = static_cast<int>(gen() % 7) - 2;
        exact.objective.push_back(c);
        approx.objective.push_back(c);
      }
      for (int row = 0; row < 3; ++row) {
        std::vector<mpq_class> ce;
        std::vector<double> cd;
        for (std::size_t v = 0; v < vars; ++v) {
          const int c = static_cast<int>(gen() % 5);
          ce.push_back(c);
          cd.push_back(c);
        }
        const int rhs = 1 + static_cast<int>(gen() % 9);
        exact.add_row(ce, Relation::kLessEqual, rhs);
        approx.add_row(cd, Relation::kLessEqual, rhs);
      }
      // Keep it bounded.
      exact.add_row(std::vector<mpq_class>(vars, 1), Relation::kLessEqual, 10);
      approx.add_row(std::vector<double>(vars, 1.0), Relation::kLessEqual, 10);
      const auto a = solve_lp(exact);
      const auto b = solve_lp(approx);
      REQUIRE(a.status == LpStatus::kOptimal);
      REQUIRE(b.status == LpStatus::kOptimal);
      CHECK(a.value.get_d() == doctest::Approx(b.value).epsilon(1e-9));
    }
    LinearProgram<mpq_class> infeasible;
    infeasible.num_vars = 1;
    infeasible.objective = {1};
    infeasible.add_row({1}, Relation::kGreaterEqual, 2);
    infeasible.add_row({1}, Relation::kLessEqual, 1);
    CHECK(solve_lp(infeasible).status == LpStatus::kInfeasible);
    LinearProgram<double> unbounded;
    unbounded.num_vars = 1;
    unbounded.maximize = true;
    unbounded.objective = {1.0};
    unbounded.add_row({1.0}, Relation::kGreaterEqual, 0.0);
    CHECK(solve_lp(unbounded).status == LpStatus::kUnbounded);
  }
}

}  // namespace
}  // namespace benchdyn
