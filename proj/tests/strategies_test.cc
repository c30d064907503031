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


#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "benchdyn/exp3p.h"
#include "benchdyn/game.h"
#include "benchdyn/restart.h"
#include "benchdyn/rexp3p.h"
#include "benchdyn/rng.h"
#include "benchdyn/scripted.h"
#include "benchdyn/trigger.h"
#include "doctest.h"
#include "oracles.h"

namespace benchdyn {
namespace {

constexpr int kLow = 0;
constexpr int kHigh = 1;

StrategyContext context(int num_actions, std::int64_t horizon, std::uint64_t seed,
                        const Game* game = nullptr, int player = 0) {
  StrategyContext ctx;
  ctx.player = player;
  ctx.num_actions = num_actions;
  ctx.horizon = horizon;
  ctx.seed = seed;
  ctx.match_seed = seed;
  ctx.game = game;
  ctx.payoff_bound = 1.0;
  return ctx;
}

void check_distribution(std::span<const double> p, double floor = 0.0) {
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  CHECK(std::abs(total - 1.0) <= 1e-12);
  for (double x : p) CHECK(x >= floor - 1e-15);
}

// Drives `s` for `rounds` rounds with payoffs drawn from `gen` in [0, 1],
// checking every sampling distribution on the way.
void drive(Strategy& s, std::int64_t rounds, std::mt19937_64& gen, double floor = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::int64_t t = 0; t < rounds; ++t) {
    const int a = s.act();
    REQUIRE(a >= 0);
    REQUIRE(a < s.num_actions());
    check_distribution(s.distribution(), floor);
    CHECK(s.distribution()[a] > 0.0);
    s.observe(a, u(gen));
  }
}

TEST_SUITE("strategies") {
  TEST_CASE("Exp3P tuning examples") {
    const Exp3PParams p = exp3p_tune(2, 100, 0, 0.05);
    CHECK(p.s == doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));
    CHECK(p.s == doctest::Approx(1.38629).epsilon(1e-5));
    CHECK(p.beta == doctest::Approx(0.24977).epsilon(1e-4));
    CHECK(p.gamma == doctest::Approx(0.11774).epsilon(1e-4));
    CHECK(p.eta == doctest::Approx(0.016651).epsilon(1e-4));
    CHECK(p.bound == doctest::Approx(7 * std::sqrt(200 * p.s) +
                                     std::sqrt(200 / p.s) * std::log(20.0)));
    CHECK_NOTHROW(exp3p_tune(2, 4, 3, 0.05));
    CHECK_THROWS_AS(exp3p_tune(2, 4, 4, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(exp3p_tune(2, 4, -1, 0.05), std::invalid_argument);
    CHECK(exp3p_tune(3, 1000, 5, 0.05).s ==
          doctest::Approx(5 * std::log(3.0 * 1000 * 3 / 5) + 2 * std::log(3.0)));
  }

  TEST_CASE("Exp3P first distribution is uniform") {
    Exp3P s(3, exp3p_tune(3, 50, 0, 0.05), 1.0, 17);
    for (double x : s.next_distribution()) CHECK(x == doctest::Approx(1.0 / 3));
    s.act();
    for (double x : s.distribution()) CHECK(x == doctest::Approx(1.0 / 3));
  }

  TEST_CASE("Exp3P single hand-computed update") {
    Exp3PParams p;
    p.beta = 0.1;
    p.eta = 0.1;
    p.gamma = 0.2;
    // Find a seed whose first draw is the first action.
    for (std::uint64_t seed = 0;; ++seed) {
      Exp3P s(2, p, 1.0, seed);
      if (s.act() != 0) continue;
      s.observe(0, 1.0);
      CHECK(s.cumulative_estimates()[0] == doctest::Approx(1.6));
      CHECK(s.cumulative_estimates()[1] == doctest::Approx(0.6));
      CHECK(s.next_distribution()[0] == doctest::Approx(0.51998).epsilon(1e-5));
      CHECK(s.next_distribution()[0] ==
            doctest::Approx(0.8 / (1 + std::exp(-0.1)) + 0.1).epsilon(1e-14));
      break;
    }
  }

  TEST_CASE("Exp3P with gamma 1 stays uniform") {
    Exp3PParams p = exp3p_tune(2, 100, 0, 0.05);
    p.gamma = 1.0;
    Exp3P s(2, p, 1.0, 3);
    std::mt19937_64 gen(5);
    for (int t = 0; t < 200; ++t) {
      s.act();
      CHECK(s.distribution()[0] == doctest::Approx(0.5));
      s.observe(0, static_cast<double>(gen() % 2));
    }
  }

  TEST_CASE("Exp3P rejects misuse") {
    Exp3P s(2, exp3p_tune(2, 10, 0, 0.05), 1.0, 1);
    CHECK_THROWS_AS(s.observe(0, 0.5), std::logic_error);
    s.act();
    CHECK_THROWS_AS(s.act(), std::logic_error);
    CHECK_THROWS_AS(s.observe(0, 2.0), std::out_of_range);
  }

  TEST_CASE("property: Exp3P distributions are valid and floored by gamma/K") {
    std::mt19937_64 gen(123);
    for (int k : {2, 3, 5}) {
      for (std::int64_t s_bound : {0, 3}) {
        const Exp3PParams p = exp3p_tune(k, 500, s_bound, 0.05);
        Exp3P s(k, p, 1.0, gen());
        drive(s, 500, gen, p.gamma / k);
      }
    }
  }

  TEST_CASE("Rexp3P pull parameters") {
    const Rexp3PPull r5 = rexp3p_pull(SwitchBudgetSchedule::power(1, 0.5), 5, 2);
    CHECK(r5.switch_target == doctest::Approx(std::sqrt(31.0) + 1).epsilon(1e-12));
    CHECK(r5.switch_target == doctest::Approx(6.5678).epsilon(1e-4));
    CHECK(r5.switch_bound == 6);
    CHECK(r5.length == 16);
    CHECK(r5.s == doctest::Approx(r5.switch_target * std::log(3.0 * 16 * 2 / r5.switch_target) +
                                  2 * std::log(2.0)));
    CHECK(r5.params.eta == doctest::Approx(std::sqrt(r5.s / 32) / 5));
    CHECK(r5.params.gamma == doctest::Approx(std::min(0.5, std::sqrt(2 * r5.s / 32))));
    CHECK(rexp3p_pull(SwitchBudgetSchedule::constant(0), 1, 2).switch_target == 0.0);
    // The cap 2^(r-1) - 1 binds for generous schedules.
    CHECK(rexp3p_pull(SwitchBudgetSchedule::linear(0.9), 4, 2).switch_target == 7.0);
  }

  TEST_CASE("Rexp3P pull boundaries") {
    CHECK(pull_of_round(1) == 1);
    CHECK(pull_of_round(2) == 2);
    CHECK(pull_of_round(3) == 2);
    CHECK(pull_of_round(4) == 3);
    CHECK(pull_of_round(7) == 3);
    CHECK(pull_of_round(8) == 4);
    for (int r = 1; r < 20; ++r) {
      CHECK(pull_of_round(pull_start(r) + pull_length(r) - 1) == r);
      CHECK(pull_of_round(pull_start(r) + pull_length(r)) == r + 1);
    }
  }

  TEST_CASE("Rexp3P first round is uniform") {
    Rexp3P s(3, SwitchBudgetSchedule::power(1, 0.5), 1.0, 9);
    s.act();
    for (double x : s.distribution()) CHECK(x == doctest::Approx(1.0 / 3));
    CHECK(s.current_pull() == 1);
  }

  TEST_CASE("property: Rexp3P forgets everything at a pull boundary") {
    const auto schedule = SwitchBudgetSchedule::power(1, 1.0 / 3);
    for (int boundary_pull : {2, 3, 5}) {
      const std::int64_t before = pull_start(boundary_pull + 1) - 1;
      Rexp3P a(2, schedule, 1.0, 77);
      Rexp3P b(2, schedule, 1.0, 77);
      std::mt19937_64 ga(1);
      std::mt19937_64 gb(2);
      drive(a, before, ga);
      drive(b, before, gb);
      for (std::int64_t t = 0; t < 40; ++t) {
        const int xa = a.act();
        const int xb = b.act();
        CHECK(xa == xb);
        const auto pa = a.distribution();
        const auto pb = b.distribution();
        CHECK(std::equal(pa.begin(), pa.end(), pb.begin(), pb.end()));
        const double payoff = (xa + t) % 3 == 0 ? 1.0 : 0.25;
        a.observe(xa, payoff);
        b.observe(xb, payoff);
      }
    }
  }

  TEST_CASE("property: Rexp3P distributions are valid") {
    std::mt19937_64 gen(31);
    Rexp3P s(4, SwitchBudgetSchedule::power(1, 0.25), 1.0, 4);
    drive(s, 3000, gen);
  }

  TEST_CASE("restart batch lengths") {
    const RestartPull r7 = restart_pull(SwitchBudgetSchedule::constant(3), 7, 0.5);
    CHECK(r7.length == 64);
    CHECK(r7.switch_target == 4.0);
    CHECK(r7.batch_length == 7);
    const RestartPull full = restart_pull(SwitchBudgetSchedule::constant(1000), 3, 0.5);
    CHECK(full.switch_target == 4.0);
    CHECK(full.batch_length == 1);
    for (int r = 1; r < 12; ++r) {
      const RestartPull z = restart_pull(SwitchBudgetSchedule::constant(0), r, 0.5);
      CHECK(z.switch_target == 1.0);
      CHECK(z.batch_length ==
            static_cast<std::int64_t>(std::ceil(std::pow(std::ldexp(1.0, r - 1), 1 / 1.5))));
    }
  }

  TEST_CASE("restart times follow the batches of each pull") {
    const auto schedule = SwitchBudgetSchedule::constant(3);
    const std::vector<std::int64_t> times = restart_times(schedule, 0.5, 127);
    REQUIRE_FALSE(times.empty());
    CHECK(times.front() == 1);
    std::int64_t expected_count = 0;
    for (int r = 1; r <= 7; ++r) {
      const RestartPull p = restart_pull(schedule, r, 0.5);
      expected_count += (p.length + p.batch_length - 1) / p.batch_length;
    }
    CHECK(static_cast<std::int64_t>(times.size()) == expected_count);
    // Pull 7 (rounds 64..127) restarts at 64, 71, 78, ...
    CHECK(std::find(times.begin(), times.end(), 64) != times.end());
    CHECK(std::find(times.begin(), times.end(), 71) != times.end());
  }

  TEST_CASE("restart wrapper rebuilds its base at every batch") {
    const auto schedule = SwitchBudgetSchedule::constant(3);
    const StrategyContext ctx = context(2, 127, 5);
    RestartWrapper w(exp3p_factory(0), ctx, schedule, RestartOptions{});
    std::mt19937_64 gen(8);
    drive(w, 127, gen);
    CHECK(w.restarts() == static_cast<std::int64_t>(restart_times(schedule, 0.5, 127).size()));
    CHECK_THROWS_AS(RestartWrapper(exp3p_factory(0), ctx, schedule, RestartOptions{1.5, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RestartWrapper(exp3p_factory(0), ctx, schedule, RestartOptions{0.5, 0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RestartWrapper(exp3p_factory(0), ctx, schedule, RestartOptions{0.5, 1, 0.5}),
                    std::invalid_argument);
  }

  TEST_CASE("trigger cycles") {
    const Game g = oracle::pricing_game();
    const ActionProfile hh{{kHigh, kHigh}};
    const ActionProfile ll{{kLow, kLow}};
    const std::vector<ProfileMass> third = {{hh, 1.0 / 3}, {ll, 2.0 / 3}};
    const TriggerPlan p = trigger_build(g, third);
    CHECK(p.denominator == 3);
    CHECK(p.cycle == std::vector<std::size_t>{g.profile_index(hh), g.profile_index(ll),
                                              g.profile_index(ll)});
    const std::vector<ProfileMass> dirac = {{hh, 1.0}};
    CHECK(trigger_build(g, dirac).cycle == std::vector<std::size_t>{g.profile_index(hh)});
    const std::vector<ProfileMass> tenths = {{hh, 0.7}, {ll, 0.3}};
    const TriggerPlan t = trigger_build(g, tenths);
    CHECK(t.denominator == 10);
    CHECK(t.cycle.size() == 10);
    CHECK(t.counts == std::vector<std::int64_t>{7, 3});
    const std::vector<ProfileMass> irrational = {{hh, 1 / M_PI}, {ll, 1 - 1 / M_PI}};
    CHECK_THROWS(trigger_build(g, irrational));
    const TriggerPlan approx = trigger_build(g, irrational, 1e-6);
    CHECK(approx.l1_error <= 1e-6);
    CHECK(static_cast<std::int64_t>(approx.cycle.size()) == approx.denominator);
  }

  TEST_CASE("property: trigger cycle frequencies equal the rationalized masses") {
    const Game g({2, 3}, std::vector<std::vector<double>>(2, std::vector<double>(6, 0.0)), 1.0);
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<ProfileMass> target;
      std::vector<std::int64_t> weights;
      std::int64_t total = 0;
      for (std::size_t a = 0; a < g.num_profiles(); ++a) {
        const std::int64_t w = static_cast<std::int64_t>(gen() % 4);
        if (w == 0) continue;
        weights.push_back(w);
        total += w;
        target.push_back({g.profile_at(a), 0.0});
      }
      if (target.empty()) continue;
      for (std::size_t s = 0; s < target.size(); ++s) {
        target[s].mass = static_cast<double>(weights[s]) / static_cast<double>(total);
      }
      const TriggerPlan p = trigger_build(g, target);
      const JointDistribution rat = p.rationalized_target(g);
      for (std::size_t s = 0; s < target.size(); ++s) {
        const std::size_t idx = g.profile_index(target[s].profile);
        const auto hits = std::count(p.cycle.begin(), p.cycle.end(), idx);
        CHECK(hits * total == weights[s] * p.denominator);
        CHECK(rat[idx] == doctest::Approx(target[s].mass).epsilon(1e-15));
      }
    }
  }

  TEST_CASE("trigger detects the first mismatched payoff and never reverts") {
    const Game g = oracle::pricing_game();
    const std::vector<ProfileMass> target = {{ActionProfile{{kHigh, kHigh}}, 1.0 / 3},
                                             {ActionProfile{{kLow, kLow}}, 2.0 / 3}};
    auto plan = std::make_shared<const TriggerPlan>(trigger_build(g, target));
    const Game& inj = *plan->injective_game;
    StrategyContext ctx = context(2, 100, 12, &inj, 0);
    TriggerStrategy s(plan, ctx, rexp3p_factory(SwitchBudgetSchedule::constant(0)));
    for (std::int64_t t = 1; t <= 20; ++t) {
      const int a = s.act();
      const std::size_t planned = plan->profile_at_round(t);
      if (t <= 9) CHECK(a == g.action_of(planned, 0));
      std::size_t realized = planned;
      if (t == 9) realized = g.with_action(planned, 1, 1 - g.action_of(planned, 1));
      s.observe(a, inj.payoff(0, realized));
      if (t < 9) CHECK(s.cooperating());
    }
    CHECK_FALSE(s.cooperating());
    REQUIRE(s.defection_time().has_value());
    CHECK(*s.defection_time() == 9);
    REQUIRE(s.fallback() != nullptr);
    const StrategyContext fb = s.fallback_context(9);
    CHECK(fb.horizon == 91);
    CHECK(fb.seed == trigger_fallback_seed(12));
  }

  TEST_CASE("adversary schedule pattern") {
    const Game g = normalized_unit(oracle::pricing_game());
    AdversaryOptions o;
    o.segment = 6;
    o.p = 0.5;
    o.alpha = 0.5;
    o.a1 = kHigh;
    o.a2 = kLow;
    CHECK(adversary_fixed_rounds(o) == 5);
    AdversaryStrategy adv(o, context(2, 60, 4, &g, 1));
    int mixed_low = 0;
    for (std::int64_t t = 1; t <= 600; ++t) {
      const int a = adv.act();
      if (t % 6 != 0) {
        CHECK(a == kHigh);
        CHECK(adv.distribution()[kHigh] == 1.0);
      } else {
        CHECK(adv.distribution()[kHigh] == 0.5);
        mixed_low += a == kLow;
      }
      adv.observe(a, 0.0);
    }
    CHECK(mixed_low > 25);
    CHECK(mixed_low < 75);
    AdversaryOptions bad = o;
    bad.segment = 5;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = o;
    bad.a2 = bad.a1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  }

  TEST_CASE("adversary schedule collapses to a1 as p approaches 1") {
    AdversaryOptions o;
    o.a1 = kHigh;
    o.a2 = kLow;
    o.p = 1 - 1e-12;
    const Game g = oracle::pricing_game();
    AdversaryStrategy adv(o, context(2, 600, 4, &g, 1));
    for (int t = 0; t < 600; ++t) {
      CHECK(adv.act() == kHigh);
      adv.observe(kHigh, 0.0);
    }
  }

  TEST_CASE("adversary gap on the raw pricing game") {
    const AdversaryGap gap = adversary_gap(oracle::pricing_game(), 0, kHigh, kLow, 0.5);
    CHECK(gap.delta1 == 0.0);
    CHECK(gap.delta2 == 1.0);
    CHECK(gap.best_mixed == kHigh);
    CHECK(gap.delta == 0.5);
  }

  TEST_CASE("piecewise opponent changes at equally spaced rounds") {
    const Game g = oracle::pricing_game();
    auto s = piecewise_factory({kHigh, kLow}, 2)(context(2, 9, 0, &g, 1));
    std::vector<int> played;
    for (int t = 0; t < 9; ++t) {
      played.push_back(s->act());
      s->observe(played.back(), 0.0);
    }
    CHECK(played == std::vector<int>{kHigh, kHigh, kHigh, kLow, kLow, kLow, kHigh, kHigh, kHigh});
    CHECK(ceil_power(1000, 1.0 / 3) == 10);
    CHECK(ceil_power(1024, 1.0 / 3) == 11);
  }

  TEST_CASE("scripted opponent replays actions with deviations") {
    ScriptOptions o;
    o.actions = {kHigh, kLow, kLow};
    o.deviations[4] = kLow;
    ScriptedStrategy s(o, 2);
    std::vector<int> played;
    for (int t = 0; t < 6; ++t) {
      played.push_back(s.act());
      s.observe(played.back(), 0.0);
    }
    CHECK(played == std::vector<int>{kHigh, kLow, kLow, kLow, kLow, kLow});
  }

  TEST_CASE("property: bandit isolation and seed determinism") {
    // A payoff-only interface: identical own payoffs imply identical play.
    for (const auto& factory :
         {exp3p_factory(2), rexp3p_factory(SwitchBudgetSchedule::power(1, 0.5)),
          restart_factory(exp3p_factory(0), SwitchBudgetSchedule::power(1, 0.5))}) {
      auto a = factory(context(3, 400, 21));
      auto b = factory(context(3, 400, 21));
      auto c = factory(context(3, 400, 22));
      int differ = 0;
      for (int t = 0; t < 400; ++t) {
        const int xa = a->act();
        const int xb = b->act();
        const int xc = c->act();
        CHECK(xa == xb);
        differ += xa != xc;
        a->observe(xa, xa == 2 ? 0.9 : 0.1);
        b->observe(xb, xb == 2 ? 0.9 : 0.1);
        c->observe(xc, xc == 2 ? 0.9 : 0.1);
      }
      CHECK(differ > 0);
    }
  }

  TEST_CASE("seed derivation") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(5, 9) == derive_seed(5, 9));
    Rng r(3);
    for (int i = 0; i < 1000; ++i) {
      const double u = r.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
  }
}

}  // namespace
}  // namespace benchdyn
