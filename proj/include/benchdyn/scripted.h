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

#ifndef BENCHDYN_SCRIPTED_H_
#define BENCHDYN_SCRIPTED_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "benchdyn/game.h"
#include "benchdyn/rng.h"
#include "benchdyn/strategy.h"

namespace benchdyn {

// Segmented lower-bound opponent. Within each length-d segment a seat plays
// a1 for d - floor(alpha d) + 2 rounds, then a1 with probability p and a2
// otherwise. All seats of a match draw the same coins, so the opponents'
// sub-profile is either all-a1 or all-a2 in every round.
struct AdversaryOptions {
  std::int64_t segment = 6;
  double p = 0.5;
  double alpha = 0.5;
  int a1 = 0;
  int a2 = 1;
};

void validate(const AdversaryOptions& options);

// Rounds per segment played deterministically as a1.
std::int64_t adversary_fixed_rounds(const AdversaryOptions& options);
// ceil(T/d) (floor(alpha d) - 1).
std::int64_t adversary_switch_bound(const AdversaryOptions& options, std::int64_t horizon);

// Per-mixed-round regret of the subject against the adversary's coin:
// a_star maximizes p u(., a1) + (1-p) u(., a2) (lowest index on ties);
// delta_k = max_x u(x, a_k) - u(a_star, a_k); delta = p delta1 + (1-p) delta2.
struct AdversaryGap {
  double delta1 = 0.0;
  double delta2 = 0.0;
  int best_mixed = 0;
  double delta = 0.0;
};

AdversaryGap adversary_gap(const Game& game, int subject, std::size_t a1_opponents,
                           std::size_t a2_opponents, double p);

class AdversaryStrategy : public Strategy {
 public:
  AdversaryStrategy(const AdversaryOptions& options, const StrategyContext& ctx);

  int act() override;
  void observe(int /*action*/, double /*payoff*/) override {}
  std::span<const double> distribution() const override { return dist_; }
  int num_actions() const override { return static_cast<int>(dist_.size()); }
  std::string name() const override { return "adversary"; }

 private:
  AdversaryOptions options_;
  std::int64_t fixed_rounds_;
  Rng coin_;
  std::int64_t round_ = 0;
  std::vector<double> dist_;
};

StrategyFactory adversary_factory(const AdversaryOptions& options);

// Cycles through `actions`, changing exactly `changes` times at equally
// spaced rounds over the horizon: the change j (1-based) happens at round
// floor(j T / (changes + 1)) + 1.
class PiecewiseConstantStrategy : public Strategy {
 public:
  PiecewiseConstantStrategy(std::vector<int> actions, std::int64_t changes,
                            std::int64_t horizon, int num_actions);

  int act() override;
  void observe(int /*action*/, double /*payoff*/) override {}
  std::span<const double> distribution() const override { return dist_; }
  int num_actions() const override { return static_cast<int>(dist_.size()); }
  std::string name() const override { return "piecewise"; }

 private:
  std::vector<int> actions_;
  std::vector<std::int64_t> change_rounds_;
  std::size_t segment_ = 0;
  std::int64_t round_ = 0;
  std::vector<double> dist_;
};

// ceil(T^exponent), exact for perfect powers.
std::int64_t ceil_power(std::int64_t horizon, double exponent);

// `changes` < 0 means ceil(T^changes_exponent) with T the seat's horizon.
StrategyFactory piecewise_factory(std::vector<int> actions, std::int64_t changes,
                                  double changes_exponent = 0.0,
                                  std::int64_t horizon = 0);

// Plays a fixed action script (cycled), overridden at listed rounds. With
// `copy_player` set it instead repeats that player's previous action (a
// contingent plan reading the profile history) and uses the script only
// in round 1 and at deviation rounds.
struct ScriptOptions {
  std::vector<int> actions;
  std::map<std::int64_t, int> deviations;
  std::optional<int> copy_player;
};

class ScriptedStrategy : public Strategy {
 public:
  ScriptedStrategy(ScriptOptions options, int num_actions);

  int act() override;
  void observe(int /*action*/, double /*payoff*/) override {}
  std::span<const double> distribution() const override { return dist_; }
  int num_actions() const override { return static_cast<int>(dist_.size()); }
  std::string name() const override { return "scripted"; }
  bool reads_profiles() const override { return options_.copy_player.has_value(); }
  void observe_profile(const ActionProfile& profile) override;

 private:
  ScriptOptions options_;
  std::int64_t round_ = 0;
  std::optional<int> copied_;
  std::vector<double> dist_;
};

StrategyFactory scripted_factory(ScriptOptions options);

class UniformStrategy : public Strategy {
 public:
  UniformStrategy(int num_actions, std::uint64_t seed)
      : rng_(seed), dist_(num_actions, 1.0 / num_actions) {}

  int act() override { return rng_.uniform_int(num_actions()); }
  void observe(int /*action*/, double /*payoff*/) override {}
  std::span<const double> distribution() const override { return dist_; }
  int num_actions() const override { return static_cast<int>(dist_.size()); }
  std::string name() const override { return "uniform"; }

 private:
  Rng rng_;
  std::vector<double> dist_;
};

StrategyFactory uniform_factory();

}  // namespace benchdyn

#endif  // BENCHDYN_SCRIPTED_H_
