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

#ifndef BENCHDYN_TRIGGER_H_
#define BENCHDYN_TRIGGER_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "benchdyn/game.h"
#include "benchdyn/strategy.h"

namespace benchdyn {

// Cooperative schedule shared by every trigger player aiming at one target.
struct TriggerPlan {
  // Support in the order given, with masses counts[s] / denominator.
  std::vector<ProfileMass> support;
  std::vector<std::int64_t> counts;
  std::int64_t denominator = 1;
  double l1_error = 0.0;
  // Profile index played at cycle position c; length == denominator.
  std::vector<std::size_t> cycle;
  // Payoffs the players receive; detection compares against it.
  std::shared_ptr<const Game> injective_game;

  std::size_t profile_at_round(std::int64_t t) const {
    return cycle[static_cast<std::size_t>((t - 1) % static_cast<std::int64_t>(cycle.size()))];
  }
  JointDistribution rationalized_target(const Game& game) const;
};

// Masses must be exact fractions (denominator <= 10^6) when epsilon == 0;
// otherwise they are approximated within L1 distance epsilon. Support
// entries of zero rationalized mass are dropped from the cycle.
TriggerPlan trigger_build(const Game& game, std::span<const ProfileMass> target,
                          double epsilon = 0.0);
TriggerPlan trigger_build(const Game& game, const JointDistribution& target,
                          double epsilon = 0.0);

// Seed of the fallback instance a trigger player seeded with `seed` builds.
std::uint64_t trigger_fallback_seed(std::uint64_t seed);

class TriggerStrategy : public Strategy {
 public:
  TriggerStrategy(std::shared_ptr<const TriggerPlan> plan, const StrategyContext& ctx,
                  StrategyFactory fallback, double tolerance = 0.0);

  int act() override;
  void observe(int action, double payoff) override;
  std::span<const double> distribution() const override;
  int num_actions() const override { return ctx_.num_actions; }
  std::string name() const override { return "trigger"; }
  std::optional<std::int64_t> defection_time() const override { return defection_; }

  bool cooperating() const { return !defection_.has_value(); }
  // Context the fallback was (or will be) built from after a deviation
  // detected at `detected_at`.
  StrategyContext fallback_context(std::int64_t detected_at) const;
  const Strategy* fallback() const { return fallback_.get(); }

 private:
  std::shared_ptr<const TriggerPlan> plan_;
  StrategyContext ctx_;
  StrategyFactory fallback_factory_;
  double tolerance_;
  std::int64_t round_ = 0;
  std::optional<std::int64_t> defection_;
  std::unique_ptr<Strategy> fallback_;
  std::vector<double> point_mass_;
};

StrategyFactory trigger_factory(std::shared_ptr<const TriggerPlan> plan,
                                StrategyFactory fallback, double tolerance = 0.0);

}  // namespace benchdyn

#endif  // BENCHDYN_TRIGGER_H_
