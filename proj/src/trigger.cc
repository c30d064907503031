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

#include "benchdyn/trigger.h"

#include <cmath>
#include <stdexcept>

#include "benchdyn/rational.h"
#include "benchdyn/rng.h"

namespace benchdyn {

JointDistribution TriggerPlan::rationalized_target(const Game& game) const {
  std::vector<double> mass(game.num_profiles(), 0.0);
  std::vector<std::int64_t> count(game.num_profiles(), 0);
  for (std::size_t s = 0; s < support.size(); ++s) {
    count[game.profile_index(support[s].profile)] += counts[s];
  }
  for (std::size_t a = 0; a < mass.size(); ++a) {
    mass[a] = static_cast<double>(count[a]) / static_cast<double>(denominator);
  }
  return JointDistribution(game.action_counts(), std::move(mass));
}

TriggerPlan trigger_build(const Game& game, std::span<const ProfileMass> target,
                          double epsilon) {
  if (target.empty()) throw std::invalid_argument("trigger target has empty support");
  std::vector<double> masses;
  masses.reserve(target.size());
  for (const ProfileMass& entry : target) {
    game.profile_index(entry.profile);  // validates the profile
    masses.push_back(entry.mass);
  }
  const RationalMasses rational = rationalize_masses(masses, epsilon);

  TriggerPlan plan;
  plan.support.assign(target.begin(), target.end());
  plan.counts = rational.counts;
  plan.denominator = rational.denominator;
  plan.l1_error = rational.l1_error;
  plan.cycle.reserve(static_cast<std::size_t>(rational.denominator));
  for (std::size_t s = 0; s < target.size(); ++s) {
    const std::size_t index = game.profile_index(target[s].profile);
    for (std::int64_t c = 0; c < rational.counts[s]; ++c) plan.cycle.push_back(index);
  }
  plan.injective_game = std::make_shared<const Game>(make_injective(game));
  return plan;
}

TriggerPlan trigger_build(const Game& game, const JointDistribution& target,
                          double epsilon) {
  target.check_shape(game);
  std::vector<ProfileMass> entries;
  for (std::size_t a = 0; a < target.size(); ++a) {
    if (target[a] > 0.0) entries.push_back({game.profile_at(a), target[a]});
  }
  return trigger_build(game, entries, epsilon);
}

std::uint64_t trigger_fallback_seed(std::uint64_t seed) {
  return derive_seed(seed, 0x7f4a7c15ULL);
}

TriggerStrategy::TriggerStrategy(std::shared_ptr<const TriggerPlan> plan,
                                 const StrategyContext& ctx, StrategyFactory fallback,
                                 double tolerance)
    : plan_(std::move(plan)),
      ctx_(ctx),
      fallback_factory_(std::move(fallback)),
      tolerance_(tolerance),
      point_mass_(ctx.num_actions, 0.0) {
  if (!plan_ || plan_->cycle.empty()) throw std::invalid_argument("empty trigger plan");
  if (!(tolerance_ >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  if (ctx_.player < 0 || ctx_.player >= plan_->injective_game->num_players() ||
      plan_->injective_game->num_actions(ctx_.player) != ctx_.num_actions) {
    throw std::invalid_argument("trigger plan does not match the player's seat");
  }
  point_mass_[plan_->injective_game->action_of(plan_->cycle.front(), ctx_.player)] = 1.0;
}

StrategyContext TriggerStrategy::fallback_context(std::int64_t detected_at) const {
  StrategyContext ctx = ctx_;
  ctx.horizon = std::max<std::int64_t>(ctx_.horizon - detected_at, 1);
  ctx.seed = trigger_fallback_seed(ctx_.seed);
  return ctx;
}

int TriggerStrategy::act() {
  ++round_;
  if (fallback_) return fallback_->act();
  const int action =
      plan_->injective_game->action_of(plan_->profile_at_round(round_), ctx_.player);
  std::fill(point_mass_.begin(), point_mass_.end(), 0.0);
  point_mass_[action] = 1.0;
  return action;
}

void TriggerStrategy::observe(int action, double payoff) {
  if (fallback_) {
    fallback_->observe(action, payoff);
    return;
  }
  if (defection_) return;
  const double expected =
      plan_->injective_game->payoff(ctx_.player, plan_->profile_at_round(round_));
  if (std::abs(payoff - expected) > tolerance_) {
    // The cooperative history is discarded: the fallback starts fresh and
    // sees only rounds after the detection round.
    defection_ = round_;
    fallback_ = fallback_factory_(fallback_context(round_));
  }
}

std::span<const double> TriggerStrategy::distribution() const {
  if (fallback_ && round_ > *defection_) return fallback_->distribution();
  return point_mass_;
}

StrategyFactory trigger_factory(std::shared_ptr<const TriggerPlan> plan,
                                StrategyFactory fallback, double tolerance) {
  if (!plan) throw std::invalid_argument("null trigger plan");
  return [plan = std::move(plan), fallback = std::move(fallback),
          tolerance](const StrategyContext& ctx) -> std::unique_ptr<Strategy> {
    return std::make_unique<TriggerStrategy>(plan, ctx, fallback, tolerance);
  };
}

}  // namespace benchdyn
