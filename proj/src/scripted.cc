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

#include "benchdyn/scripted.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace benchdyn {
namespace {

void set_point_mass(std::vector<double>& dist, int action) {
  std::fill(dist.begin(), dist.end(), 0.0);
  dist[action] = 1.0;
}

void check_action(int action, int num_actions) {
  if (action < 0 || action >= num_actions) {
    throw std::invalid_argument("scripted action out of range");
  }
}

}  // namespace

void validate(const AdversaryOptions& o) {
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (!(o.p > 0.0 && o.p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
  if (static_cast<double>(o.segment) * o.alpha < 3.0) {
    throw std::invalid_argument("segment length d must be >= 3/alpha");
  }
  if (o.a1 == o.a2) throw std::invalid_argument("a1 and a2 must differ");
}

std::int64_t adversary_fixed_rounds(const AdversaryOptions& o) {
  const auto mixed = static_cast<std::int64_t>(std::floor(o.alpha * static_cast<double>(o.segment)));
  return o.segment - mixed + 2;
}

std::int64_t adversary_switch_bound(const AdversaryOptions& o, std::int64_t horizon) {
  const auto mixed = static_cast<std::int64_t>(std::floor(o.alpha * static_cast<double>(o.segment)));
  const std::int64_t segments = (horizon + o.segment - 1) / o.segment;
  return segments * (mixed - 1);
}

AdversaryGap adversary_gap(const Game& game, int subject, std::size_t a1_opponents,
                           std::size_t a2_opponents, double p) {
  if (a1_opponents == a2_opponents) throw std::invalid_argument("a1 and a2 must differ");
  const int k_count = game.num_actions(subject);
  auto u = [&](int x, std::size_t opp) {
    return game.payoff(subject, game.compose(subject, x, opp));
  };
  AdversaryGap gap;
  double best_mixed = -INFINITY;
  double best1 = -INFINITY;
  double best2 = -INFINITY;
  for (int x = 0; x < k_count; ++x) {
    const double mixed = p * u(x, a1_opponents) + (1.0 - p) * u(x, a2_opponents);
    if (mixed > best_mixed) {
      best_mixed = mixed;
      gap.best_mixed = x;
    }
    best1 = std::max(best1, u(x, a1_opponents));
    best2 = std::max(best2, u(x, a2_opponents));
  }
  gap.delta1 = best1 - u(gap.best_mixed, a1_opponents);
  gap.delta2 = best2 - u(gap.best_mixed, a2_opponents);
  gap.delta = p * gap.delta1 + (1.0 - p) * gap.delta2;
  return gap;
}

AdversaryStrategy::AdversaryStrategy(const AdversaryOptions& options,
                                     const StrategyContext& ctx)
    : options_(options),
      fixed_rounds_(adversary_fixed_rounds(options)),
      coin_(derive_seed(ctx.match_seed, 0xad7e5a11ULL)),
      dist_(ctx.num_actions, 0.0) {
  validate(options_);
  check_action(options_.a1, ctx.num_actions);
  check_action(options_.a2, ctx.num_actions);
  dist_[options_.a1] = 1.0;
}

int AdversaryStrategy::act() {
  ++round_;
  const std::int64_t position = (round_ - 1) % options_.segment;
  if (position < fixed_rounds_) {
    set_point_mass(dist_, options_.a1);
    return options_.a1;
  }
  std::fill(dist_.begin(), dist_.end(), 0.0);
  dist_[options_.a1] = options_.p;
  dist_[options_.a2] = 1.0 - options_.p;
  return coin_.uniform() < options_.p ? options_.a1 : options_.a2;
}

StrategyFactory adversary_factory(const AdversaryOptions& options) {
  validate(options);
  return [options](const StrategyContext& ctx) -> std::unique_ptr<Strategy> {
    return std::make_unique<AdversaryStrategy>(options, ctx);
  };
}

PiecewiseConstantStrategy::PiecewiseConstantStrategy(std::vector<int> actions,
                                                     std::int64_t changes,
                                                     std::int64_t horizon,
                                                     int num_actions)
    : actions_(std::move(actions)), dist_(num_actions, 0.0) {
  if (actions_.empty()) throw std::invalid_argument("piecewise opponent needs actions");
  for (int a : actions_) check_action(a, num_actions);
  if (changes < 0) throw std::invalid_argument("number of changes must be >= 0");
  if (horizon < 1) throw std::invalid_argument("piecewise opponent needs a horizon");
  for (std::int64_t j = 1; j <= changes; ++j) {
    change_rounds_.push_back(j * horizon / (changes + 1) + 1);
  }
  dist_[actions_.front()] = 1.0;
}

int PiecewiseConstantStrategy::act() {
  ++round_;
  while (segment_ < change_rounds_.size() && round_ >= change_rounds_[segment_]) ++segment_;
  const int action = actions_[segment_ % actions_.size()];
  set_point_mass(dist_, action);
  return action;
}

std::int64_t ceil_power(std::int64_t horizon, double exponent) {
  auto value = static_cast<std::int64_t>(
      std::ceil(std::pow(static_cast<double>(horizon), exponent) - 1e-9));
  return std::max<std::int64_t>(value, 0);
}

StrategyFactory piecewise_factory(std::vector<int> actions, std::int64_t changes,
                                  double changes_exponent, std::int64_t horizon) {
  return [actions = std::move(actions), changes, changes_exponent,
          horizon](const StrategyContext& ctx) -> std::unique_ptr<Strategy> {
    const std::int64_t t = horizon > 0 ? horizon : ctx.horizon;
    const std::int64_t n = changes >= 0 ? changes : ceil_power(t, changes_exponent);
    return std::make_unique<PiecewiseConstantStrategy>(actions, n, t, ctx.num_actions);
  };
}

ScriptedStrategy::ScriptedStrategy(ScriptOptions options, int num_actions)
    : options_(std::move(options)), dist_(num_actions, 0.0) {
  if (options_.actions.empty()) throw std::invalid_argument("scripted opponent needs actions");
  for (int a : options_.actions) check_action(a, num_actions);
  for (const auto& [t, a] : options_.deviations) {
    if (t < 1) throw std::invalid_argument("deviation rounds are 1-based");
    check_action(a, num_actions);
  }
  dist_[options_.actions.front()] = 1.0;
}

int ScriptedStrategy::act() {
  ++round_;
  int action;
  if (auto it = options_.deviations.find(round_); it != options_.deviations.end()) {
    action = it->second;
  } else if (options_.copy_player && copied_) {
    action = *copied_;
  } else {
    action = options_.actions[static_cast<std::size_t>(
        (round_ - 1) % static_cast<std::int64_t>(options_.actions.size()))];
  }
  set_point_mass(dist_, action);
  return action;
}

void ScriptedStrategy::observe_profile(const ActionProfile& profile) {
  if (!options_.copy_player) return;
  const int copied = profile[static_cast<std::size_t>(*options_.copy_player)];
  // Sticks to the own range; mismatched action counts wrap around.
  copied_ = copied % num_actions();
}

StrategyFactory scripted_factory(ScriptOptions options) {
  return [options = std::move(options)](const StrategyContext& ctx) -> std::unique_ptr<Strategy> {
    return std::make_unique<ScriptedStrategy>(options, ctx.num_actions);
  };
}

StrategyFactory uniform_factory() {
  return [](const StrategyContext& ctx) -> std::unique_ptr<Strategy> {
    return std::make_unique<UniformStrategy>(ctx.num_actions, ctx.seed);
  };
}

}  // namespace benchdyn
