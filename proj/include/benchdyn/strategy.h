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

#ifndef BENCHDYN_STRATEGY_H_
#define BENCHDYN_STRATEGY_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "benchdyn/game.h"

namespace benchdyn {

// A per-player decision rule under bandit feedback. Each instance keeps its
// own clock: the n-th call to act() chooses the action of its n-th round,
// and must be followed by exactly one observe() with the realized own
// payoff. Instances are single-owner and never shared across threads.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual int act() = 0;
  virtual void observe(int action, double payoff) = 0;

  // Sampling distribution used by the most recent act(); before the first
  // act() the distribution the first act() will use.
  virtual std::span<const double> distribution() const = 0;
  virtual int num_actions() const = 0;
  virtual std::string name() const = 0;

  // Scripted opponents realizing contingent plans may read full profiles.
  // Learning strategies never do.
  virtual bool reads_profiles() const { return false; }
  virtual void observe_profile(const ActionProfile& /*profile*/) {}

  virtual std::optional<std::int64_t> defection_time() const { return std::nullopt; }
};

// What a factory knows when it builds a strategy for one seat of a match.
struct StrategyContext {
  int player = 0;
  int num_actions = 2;
  // Rounds the instance will play (for horizon-tuned kinds); may be shorter
  // than the match when the instance is a restart batch or a fallback.
  std::int64_t horizon = 1;
  std::uint64_t seed = 0;
  // Seed shared by all seats of the match (for correlated scripted play).
  std::uint64_t match_seed = 0;
  // Game whose payoffs the instance will receive.
  const Game* game = nullptr;
  double payoff_bound = 1.0;
};

using StrategyFactory =
    std::function<std::unique_ptr<Strategy>(const StrategyContext&)>;

}  // namespace benchdyn

#endif  // BENCHDYN_STRATEGY_H_
