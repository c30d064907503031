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

#ifndef BENCHDYN_REXP3P_H_
#define BENCHDYN_REXP3P_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "benchdyn/exp3p.h"
#include "benchdyn/switch_budget.h"

namespace benchdyn {

// Pull r covers rounds [2^(r-1), 2^r - 1].
inline std::int64_t pull_start(int r) { return std::int64_t{1} << (r - 1); }
inline std::int64_t pull_length(int r) { return std::int64_t{1} << (r - 1); }
// Index of the pull containing round t >= 1.
int pull_of_round(std::int64_t t);

struct Rexp3PPull {
  int index = 1;
  std::int64_t length = 1;
  // min(C_{2^r - 1} + 1, 2^(r-1) - 1).
  double switch_target = 0.0;
  // switch_target ln(3 2^(r-1) K / switch_target) + 2 ln K.
  double s = 0.0;
  // floor(switch_target), the integer switch bound the pull competes with.
  std::int64_t switch_bound = 0;
  Exp3PParams params;  // meaningless for r = 1
};

Rexp3PPull rexp3p_pull(const SwitchBudgetSchedule& schedule, int r, int num_actions);

// Exp3P restarted on doubling pulls, each retuned to the switch budget the
// schedule grants at the pull's end. Round 1 is uniform. Anytime.
class Rexp3P : public Strategy {
 public:
  Rexp3P(int num_actions, SwitchBudgetSchedule schedule, double payoff_bound,
         std::uint64_t seed);

  int act() override;
  void observe(int action, double payoff) override;
  std::span<const double> distribution() const override;
  int num_actions() const override { return num_actions_; }
  std::string name() const override { return "rexp3p"; }

  int current_pull() const { return pull_; }

 private:
  int num_actions_;
  SwitchBudgetSchedule schedule_;
  double payoff_bound_;
  std::uint64_t seed_;
  std::int64_t round_ = 0;
  int pull_ = 0;
  std::unique_ptr<Exp3P> inner_;
  Rng first_round_rng_;
  std::vector<double> uniform_;
};

StrategyFactory rexp3p_factory(SwitchBudgetSchedule schedule);

}  // namespace benchdyn

#endif  // BENCHDYN_REXP3P_H_
