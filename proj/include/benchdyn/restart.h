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

#ifndef BENCHDYN_RESTART_H_
#define BENCHDYN_RESTART_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "benchdyn/strategy.h"
#include "benchdyn/switch_budget.h"

namespace benchdyn {

// Static-regret guarantee k T^alpha ln^beta(1/delta) assumed of the base.
struct RestartOptions {
  double alpha = 0.5;
  double beta_exp = 1.0;
  double k = 1.0;
};

struct RestartPull {
  int index = 1;
  std::int64_t length = 1;
  // min(C_{2^r - 1} + 1, 2^(r-1)).
  double switch_target = 1.0;
  // ceil((2^(r-1) / switch_target)^(1 / (2 - alpha))).
  std::int64_t batch_length = 1;
};

RestartPull restart_pull(const SwitchBudgetSchedule& schedule, int r, double alpha);

// Rounds (1-based) at which the wrapped base is restarted over 1..horizon.
std::vector<std::int64_t> restart_times(const SwitchBudgetSchedule& schedule,
                                        double alpha, std::int64_t horizon);

// Restarts a fresh base instance at the start of every batch; each instance
// is tuned for the exact length of its batch and sees only its own batch.
class RestartWrapper : public Strategy {
 public:
  RestartWrapper(StrategyFactory base, const StrategyContext& ctx,
                 SwitchBudgetSchedule schedule, RestartOptions options);

  int act() override;
  void observe(int action, double payoff) override;
  std::span<const double> distribution() const override;
  int num_actions() const override { return ctx_.num_actions; }
  std::string name() const override { return "restart(" + base_name_ + ")"; }

  std::int64_t restarts() const { return restarts_; }

 private:
  StrategyFactory base_;
  StrategyContext ctx_;
  SwitchBudgetSchedule schedule_;
  RestartOptions options_;
  std::string base_name_;
  std::int64_t round_ = 0;
  int pull_ = 0;
  RestartPull plan_;
  std::int64_t restarts_ = 0;
  std::unique_ptr<Strategy> current_;
  std::vector<double> uniform_;
};

StrategyFactory restart_factory(StrategyFactory base, SwitchBudgetSchedule schedule,
                                RestartOptions options = {});

}  // namespace benchdyn

#endif  // BENCHDYN_RESTART_H_
