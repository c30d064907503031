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

#include "benchdyn/rexp3p.h"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace benchdyn {

int pull_of_round(std::int64_t t) {
  if (t < 1) throw std::invalid_argument("rounds are 1-based");
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(t)));
}

Rexp3PPull rexp3p_pull(const SwitchBudgetSchedule& schedule, int r, int num_actions) {
  if (r < 1 || r > 62) throw std::invalid_argument("pull index out of range");
  Rexp3PPull pull;
  pull.index = r;
  pull.length = pull_length(r);
  const double end_budget = schedule.evaluate((std::int64_t{1} << r) - 1);
  pull.switch_target = std::min(end_budget + 1.0, static_cast<double>(pull.length - 1));
  const double k = num_actions;
  const double tracking =
      pull.switch_target > 0.0
          ? pull.switch_target *
                std::log(3.0 * static_cast<double>(pull.length) * k / pull.switch_target)
          : 0.0;
  pull.s = tracking + 2.0 * std::log(k);
  pull.switch_bound = static_cast<std::int64_t>(std::floor(pull.switch_target));
  pull.params = exp3p_params_from_s(num_actions, pull.length, pull.s);
  pull.params.switch_bound = pull.switch_bound;
  return pull;
}

Rexp3P::Rexp3P(int num_actions, SwitchBudgetSchedule schedule, double payoff_bound,
               std::uint64_t seed)
    : num_actions_(num_actions),
      schedule_(schedule),
      payoff_bound_(payoff_bound),
      seed_(seed),
      first_round_rng_(derive_seed(seed, 1)),
      uniform_(num_actions, 1.0 / num_actions) {
  if (num_actions < 2) throw std::invalid_argument("Rexp3P needs K >= 2");
}

int Rexp3P::act() {
  ++round_;
  const int r = pull_of_round(round_);
  if (r != pull_) {
    pull_ = r;
    inner_.reset();
    if (r >= 2) {
      // Fresh learner and fresh stream: nothing crosses a pull boundary.
      inner_ = std::make_unique<Exp3P>(num_actions_,
                                       rexp3p_pull(schedule_, r, num_actions_).params,
                                       payoff_bound_, derive_seed(seed_, r));
    }
  }
  if (!inner_) return first_round_rng_.categorical(uniform_);
  return inner_->act();
}

void Rexp3P::observe(int action, double payoff) {
  if (inner_) {
    inner_->observe(action, payoff);
  } else if (!(std::abs(payoff) <= payoff_bound_ * (1.0 + 1e-12))) {
    throw std::out_of_range("payoff outside [-M, M]");
  }
}

std::span<const double> Rexp3P::distribution() const {
  if (inner_) return inner_->distribution();
  return uniform_;
}

StrategyFactory rexp3p_factory(SwitchBudgetSchedule schedule) {
  return [schedule](const StrategyContext& ctx) -> std::unique_ptr<Strategy> {
    return std::make_unique<Rexp3P>(ctx.num_actions, schedule, ctx.payoff_bound,
                                    ctx.seed);
  };
}

}  // namespace benchdyn
