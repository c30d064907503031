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

#include "benchdyn/restart.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "benchdyn/rexp3p.h"
#include "benchdyn/rng.h"

namespace benchdyn {
namespace {

void validate(const RestartOptions& o) {
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (!(o.beta_exp > 0.0 && o.beta_exp <= 1.0)) {
    throw std::invalid_argument("beta exponent must lie in (0,1]");
  }
  if (!(o.k >= 1.0)) throw std::invalid_argument("bound constant k must be >= 1");
}

}  // namespace

RestartPull restart_pull(const SwitchBudgetSchedule& schedule, int r, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  if (r < 1 || r > 62) throw std::invalid_argument("pull index out of range");
  RestartPull pull;
  pull.index = r;
  pull.length = pull_length(r);
  const double end_budget = schedule.evaluate((std::int64_t{1} << r) - 1);
  pull.switch_target = std::min(end_budget + 1.0, static_cast<double>(pull.length));
  const double ratio = static_cast<double>(pull.length) / pull.switch_target;
  pull.batch_length = static_cast<std::int64_t>(std::ceil(std::pow(ratio, 1.0 / (2.0 - alpha))));
  pull.batch_length = std::clamp<std::int64_t>(pull.batch_length, 1, pull.length);
  return pull;
}

std::vector<std::int64_t> restart_times(const SwitchBudgetSchedule& schedule,
                                        double alpha, std::int64_t horizon) {
  std::vector<std::int64_t> out;
  for (int r = 1; pull_start(r) <= horizon; ++r) {
    const RestartPull pull = restart_pull(schedule, r, alpha);
    for (std::int64_t offset = 0; offset < pull.length; offset += pull.batch_length) {
      const std::int64_t t = pull_start(r) + offset;
      if (t > horizon) break;
      out.push_back(t);
    }
  }
  return out;
}

RestartWrapper::RestartWrapper(StrategyFactory base, const StrategyContext& ctx,
                               SwitchBudgetSchedule schedule, RestartOptions options)
    : base_(std::move(base)),
      ctx_(ctx),
      schedule_(schedule),
      options_(options),
      uniform_(ctx.num_actions, 1.0 / ctx.num_actions) {
  validate(options_);
  StrategyContext probe = ctx_;
  probe.horizon = 1;
  base_name_ = base_(probe)->name();
}

int RestartWrapper::act() {
  ++round_;
  const int r = pull_of_round(round_);
  if (r != pull_) {
    pull_ = r;
    plan_ = restart_pull(schedule_, r, options_.alpha);
  }
  const std::int64_t offset = round_ - pull_start(r);
  if (offset % plan_.batch_length == 0) {
    StrategyContext batch = ctx_;
    batch.horizon = std::min(plan_.batch_length, plan_.length - offset);
    batch.seed = derive_seed(ctx_.seed, static_cast<std::uint64_t>(restarts_));
    current_ = base_(batch);
    ++restarts_;
  }
  return current_->act();
}

void RestartWrapper::observe(int action, double payoff) {
  if (!current_) throw std::logic_error("observe() without act()");
  current_->observe(action, payoff);
}

std::span<const double> RestartWrapper::distribution() const {
  if (current_) return current_->distribution();
  return uniform_;
}

StrategyFactory restart_factory(StrategyFactory base, SwitchBudgetSchedule schedule,
                                RestartOptions options) {
  validate(options);
  return [base = std::move(base), schedule, options](
             const StrategyContext& ctx) -> std::unique_ptr<Strategy> {
    return std::make_unique<RestartWrapper>(base, ctx, schedule, options);
  };
}

}  // namespace benchdyn
