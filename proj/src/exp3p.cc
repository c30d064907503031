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

#include "benchdyn/exp3p.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace benchdyn {

Exp3PParams exp3p_params_from_s(int num_actions, std::int64_t horizon, double s,
                                double delta) {
  if (num_actions < 2) throw std::invalid_argument("Exp3P needs K >= 2");
  if (horizon < 1) throw std::invalid_argument("Exp3P needs T >= 1");
  if (!(s > 0.0)) throw std::invalid_argument("Exp3P needs s > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  const double k = num_actions;
  const double t = static_cast<double>(horizon);
  Exp3PParams p;
  p.s = s;
  p.horizon = horizon;
  p.delta = delta;
  // The tuned beta exceeds 1 on very short horizons; the learner's input
  // domain is [0, 1].
  p.beta = std::min(1.0, 3.0 * std::sqrt(s / (t * k)));
  p.gamma = std::min(0.5, std::sqrt(k * s / (2.0 * t)));
  p.eta = std::sqrt(s / (t * k)) / 5.0;
  p.bound = 7.0 * std::sqrt(t * k * s) + std::sqrt(t * k / s) * std::log(1.0 / delta);
  return p;
}

Exp3PParams exp3p_tune(int num_actions, std::int64_t horizon, std::int64_t switches,
                       double delta) {
  if (switches < 0) throw std::invalid_argument("switch bound S must be >= 0");
  if (horizon >= 1 && switches > horizon - 1) {
    throw std::invalid_argument("switch bound S must be <= T - 1");
  }
  const double k = num_actions;
  const double t = static_cast<double>(horizon);
  const double sw = static_cast<double>(switches);
  const double tracking = switches == 0 ? 0.0 : sw * std::log(3.0 * t * k / sw);
  Exp3PParams p = exp3p_params_from_s(num_actions, horizon,
                                      tracking + 2.0 * std::log(k), delta);
  p.switch_bound = switches;
  return p;
}

Exp3P::Exp3P(int num_actions, const Exp3PParams& params, double payoff_bound,
             std::uint64_t seed)
    : params_(params),
      payoff_bound_(payoff_bound),
      rng_(seed),
      gains_(num_actions, 0.0),
      probs_(num_actions, 1.0 / num_actions),
      sampled_(probs_) {
  if (num_actions < 2) throw std::invalid_argument("Exp3P needs K >= 2");
  if (!(payoff_bound > 0.0)) throw std::invalid_argument("payoff bound must be > 0");
  if (!(params.gamma >= 0.0 && params.gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0,1]");
  }
  if (!(params.beta >= 0.0 && params.beta <= 1.0)) {
    throw std::invalid_argument("beta must lie in [0,1]");
  }
}

int Exp3P::act() {
  if (awaiting_observation_) throw std::logic_error("act() called twice without observe()");
  ++round_;
  awaiting_observation_ = true;
  sampled_ = probs_;
  return rng_.categorical(probs_);
}

void Exp3P::observe(int action, double payoff) {
  if (!awaiting_observation_) throw std::logic_error("observe() without act()");
  awaiting_observation_ = false;
  const int k_count = num_actions();
  if (action < 0 || action >= k_count) throw std::out_of_range("action out of range");
  const double m = payoff_bound_;
  if (!(std::abs(payoff) <= m * (1.0 + 1e-12))) {
    throw std::out_of_range("payoff outside [-M, M]");
  }
  for (int k = 0; k < k_count; ++k) {
    const double realized = k == action ? payoff : 0.0;
    gains_[k] += ((realized + params_.beta) / probs_[k] + m) / (2.0 * m);
  }
  refresh_distribution();
}

void Exp3P::refresh_distribution() {
  const int k_count = num_actions();
  const double top = *std::max_element(gains_.begin(), gains_.end());
  double total = 0.0;
  for (int k = 0; k < k_count; ++k) {
    probs_[k] = std::exp(params_.eta * (gains_[k] - top));
    total += probs_[k];
  }
  const double floor = params_.gamma / k_count;
  for (int k = 0; k < k_count; ++k) {
    probs_[k] = (1.0 - params_.gamma) * probs_[k] / total + floor;
  }
}

StrategyFactory exp3p_factory(std::int64_t switches, double delta) {
  return [switches, delta](const StrategyContext& ctx) -> std::unique_ptr<Strategy> {
    const std::int64_t s = std::min(switches, std::max<std::int64_t>(ctx.horizon - 1, 0));
    return std::make_unique<Exp3P>(ctx.num_actions,
                                   exp3p_tune(ctx.num_actions, ctx.horizon, s, delta),
                                   ctx.payoff_bound, ctx.seed);
  };
}

}  // namespace benchdyn
