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

#ifndef BENCHDYN_EXP3P_H_
#define BENCHDYN_EXP3P_H_

#include <cstdint>
#include <vector>

#include "benchdyn/rng.h"
#include "benchdyn/strategy.h"

namespace benchdyn {

// Tuning of the exponential-weights bandit learner for a horizon T and a
// tracking target of S switches.
struct Exp3PParams {
  double s = 0.0;
  double eta = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
  std::int64_t horizon = 1;
  std::int64_t switch_bound = 0;
  double delta = 0.05;
  // High-probability regret bound 7 sqrt(TKs) + sqrt(TK/s) ln(1/delta).
  double bound = 0.0;
};

// s = S ln(3TK/S) + 2 ln K (the S ln(...) term is 0 when S = 0),
// beta = 3 sqrt(s/(TK)), gamma = min(1/2, sqrt(Ks/(2T))),
// eta = sqrt(s/(TK)) / 5.
// Requires K >= 2, T >= 1 and 0 <= S <= T - 1.
Exp3PParams exp3p_tune(int num_actions, std::int64_t horizon, std::int64_t switches,
                       double delta = 0.05);

// Same tuning from a precomputed s over a horizon (the doubling variant
// supplies s directly from a real-valued switch target).
Exp3PParams exp3p_params_from_s(int num_actions, std::int64_t horizon, double s,
                                double delta = 0.05);

// Exponential weights with uniform exploration and a confidence bias,
// receiving one payoff in [-M, M] per round.
class Exp3P : public Strategy {
 public:
  Exp3P(int num_actions, const Exp3PParams& params, double payoff_bound,
        std::uint64_t seed);

  int act() override;
  void observe(int action, double payoff) override;
  // Distribution sampled by the most recent act().
  std::span<const double> distribution() const override { return sampled_; }
  // Distribution the next act() will sample from.
  std::span<const double> next_distribution() const { return probs_; }
  int num_actions() const override { return static_cast<int>(probs_.size()); }
  std::string name() const override { return "exp3p"; }

  const Exp3PParams& params() const { return params_; }
  std::span<const double> cumulative_estimates() const { return gains_; }

 private:
  void refresh_distribution();

  Exp3PParams params_;
  double payoff_bound_;
  Rng rng_;
  std::vector<double> gains_;
  std::vector<double> probs_;
  std::vector<double> sampled_;
  std::int64_t round_ = 0;
  bool awaiting_observation_ = false;
};

StrategyFactory exp3p_factory(std::int64_t switches = 0, double delta = 0.05);

}  // namespace benchdyn

#endif  // BENCHDYN_EXP3P_H_
