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

#ifndef BENCHDYN_SWITCH_BUDGET_H_
#define BENCHDYN_SWITCH_BUDGET_H_

#include <cstdint>
#include <string>

#include "json.hpp"

namespace benchdyn {

// Nonnegative, nondecreasing bound C_T on the number of action changes a
// hindsight benchmark may make over the first T rounds.
class SwitchBudgetSchedule {
 public:
  enum class Kind { kConstant, kPower, kLogarithmic, kLinear };

  static SwitchBudgetSchedule constant(double c);
  // a * T^b, 0 <= b < 1.
  static SwitchBudgetSchedule power(double a, double b);
  // a * ln(T + 1).
  static SwitchBudgetSchedule logarithmic(double a);
  // alpha * T.
  static SwitchBudgetSchedule linear(double alpha);

  // {kind: "constant", c} | {kind: "power", a, b} | {kind: "log", a} |
  // {kind: "linear", alpha}
  static SwitchBudgetSchedule from_json(const nlohmann::json& doc);

  Kind kind() const { return kind_; }
  double evaluate(std::int64_t horizon) const;
  std::string describe() const;

 private:
  SwitchBudgetSchedule(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  Kind kind_;
  double a_;
  double b_;
};

double evaluate_budget(const SwitchBudgetSchedule& schedule, std::int64_t horizon);

}  // namespace benchdyn

#endif  // BENCHDYN_SWITCH_BUDGET_H_
