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

#include "benchdyn/switch_budget.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "benchdyn/document.h"

namespace benchdyn {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

SwitchBudgetSchedule SwitchBudgetSchedule::constant(double c) {
  require(std::isfinite(c) && c >= 0.0, "constant budget must be >= 0");
  return {Kind::kConstant, c, 0.0};
}

SwitchBudgetSchedule SwitchBudgetSchedule::power(double a, double b) {
  require(std::isfinite(a) && a >= 0.0, "power budget needs a >= 0");
  require(std::isfinite(b) && b >= 0.0 && b < 1.0, "power budget needs 0 <= b < 1");
  return {Kind::kPower, a, b};
}

SwitchBudgetSchedule SwitchBudgetSchedule::logarithmic(double a) {
  require(std::isfinite(a) && a >= 0.0, "logarithmic budget needs a >= 0");
  return {Kind::kLogarithmic, a, 0.0};
}

SwitchBudgetSchedule SwitchBudgetSchedule::linear(double alpha) {
  require(std::isfinite(alpha) && alpha >= 0.0, "linear budget needs alpha >= 0");
  return {Kind::kLinear, alpha, 0.0};
}

SwitchBudgetSchedule SwitchBudgetSchedule::from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw ConfigError("budget", "expected a table with a string `kind`");
  }
  const std::string kind = doc["kind"].get<std::string>();
  auto num = [&](const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    return number_or_fraction(doc[key], std::string("budget.") + key);
  };
  try {
    if (kind == "constant") return constant(num("c", 0.0));
    if (kind == "power") return power(num("a", 1.0), num("b", 0.5));
    if (kind == "log" || kind == "logarithmic") return logarithmic(num("a", 1.0));
    if (kind == "linear") return linear(num("alpha", 0.0));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("budget", e.what());
  }
  throw ConfigError("budget.kind", "unknown budget kind '" + kind + "'");
}

double SwitchBudgetSchedule::evaluate(std::int64_t horizon) const {
  if (horizon < 1) throw std::invalid_argument("budget horizon must be >= 1");
  const auto t = static_cast<double>(horizon);
  switch (kind_) {
    case Kind::kConstant:
      return a_;
    case Kind::kPower:
      return a_ * std::pow(t, b_);
    case Kind::kLogarithmic:
      return a_ * std::log(t + 1.0);
    case Kind::kLinear:
      return a_ * t;
  }
  return 0.0;
}

std::string SwitchBudgetSchedule::describe() const {
  switch (kind_) {
    case Kind::kConstant:
      return "constant:c=" + fmt(a_);
    case Kind::kPower:
      return "power:a=" + fmt(a_) + ":b=" + fmt(b_);
    case Kind::kLogarithmic:
      return "log:a=" + fmt(a_);
    case Kind::kLinear:
      return "linear:alpha=" + fmt(a_);
  }
  return "unknown";
}

double evaluate_budget(const SwitchBudgetSchedule& schedule, std::int64_t horizon) {
  return schedule.evaluate(horizon);
}

}  // namespace benchdyn
