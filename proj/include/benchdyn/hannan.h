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

#ifndef BENCHDYN_HANNAN_H_
#define BENCHDYN_HANNAN_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "benchdyn/game.h"
#include "benchdyn/rational.h"
#include "benchdyn/simplex.h"

namespace benchdyn {

inline constexpr double kHannanTolerance = 1e-9;

// One row per (player, constant deviation): coefficients[a] =
// u_i(x_i, a_{-i}) - u_i(a); the set is {q in simplex : row . q <= 0}.
struct HannanRow {
  int player = 0;
  int deviation = 0;
  std::vector<double> coefficients;
};

std::vector<HannanRow> hannan_constraints(const Game& game);

struct DeviationGain {
  int player = 0;
  int deviation = 0;
  double gain = 0.0;
};

std::vector<DeviationGain> deviation_gains(const Game& game, const JointDistribution& q);
// Largest deviation gain; q is in the set iff the result <= tolerance.
double hannan_violation(const Game& game, const JointDistribution& q);
bool is_hannan_member(const Game& game, const JointDistribution& q,
                      double tolerance = kHannanTolerance);

enum class Direction { kMin, kMax };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::optional<JointDistribution> argument;
  // Set when the solve pivoted exactly over rationals.
  std::optional<Rational> exact_value;
};

// True when every payoff is an exact fraction with denominator <= 10^6.
bool has_rational_payoffs(const Game& game);

// Extremal total expected welfare over the Hannan set.
LpResult extremal_social_welfare(const Game& game, Direction direction);
// Best welfare over all joint distributions (attained at a pure profile).
LpResult max_welfare(const Game& game);
// max welfare / min welfare over the Hannan set; +infinity when the
// denominator is 0. Payoffs must be nonnegative.
double price_of_anarchy(const Game& game);

// L1 distance from q to the Hannan set and a closest point.
LpResult distance_to_hannan(const Game& game, const JointDistribution& q);

struct SmoothnessResult {
  bool holds = true;
  // Largest value of lambda W(a') - mu W(a) - sum_i u_i(a'_i, a_{-i}).
  double worst_violation = 0.0;
  std::size_t worst_a = 0;
  std::size_t worst_a_prime = 0;
  // lambda / (1 + mu).
  double welfare_fraction = 0.0;
};

// Exhaustive over |A|^2 pairs; the worst pair is the first maximizer in
// (a, a') row-major order. Payoffs must be nonnegative.
SmoothnessResult smoothness_check(const Game& game, double lambda, double mu,
                                  int threads = 0);
SmoothnessResult smoothness_check_serial(const Game& game, double lambda, double mu);

// Points on the boundary of the Hannan set, obtained by shooting rays from
// a member point in random zero-sum directions. Sample k uses a stream
// derived from (seed, k), so output is independent of the thread count.
std::vector<std::vector<double>> boundary_cloud(const Game& game, std::size_t n,
                                                std::uint64_t seed, int threads = 0);

}  // namespace benchdyn

#endif  // BENCHDYN_HANNAN_H_
