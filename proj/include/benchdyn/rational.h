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

#ifndef BENCHDYN_RATIONAL_H_
#define BENCHDYN_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace benchdyn {

using Rational = mpq_class;

inline constexpr std::int64_t kMaxDenominator = 1'000'000;

// Exact value of a finite double.
Rational exact_rational(double x);

double to_double(const Rational& q);

// Smallest-denominator continued-fraction convergent p/q of `x` with
// q <= max_den that rounds back to exactly `x`. Recovers 1/3 from 0.333...
std::optional<Rational> recover_rational(double x,
                                         std::int64_t max_den = kMaxDenominator);

// First continued-fraction convergent within `tol` of `x`, or nullopt once
// the denominator would exceed `max_den`.
std::optional<Rational> approximate_rational(double x, double tol,
                                             std::int64_t max_den = kMaxDenominator);

// Integer masses k_s summing to `denominator` with k_s / denominator close
// to the input masses.
struct RationalMasses {
  std::vector<std::int64_t> counts;
  std::int64_t denominator = 1;
  double l1_error = 0.0;
};

// Rationalizes a probability vector. With epsilon == 0 every mass must be an
// exactly recoverable fraction summing to 1; otherwise the L1 error is at
// most epsilon. The common denominator never exceeds kMaxDenominator.
// Throws std::invalid_argument when this is impossible.
RationalMasses rationalize_masses(std::span<const double> masses, double epsilon);

std::string to_string(const Rational& q);

}  // namespace benchdyn

#endif  // BENCHDYN_RATIONAL_H_
