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

#ifndef BENCHDYN_RNG_H_
#define BENCHDYN_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace benchdyn {

std::uint64_t splitmix64(std::uint64_t x);

// Child seed for stream `index` of `parent`. Distinct indices give
// distinct, decorrelated streams.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

// Per-instance random stream. Draws are defined bit-for-bit from the
// 64-bit engine output, so trajectories do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Inverse-CDF draw from a probability vector.
  int categorical(std::span<const double> p);

  int uniform_int(int n) { return categorical_uniform(n); }

  // Standard normal via Box-Muller.
  double normal();

 private:
  int categorical_uniform(int n);

  std::mt19937_64 engine_;
};

}  // namespace benchdyn

#endif  // BENCHDYN_RNG_H_
