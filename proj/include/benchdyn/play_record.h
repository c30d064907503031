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

#ifndef BENCHDYN_PLAY_RECORD_H_
#define BENCHDYN_PLAY_RECORD_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace benchdyn {

// Trajectory of a simulated match. Round t (1-based) is stored at t - 1.
struct PlayRecord {
  std::vector<int> action_counts;
  // Row-major profile index of each round.
  std::vector<std::size_t> profiles;
  // payoffs[i][t - 1]: payoff delivered to player i in round t.
  std::vector<std::vector<double>> payoffs;
  std::uint64_t seed = 0;
  std::uint64_t config_digest = 0;
  // Round at which a trigger player detected a deviation, per player.
  std::vector<std::optional<std::int64_t>> defection_times;

  std::int64_t rounds() const { return static_cast<std::int64_t>(profiles.size()); }
};

}  // namespace benchdyn

#endif  // BENCHDYN_PLAY_RECORD_H_
