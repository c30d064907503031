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

#ifndef BENCHDYN_GAME_H_
#define BENCHDYN_GAME_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace benchdyn {

// Raised for malformed or inconsistent game documents and game shapes.
class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One action index per player, 0-based internally. Labels are the
// user-facing names.
struct ActionProfile {
  std::vector<int> actions;

  std::size_t size() const { return actions.size(); }
  int operator[](std::size_t i) const { return actions[i]; }
  int& operator[](std::size_t i) { return actions[i]; }
  auto operator<=>(const ActionProfile&) const = default;
};

// Finite N-player normal-form game. Payoffs are stored densely per player,
// indexed by the row-major profile index (player 0 most significant).
// Immutable after construction.
class Game {
 public:
  Game(std::vector<int> action_counts, std::vector<std::vector<double>> payoffs,
       double payoff_bound = 0.0, std::vector<std::string> player_names = {},
       std::vector<std::vector<std::string>> action_labels = {});

  int num_players() const { return static_cast<int>(action_counts_.size()); }
  int num_actions(int player) const { return action_counts_[player]; }
  const std::vector<int>& action_counts() const { return action_counts_; }
  std::size_t num_profiles() const { return num_profiles_; }
  double payoff_bound() const { return payoff_bound_; }

  const std::string& player_name(int player) const { return names_[player]; }
  const std::string& action_label(int player, int action) const {
    return labels_[player][action];
  }
  // Returns -1 when the label is unknown. Also accepts 1-based indices.
  int find_action(int player, std::string_view label) const;
  int find_player(std::string_view name) const;

  double payoff(int player, std::size_t profile_index) const {
    return payoffs_[player][profile_index];
  }
  double payoff(int player, const ActionProfile& profile) const {
    return payoffs_[player][profile_index(profile)];
  }
  std::span<const double> payoffs(int player) const { return payoffs_[player]; }

  std::size_t profile_index(const ActionProfile& profile) const;
  ActionProfile profile_at(std::size_t index) const;
  int action_of(std::size_t profile_index, int player) const {
    return static_cast<int>(profile_index / strides_[player]) %
           action_counts_[player];
  }
  // Index of the profile obtained by replacing `player`'s action.
  std::size_t with_action(std::size_t profile_index, int player,
                          int action) const {
    const int current = action_of(profile_index, player);
    return profile_index + (static_cast<std::ptrdiff_t>(action) - current) *
                               static_cast<std::ptrdiff_t>(strides_[player]);
  }

  // Opponent sub-profiles of `player`, enumerated lexicographically over the
  // other players' action indices in player order.
  std::size_t num_opponent_profiles(int player) const {
    return num_profiles_ / action_counts_[player];
  }
  std::size_t opponent_index(int player, std::size_t profile_index) const;
  // Profile index assembled from an own action and an opponent index.
  std::size_t compose(int player, int action, std::size_t opponent_index) const;

  std::string profile_string(const ActionProfile& profile) const;

 private:
  std::vector<int> action_counts_;
  std::vector<std::size_t> strides_;
  std::size_t num_profiles_ = 0;
  std::vector<std::vector<double>> payoffs_;
  double payoff_bound_ = 0.0;
  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> labels_;
};

// Probability mass over the pure profiles of a game, dense over profile
// indices.
class JointDistribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  JointDistribution(std::vector<int> action_counts, std::vector<double> mass);

  static JointDistribution dirac(const Game& game, const ActionProfile& profile);
  static JointDistribution uniform_over(const Game& game,
                                        std::span<const ActionProfile> support);

  const std::vector<int>& action_counts() const { return action_counts_; }
  std::size_t size() const { return mass_.size(); }
  double operator[](std::size_t profile_index) const {
    return mass_[profile_index];
  }
  std::span<const double> mass() const { return mass_; }

  // Throws GameError when the distribution does not live on `game`'s
  // profile space.
  void check_shape(const Game& game) const;

 private:
  std::vector<int> action_counts_;
  std::vector<double> mass_;
};

// Ordered (profile, mass) list; order matters wherever the support is
// replayed as a schedule.
struct ProfileMass {
  ActionProfile profile;
  double mass = 0.0;
};

JointDistribution to_joint(const Game& game, std::span<const ProfileMass> entries);

// Parses a game document (JSON or TOML, chosen by extension or content).
Game load_game(const std::filesystem::path& path);
Game parse_game(std::string_view text, std::string_view format_hint = "");

double expected_payoff(const Game& game, int player, const JointDistribution& q);
double social_welfare(const Game& game, std::size_t profile_index);

// Positive affine rescaling of every payoff into [0, 1] (common map across
// players). Preserves best replies and the Hannan set.
Game normalized_unit(const Game& game);

// Per-player rescaling that makes every own-action section injective in the
// opponents' profile; output payoffs lie in [0, 1].
Game make_injective(const Game& game);

// True when best-reply sets coincide between `game` and `transformed` for
// every player against each Dirac belief over opponent profiles and against
// the uniform belief.
bool argmax_preserved(const Game& game, const Game& transformed);

}  // namespace benchdyn

#endif  // BENCHDYN_GAME_H_
