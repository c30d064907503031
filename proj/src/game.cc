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

#include "benchdyn/game.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "benchdyn/document.h"

namespace benchdyn {

Game::Game(std::vector<int> action_counts,
           std::vector<std::vector<double>> payoffs, double payoff_bound,
           std::vector<std::string> player_names,
           std::vector<std::vector<std::string>> action_labels)
    : action_counts_(std::move(action_counts)),
      payoffs_(std::move(payoffs)),
      names_(std::move(player_names)),
      labels_(std::move(action_labels)) {
  const int n = num_players();
  if (n < 2) throw GameError("a game needs at least 2 players");
  num_profiles_ = 1;
  for (int i = 0; i < n; ++i) {
    if (action_counts_[i] < 2) {
      throw GameError("player " + std::to_string(i + 1) +
                      " has fewer than 2 actions");
    }
    num_profiles_ *= static_cast<std::size_t>(action_counts_[i]);
  }
  strides_.assign(n, 1);
  for (int i = n - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * static_cast<std::size_t>(action_counts_[i + 1]);
  }

  if (static_cast<int>(payoffs_.size()) < n) throw GameError("missing payoff entry");
  if (static_cast<int>(payoffs_.size()) > n) throw GameError("ragged payoff tensor");
  double max_abs = 0.0;
  for (const auto& row : payoffs_) {
    if (row.size() < num_profiles_) throw GameError("missing payoff entry");
    if (row.size() > num_profiles_) throw GameError("ragged payoff tensor");
    for (double u : row) {
      if (!std::isfinite(u)) throw GameError("non-finite payoff");
      max_abs = std::max(max_abs, std::abs(u));
    }
  }
  if (payoff_bound > 0.0) {
    if (max_abs > payoff_bound) {
      throw GameError("payoff outside declared [-M, M] with M = " +
                      std::to_string(payoff_bound));
    }
    payoff_bound_ = payoff_bound;
  } else if (payoff_bound < 0.0) {
    throw GameError("payoff_bound must be positive");
  } else {
    // A constant-zero game still needs M > 0.
    payoff_bound_ = max_abs > 0.0 ? max_abs : 1.0;
  }

  if (names_.empty()) {
    for (int i = 0; i < n; ++i) names_.push_back("player" + std::to_string(i + 1));
  }
  if (static_cast<int>(names_.size()) != n) throw GameError("player name count mismatch");
  if (labels_.empty()) {
    labels_.resize(n);
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < action_counts_[i]; ++a) {
        labels_[i].push_back("a" + std::to_string(a + 1));
      }
    }
  }
  if (static_cast<int>(labels_.size()) != n) throw GameError("action label count mismatch");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(labels_[i].size()) != action_counts_[i]) {
      throw GameError("action label count mismatch for player " + names_[i]);
    }
  }
}

int Game::find_action(int player, std::string_view label) const {
  const auto& labels = labels_[player];
  for (int a = 0; a < static_cast<int>(labels.size()); ++a) {
    if (labels[a] == label) return a;
  }
  int index = 0;
  auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), index);
  if (ec == std::errc() && ptr == label.data() + label.size() && index >= 1 &&
      index <= action_counts_[player]) {
    return index - 1;
  }
  return -1;
}

int Game::find_player(std::string_view name) const {
  for (int i = 0; i < num_players(); ++i) {
    if (names_[i] == name) return i;
  }
  int index = 0;
  auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), index);
  if (ec == std::errc() && ptr == name.data() + name.size() && index >= 1 &&
      index <= num_players()) {
    return index - 1;
  }
  return -1;
}

std::size_t Game::profile_index(const ActionProfile& profile) const {
  if (static_cast<int>(profile.size()) != num_players()) {
    throw GameError("profile length does not match the player count");
  }
  std::size_t index = 0;
  for (int i = 0; i < num_players(); ++i) {
    if (profile[i] < 0 || profile[i] >= action_counts_[i]) {
      throw GameError("action out of range for player " + names_[i]);
    }
    index += static_cast<std::size_t>(profile[i]) * strides_[i];
  }
  return index;
}

ActionProfile Game::profile_at(std::size_t index) const {
  ActionProfile profile;
  profile.actions.resize(num_players());
  for (int i = 0; i < num_players(); ++i) profile[i] = action_of(index, i);
  return profile;
}

std::size_t Game::opponent_index(int player, std::size_t profile_index) const {
  std::size_t index = 0;
  for (int j = 0; j < num_players(); ++j) {
    if (j == player) continue;
    index = index * static_cast<std::size_t>(action_counts_[j]) +
            static_cast<std::size_t>(action_of(profile_index, j));
  }
  return index;
}

std::size_t Game::compose(int player, int action, std::size_t opponent_index) const {
  std::size_t index = static_cast<std::size_t>(action) * strides_[player];
  for (int j = num_players() - 1; j >= 0; --j) {
    if (j == player) continue;
    const auto k = static_cast<std::size_t>(action_counts_[j]);
    index += (opponent_index % k) * strides_[j];
    opponent_index /= k;
  }
  return index;
}

std::string Game::profile_string(const ActionProfile& profile) const {
  std::string out = "(";
  for (int i = 0; i < num_players(); ++i) {
    if (i > 0) out += ",";
    out += labels_[i][profile[i]];
  }
  return out + ")";
}

JointDistribution::JointDistribution(std::vector<int> action_counts,
                                     std::vector<double> mass)
    : action_counts_(std::move(action_counts)), mass_(std::move(mass)) {
  std::size_t n = 1;
  for (int k : action_counts_) n *= static_cast<std::size_t>(k);
  if (mass_.size() != n) throw GameError("distribution size does not match the game");
  double total = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0)) throw GameError("negative probability mass");
    total += m;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw GameError("probability masses sum to " + std::to_string(total) +
                    ", not 1");
  }
}

JointDistribution JointDistribution::dirac(const Game& game,
                                           const ActionProfile& profile) {
  std::vector<double> mass(game.num_profiles(), 0.0);
  mass[game.profile_index(profile)] = 1.0;
  return JointDistribution(game.action_counts(), std::move(mass));
}

JointDistribution JointDistribution::uniform_over(
    const Game& game, std::span<const ActionProfile> support) {
  if (support.empty()) throw GameError("empty support");
  std::vector<double> mass(game.num_profiles(), 0.0);
  for (const auto& p : support) mass[game.profile_index(p)] += 1.0;
  for (double& m : mass) m /= static_cast<double>(support.size());
  return JointDistribution(game.action_counts(), std::move(mass));
}

void JointDistribution::check_shape(const Game& game) const {
  if (action_counts_ != game.action_counts()) {
    throw GameError("distribution shape does not match the game");
  }
}

JointDistribution to_joint(const Game& game, std::span<const ProfileMass> entries) {
  std::vector<double> mass(game.num_profiles(), 0.0);
  for (const auto& e : entries) mass[game.profile_index(e.profile)] += e.mass;
  return JointDistribution(game.action_counts(), std::move(mass));
}

namespace {

// Flattens a per-player payoff tensor (flat list or nested lists of the
// game's shape) into row-major order.
void flatten_payoffs(const nlohmann::json& node, const std::vector<int>& shape,
                     std::size_t depth, std::vector<double>& out) {
  if (!node.is_array()) throw GameError("ragged payoff tensor");
  const bool flat = std::all_of(node.begin(), node.end(),
                                [](const nlohmann::json& v) { return !v.is_array(); });
  if (flat && depth == 0 && shape.size() > 1) {
    // Whole-tensor flat list.
    for (const auto& v : node) out.push_back(number_or_fraction(v, "payoffs"));
    return;
  }
  const auto expected = static_cast<std::size_t>(shape[depth]);
  if (node.size() < expected) throw GameError("missing payoff entry");
  if (node.size() > expected) throw GameError("ragged payoff tensor");
  if (depth + 1 == shape.size()) {
    for (const auto& v : node) {
      if (v.is_array()) throw GameError("ragged payoff tensor");
      out.push_back(number_or_fraction(v, "payoffs"));
    }
    return;
  }
  for (const auto& v : node) flatten_payoffs(v, shape, depth + 1, out);
}

Game game_from_document(const nlohmann::json& doc) {
  if (!doc.is_object()) throw GameError("game document must be a table/object");
  if (!doc.contains("players") || !doc["players"].is_array()) {
    throw GameError("game document needs a `players` list");
  }
  std::vector<int> counts;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> labels;
  for (const auto& p : doc["players"]) {
    if (!p.contains("actions") || !p["actions"].is_array()) {
      throw GameError("each player needs an `actions` list");
    }
    std::vector<std::string> acts;
    for (const auto& a : p["actions"]) {
      acts.push_back(a.is_string() ? a.get<std::string>() : a.dump());
    }
    names.push_back(p.value("name", "player" + std::to_string(names.size() + 1)));
    counts.push_back(static_cast<int>(acts.size()));
    labels.push_back(std::move(acts));
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 2) {
      throw GameError("player " + names[i] + " has fewer than 2 actions");
    }
  }
  if (!doc.contains("payoffs") || !doc["payoffs"].is_array()) {
    throw GameError("missing payoff entry");
  }
  std::vector<std::vector<double>> payoffs;
  for (const auto& tensor : doc["payoffs"]) {
    std::vector<double> flat;
    flatten_payoffs(tensor, counts, 0, flat);
    payoffs.push_back(std::move(flat));
  }
  double bound = 0.0;
  if (doc.contains("payoff_bound")) {
    bound = number_or_fraction(doc["payoff_bound"], "payoff_bound");
    if (!(bound > 0.0)) throw GameError("payoff_bound must be positive");
  }
  return Game(std::move(counts), std::move(payoffs), bound, std::move(names),
              std::move(labels));
}

}  // namespace

Game parse_game(std::string_view text, std::string_view format_hint) {
  return game_from_document(parse_document(text, format_hint));
}

Game load_game(const std::filesystem::path& path) {
  return game_from_document(load_document(path));
}

double expected_payoff(const Game& game, int player, const JointDistribution& q) {
  q.check_shape(game);
  double total = 0.0;
  for (std::size_t a = 0; a < game.num_profiles(); ++a) {
    if (q[a] != 0.0) total += q[a] * game.payoff(player, a);
  }
  return total;
}

double social_welfare(const Game& game, std::size_t profile_index) {
  double w = 0.0;
  for (int i = 0; i < game.num_players(); ++i) w += game.payoff(i, profile_index);
  return w;
}

Game normalized_unit(const Game& game) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < game.num_players(); ++i) {
    for (double u : game.payoffs(i)) {
      lo = std::min(lo, u);
      hi = std::max(hi, u);
    }
  }
  const double range = hi - lo;
  std::vector<std::vector<double>> payoffs(game.num_players());
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> labels(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    for (double u : game.payoffs(i)) {
      payoffs[i].push_back(range > 0.0 ? (u - lo) / range : 0.0);
    }
    names.push_back(game.player_name(i));
    for (int a = 0; a < game.num_actions(i); ++a) {
      labels[i].push_back(game.action_label(i, a));
    }
  }
  return Game(game.action_counts(), std::move(payoffs), 1.0, std::move(names),
              std::move(labels));
}

Game make_injective(const Game& game) {
  const double m = game.payoff_bound();
  std::vector<std::vector<double>> payoffs(game.num_players(),
                                           std::vector<double>(game.num_profiles()));
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> labels(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    const auto opponents = static_cast<double>(game.num_opponent_profiles(i));
    // Shift column n by -2M + 3Mn, then divide by the largest shifted value.
    const double scale = (3.0 * opponents - 1.0) * m;
    for (std::size_t a = 0; a < game.num_profiles(); ++a) {
      const double n = static_cast<double>(game.opponent_index(i, a) + 1);
      const double shift = -2.0 * m + 3.0 * m * n;
      payoffs[i][a] = std::clamp((game.payoff(i, a) + shift) / scale, 0.0, 1.0);
    }
    names.push_back(game.player_name(i));
    for (int a = 0; a < game.num_actions(i); ++a) {
      labels[i].push_back(game.action_label(i, a));
    }
  }
  return Game(game.action_counts(), std::move(payoffs), 1.0, std::move(names),
              std::move(labels));
}

namespace {

std::vector<int> best_replies(const Game& game, int player,
                              std::span<const double> belief) {
  std::vector<double> value(game.num_actions(player), 0.0);
  for (int x = 0; x < game.num_actions(player); ++x) {
    for (std::size_t o = 0; o < belief.size(); ++o) {
      if (belief[o] != 0.0) value[x] += belief[o] * game.payoff(player, game.compose(player, x, o));
    }
  }
  const double best = *std::max_element(value.begin(), value.end());
  const double tol = 1e-12 * std::max(1.0, std::abs(best));
  std::vector<int> out;
  for (int x = 0; x < game.num_actions(player); ++x) {
    if (value[x] >= best - tol) out.push_back(x);
  }
  return out;
}

}  // namespace

bool argmax_preserved(const Game& game, const Game& transformed) {
  if (game.action_counts() != transformed.action_counts()) {
    throw GameError("shape mismatch between game and transformed game");
  }
  for (int i = 0; i < game.num_players(); ++i) {
    const std::size_t opp = game.num_opponent_profiles(i);
    std::vector<std::vector<double>> beliefs;
    for (std::size_t o = 0; o < opp; ++o) {
      std::vector<double> dirac(opp, 0.0);
      dirac[o] = 1.0;
      beliefs.push_back(std::move(dirac));
    }
    beliefs.emplace_back(opp, 1.0 / static_cast<double>(opp));
    for (const auto& belief : beliefs) {
      if (best_replies(game, i, belief) != best_replies(transformed, i, belief)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace benchdyn
