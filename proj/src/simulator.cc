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

#include "benchdyn/simulator.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "benchdyn/dynamic_regret.h"
#include "benchdyn/hannan.h"
#include "benchdyn/parallel.h"
#include "benchdyn/rng.h"

namespace benchdyn {

std::vector<std::int64_t> default_checkpoints(std::int64_t horizon) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = 1; t <= horizon; t *= 2) out.push_back(t);
  if (out.empty() || out.back() != horizon) out.push_back(horizon);
  return out;
}

std::vector<std::int64_t> resolved_checkpoints(const MatchConfig& config) {
  return config.checkpoints.empty() ? default_checkpoints(config.horizon)
                                    : config.checkpoints;
}

void validate(const MatchConfig& config) {
  if (!config.game) throw std::invalid_argument("match has no game");
  if (config.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (static_cast<int>(config.strategies.size()) != config.game->num_players()) {
    throw std::invalid_argument("one strategy per player is required");
  }
  for (const StrategySpec& spec : config.strategies) {
    if (!spec.factory) throw std::invalid_argument("strategy without a factory");
    if (spec.kind == "trigger" && !config.injective_transform) {
      throw std::invalid_argument("trigger strategies require the injective transform");
    }
  }
  if (!(config.noise >= 0.0)) throw std::invalid_argument("noise must be >= 0");
  const auto& cps = config.checkpoints;
  for (std::size_t c = 0; c < cps.size(); ++c) {
    if (cps[c] < 1 || cps[c] > config.horizon || (c > 0 && cps[c] <= cps[c - 1])) {
      throw std::invalid_argument("checkpoints must be increasing within [1, horizon]");
    }
  }
}

PlayRecord run_match(const MatchConfig& config) {
  validate(config);
  const Game& game = *config.game;
  const Game delivered = config.injective_transform ? make_injective(game) : game;
  const int players = game.num_players();

  std::vector<std::unique_ptr<Strategy>> seats;
  seats.reserve(players);
  for (int i = 0; i < players; ++i) {
    StrategyContext ctx;
    ctx.player = i;
    ctx.num_actions = game.num_actions(i);
    ctx.horizon = config.horizon;
    ctx.seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
    ctx.match_seed = config.seed;
    ctx.game = &delivered;
    ctx.payoff_bound = delivered.payoff_bound();
    seats.push_back(config.strategies[i].factory(ctx));
    if (seats.back()->num_actions() != ctx.num_actions) {
      throw std::invalid_argument("strategy action count does not match the game");
    }
  }
  std::vector<bool> reads_profiles(players);
  for (int i = 0; i < players; ++i) reads_profiles[i] = seats[i]->reads_profiles();

  PlayRecord record;
  record.action_counts = game.action_counts();
  record.seed = config.seed;
  record.config_digest = fnv1a64(config.description);
  record.profiles.reserve(static_cast<std::size_t>(config.horizon));
  record.payoffs.assign(players, std::vector<double>());
  for (auto& p : record.payoffs) p.reserve(static_cast<std::size_t>(config.horizon));

  std::optional<Rng> noise_rng;
  if (config.noise > 0.0) noise_rng.emplace(derive_seed(config.seed, 0x9015eULL));
  const double bound = delivered.payoff_bound();

  ActionProfile profile{std::vector<int>(players)};
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    for (int i = 0; i < players; ++i) {
      const int a = seats[i]->act();
      if (a < 0 || a >= game.num_actions(i)) throw std::logic_error("strategy played out of range");
      profile[i] = a;
    }
    const std::size_t index = game.profile_index(profile);
    record.profiles.push_back(index);
    for (int i = 0; i < players; ++i) {
      double payoff = delivered.payoff(i, index);
      if (noise_rng) payoff = std::clamp(payoff + config.noise * noise_rng->normal(), -bound, bound);
      record.payoffs[i].push_back(payoff);
      seats[i]->observe(profile[i], payoff);
      if (reads_profiles[i]) seats[i]->observe_profile(profile);
    }
  }
  record.defection_times.reserve(players);
  for (const auto& seat : seats) record.defection_times.push_back(seat->defection_time());
  return record;
}

std::vector<std::int64_t> profile_counts(const PlayRecord& record, std::int64_t upto) {
  if (upto < 1 || upto > record.rounds()) throw std::out_of_range("upto outside the record");
  std::size_t profiles = 1;
  for (int k : record.action_counts) profiles *= static_cast<std::size_t>(k);
  std::vector<std::int64_t> counts(profiles, 0);
  for (std::int64_t t = 0; t < upto; ++t) ++counts[record.profiles[t]];
  return counts;
}

JointDistribution empirical_distribution(const PlayRecord& record, std::int64_t upto) {
  const std::vector<std::int64_t> counts = profile_counts(record, upto);
  std::vector<double> mass(counts.size());
  for (std::size_t a = 0; a < counts.size(); ++a) {
    mass[a] = static_cast<double>(counts[a]) / static_cast<double>(upto);
  }
  return JointDistribution(record.action_counts, std::move(mass));
}

Diagnostics diagnostics(const Game& game, const PlayRecord& record,
                        std::span<const SwitchBudgetSchedule> budgets,
                        std::span<const std::int64_t> checkpoints, bool with_distance) {
  Diagnostics out;
  out.defection_times = record.defection_times;
  for (std::int64_t t : checkpoints) {
    CheckpointDiagnostics cd{t, empirical_distribution(record, t), {}, 0.0};
    cd.regret.assign(game.num_players(), std::vector<double>(budgets.size()));
    for (int i = 0; i < game.num_players(); ++i) {
      for (std::size_t b = 0; b < budgets.size(); ++b) {
        cd.regret[i][b] = dynamic_regret(game, i, record, budgets[b].evaluate(t), t);
      }
    }
    if (with_distance) cd.distance_to_hannan = distance_to_hannan(game, cd.empirical).value;
    out.checkpoints.push_back(std::move(cd));
  }
  return out;
}

double quantile(std::vector<double> sample, double q) {
  if (sample.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(sample.begin(), sample.end());
  const double pos = q * static_cast<double>(sample.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sample.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sample[lo] + frac * (sample[hi] - sample[lo]);
}

Summary summarize(std::span<const double> sample) {
  std::vector<double> v(sample.begin(), sample.end());
  Summary s;
  double total = 0.0;
  for (double x : v) total += x;
  s.mean = total / static_cast<double>(v.size());
  s.median = quantile(v, 0.5);
  s.q10 = quantile(v, 0.1);
  s.q90 = quantile(v, 0.9);
  return s;
}

std::vector<double> ReplicationReport::regret_sample(std::size_t c, int player,
                                                     std::size_t b) const {
  std::vector<double> out;
  out.reserve(per_seed.size());
  for (const auto& run : per_seed) out.push_back(run[c].regret[player][b]);
  return out;
}

std::vector<double> ReplicationReport::distance_sample(std::size_t c) const {
  std::vector<double> out;
  out.reserve(per_seed.size());
  for (const auto& run : per_seed) out.push_back(run[c].distance_to_hannan);
  return out;
}

std::uint64_t replication_seed(std::uint64_t master, std::uint64_t r) {
  return derive_seed(master, r);
}

ReplicationReport replicate(const MatchConfig& config, int n_seeds,
                            std::span<const SwitchBudgetSchedule> budgets,
                            bool with_distance, int threads) {
  if (n_seeds < 1) throw std::invalid_argument("n_seeds must be >= 1");
  validate(config);
  ReplicationReport report;
  report.checkpoints = resolved_checkpoints(config);
  report.per_seed.resize(n_seeds);
  report.defections.resize(n_seeds);
  for (int r = 0; r < n_seeds; ++r) {
    report.seeds.push_back(replication_seed(config.seed, static_cast<std::uint64_t>(r)));
  }

  std::vector<std::exception_ptr> errors(n_seeds);
  const int team = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(team) if (team > 1)
  for (int r = 0; r < n_seeds; ++r) {
    try {
      MatchConfig run = config;
      run.seed = report.seeds[r];
      const PlayRecord record = run_match(run);
      Diagnostics d = diagnostics(*config.game, record, budgets, report.checkpoints,
                                  with_distance);
      report.per_seed[r] = std::move(d.checkpoints);
      report.defections[r] = std::move(d.defection_times);
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const int players = config.game->num_players();
  for (std::size_t c = 0; c < report.checkpoints.size(); ++c) {
    std::vector<std::vector<Summary>> by_player(players);
    for (int i = 0; i < players; ++i) {
      for (std::size_t b = 0; b < budgets.size(); ++b) {
        by_player[i].push_back(summarize(report.regret_sample(c, i, b)));
      }
    }
    report.regret.push_back(std::move(by_player));
    report.distance.push_back(summarize(report.distance_sample(c)));
  }
  return report;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace benchdyn
