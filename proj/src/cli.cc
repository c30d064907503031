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

#include "benchdyn/cli.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "benchdyn/document.h"
#include "benchdyn/dynamic_regret.h"
#include "benchdyn/game.h"
#include "benchdyn/hannan.h"
#include "benchdyn/parallel.h"
#include "benchdyn/rng.h"
#include "benchdyn/simulator.h"
#include "benchdyn/strategy_spec.h"
#include "json.hpp"

namespace benchdyn {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json number(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return std::strtod(format_number(x).c_str(), nullptr);
}

std::string profile_key(const Game& game, std::size_t index) {
  std::string out;
  for (int i = 0; i < game.num_players(); ++i) {
    if (i > 0) out += "|";
    out += game.action_label(i, game.action_of(index, i));
  }
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("out", "cannot write " + path.string());
  file << text;
}

Game load_game_or_config_error(const std::string& path) {
  try {
    return load_game(path);
  } catch (const GameError& e) {
    throw ConfigError("game", e.what());
  }
}

JointDistribution parse_distribution(const Game& game, const std::string& text) {
  try {
    return to_joint(game, parse_profile_mass_string(text, game));
  } catch (const GameError& e) {
    throw ConfigError("distribution", e.what());
  }
}

json distribution_json(const Game& game, const JointDistribution& q) {
  json out = json::object();
  for (std::size_t a = 0; a < q.size(); ++a) {
    if (q[a] != 0.0) out[profile_key(game, a)] = number(q[a]);
  }
  return out;
}

std::string distribution_text(const Game& game, const JointDistribution& q) {
  std::string out;
  for (std::size_t a = 0; a < q.size(); ++a) {
    if (q[a] == 0.0) continue;
    if (!out.empty()) out += ";";
    out += profile_key(game, a) + "=" + format_number(q[a]);
  }
  return out;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string config;
  std::string game;
  std::optional<std::uint64_t> seed;
  std::optional<int> seeds;
  std::optional<std::int64_t> horizon;
  std::string out = ".";
  std::string format = "csv";
  bool record = false;
  int threads = 0;
};

std::string diagnostics_csv(const Game& game, const ExperimentSpec& spec,
                            const ReplicationReport& report) {
  std::ostringstream csv;
  const bool single = report.per_seed.size() == 1;
  csv << "t";
  if (!single) csv << ",stat";
  if (spec.with_distance) csv << ",distance_to_hannan";
  for (int i = 0; i < game.num_players(); ++i) {
    for (std::size_t b = 0; b < spec.budgets.size(); ++b) {
      csv << ",regret_" << game.player_name(i) << "_b" << b;
    }
  }
  if (single) {
    for (std::size_t a = 0; a < game.num_profiles(); ++a) csv << ",q_" << profile_key(game, a);
  }
  csv << "\n";
  for (std::size_t c = 0; c < report.checkpoints.size(); ++c) {
    if (single) {
      const CheckpointDiagnostics& d = report.per_seed[0][c];
      csv << d.t;
      if (spec.with_distance) csv << "," << format_number(d.distance_to_hannan);
      for (const auto& per_budget : d.regret) {
        for (double r : per_budget) csv << "," << format_number(r);
      }
      for (double m : d.empirical.mass()) csv << "," << format_number(m);
      csv << "\n";
      continue;
    }
    const char* names[] = {"mean", "median", "q10", "q90"};
    for (int s = 0; s < 4; ++s) {
      auto pick = [s](const Summary& x) {
        return s == 0 ? x.mean : s == 1 ? x.median : s == 2 ? x.q10 : x.q90;
      };
      csv << report.checkpoints[c] << "," << names[s];
      if (spec.with_distance) csv << "," << format_number(pick(report.distance[c]));
      for (const auto& per_budget : report.regret[c]) {
        for (const Summary& x : per_budget) csv << "," << format_number(pick(x));
      }
      csv << "\n";
    }
  }
  return csv.str();
}

json diagnostics_json(const Game& game, const ExperimentSpec& spec,
                      const ReplicationReport& report) {
  json rows = json::array();
  for (std::size_t c = 0; c < report.checkpoints.size(); ++c) {
    json row;
    row["t"] = report.checkpoints[c];
    auto summary = [](const Summary& s) {
      return json{{"mean", number(s.mean)},
                  {"median", number(s.median)},
                  {"q10", number(s.q10)},
                  {"q90", number(s.q90)}};
    };
    if (spec.with_distance) row["distance_to_hannan"] = summary(report.distance[c]);
    json regret = json::object();
    for (int i = 0; i < game.num_players(); ++i) {
      json per_budget = json::array();
      for (const Summary& s : report.regret[c][i]) per_budget.push_back(summary(s));
      regret[game.player_name(i)] = per_budget;
    }
    row["regret"] = regret;
    if (report.per_seed.size() == 1) {
      row["empirical"] = distribution_json(game, report.per_seed[0][c].empirical);
    }
    rows.push_back(row);
  }
  return rows;
}

json summary_json(const Game& game, const ExperimentSpec& spec, const ReplicationReport& report) {
  json out;
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(fnv1a64(spec.match.description)));
  out["config_digest"] = digest;
  out["horizon"] = spec.match.horizon;
  out["master_seed"] = spec.match.seed;
  out["seeds"] = report.seeds;
  out["injective_transform"] = spec.match.injective_transform;
  json budgets = json::array();
  for (const auto& b : spec.budgets) budgets.push_back(b.describe());
  out["budgets"] = budgets;
  json strategies = json::array();
  for (const auto& s : spec.match.strategies) strategies.push_back(s.kind);
  out["strategies"] = strategies;
  json defections = json::array();
  for (const auto& run : report.defections) {
    json per_player = json::object();
    for (int i = 0; i < game.num_players(); ++i) {
      per_player[game.player_name(i)] = run[i] ? json(*run[i]) : json(nullptr);
    }
    defections.push_back(per_player);
  }
  out["defection_times"] = defections;
  const std::size_t last = report.checkpoints.size() - 1;
  json final_row;
  final_row["t"] = report.checkpoints[last];
  if (spec.with_distance) final_row["median_distance_to_hannan"] = number(report.distance[last].median);
  out["final"] = final_row;
  return out;
}

std::string record_csv(const Game& game, const PlayRecord& record) {
  std::ostringstream csv;
  csv << "t";
  for (int i = 0; i < game.num_players(); ++i) csv << ",action_" << game.player_name(i);
  for (int i = 0; i < game.num_players(); ++i) csv << ",payoff_" << game.player_name(i);
  csv << "\n";
  for (std::int64_t t = 0; t < record.rounds(); ++t) {
    csv << t + 1;
    for (int i = 0; i < game.num_players(); ++i) {
      csv << "," << game.action_label(i, game.action_of(record.profiles[t], i));
    }
    for (int i = 0; i < game.num_players(); ++i) csv << "," << format_number(record.payoffs[i][t]);
    csv << "\n";
  }
  return csv.str();
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
  if (opt.format != "csv" && opt.format != "json") {
    throw ConfigError("format", "expected csv or json");
  }
  const fs::path config_path(opt.config);
  json doc = load_document(config_path);
  if (!doc.is_object()) throw ConfigError("document", "expected a table/object");
  if (!opt.game.empty()) doc["game"] = fs::absolute(opt.game).string();
  if (opt.seed) doc["seed"] = *opt.seed;
  if (opt.seeds) doc["seeds"] = *opt.seeds;
  if (opt.horizon) doc["horizon"] = *opt.horizon;
  const ExperimentSpec spec = parse_experiment(doc, config_path.parent_path());
  const Game& game = *spec.match.game;

  const ReplicationReport report =
      replicate(spec.match, spec.seeds, spec.budgets, spec.with_distance, opt.threads);

  const fs::path dir(opt.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("out", "cannot create directory " + dir.string());
  if (opt.format == "csv") {
    write_file(dir / "diagnostics.csv", diagnostics_csv(game, spec, report));
  } else {
    write_file(dir / "diagnostics.json", diagnostics_json(game, spec, report).dump(2) + "\n");
  }
  write_file(dir / "summary.json", summary_json(game, spec, report).dump(2) + "\n");
  if (opt.record) {
    if (spec.seeds != 1) throw ConfigError("record", "play records need seeds = 1");
    MatchConfig run = spec.match;
    run.seed = report.seeds[0];
    write_file(dir / "record.csv", record_csv(game, run_match(run)));
  }

  const std::size_t last = report.checkpoints.size() - 1;
  out << "simulated " << spec.seeds << " run(s) of T=" << spec.match.horizon << "\n";
  if (spec.with_distance) {
    out << "median distance_to_hannan at T: " << format_number(report.distance[last].median)
        << "\n";
  }
  for (int i = 0; i < game.num_players(); ++i) {
    for (std::size_t b = 0; b < spec.budgets.size(); ++b) {
      out << "median regret " << game.player_name(i) << " [" << spec.budgets[b].describe()
          << "] at T: " << format_number(report.regret[last][i][b].median) << "\n";
    }
  }
  out << "wrote " << (dir / (opt.format == "csv" ? "diagnostics.csv" : "diagnostics.json")).string()
      << "\n";
  return kExitOk;
}

// ----------------------------------------------------------- regret-oracle

struct OracleOptions {
  std::string game;
  std::string record;
  double budget = 0.0;
  std::string player = "1";
  std::string format = "text";
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// Header names the opponents (by player name or number); a `t` column is
// ignored. Cells are action labels or 1-based numbers.
std::vector<OpponentActions> load_opponent_record(const Game& game, int player,
                                                  const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::vector<int> column_player;
  bool header = false;
  std::vector<OpponentActions> rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (!header) {
      header = true;
      std::vector<bool> seen(game.num_players(), false);
      for (const std::string& name : cells) {
        if (name == "t") {
          column_player.push_back(-1);
          continue;
        }
        const int p = game.find_player(name);
        if (p < 0 || p == player || seen[p]) {
          throw ConfigError("record", "header column '" + name + "' is not a distinct opponent");
        }
        seen[p] = true;
        column_player.push_back(p);
      }
      for (int p = 0; p < game.num_players(); ++p) {
        if (p != player && !seen[p]) {
          throw ConfigError("record", "header lacks opponent " + game.player_name(p));
        }
      }
      continue;
    }
    if (cells.size() != column_player.size()) {
      throw ConfigError("record", "line " + std::to_string(line_no) + " has the wrong width");
    }
    OpponentActions actions(game.num_players() - 1, 0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const int p = column_player[c];
      if (p < 0) continue;
      const int a = game.find_action(p, cells[c]);
      if (a < 0) {
        throw ConfigError("record", "line " + std::to_string(line_no) + ": unknown action '" +
                                        cells[c] + "'");
      }
      actions[p < player ? p : p - 1] = a;
    }
    rows.push_back(std::move(actions));
  }
  if (rows.empty()) throw ConfigError("record", "record has no rounds");
  return rows;
}

int cmd_regret_oracle(const OracleOptions& opt, std::ostream& out) {
  const Game game = load_game_or_config_error(opt.game);
  const int player = game.find_player(opt.player);
  if (player < 0) throw ConfigError("player", "unknown player '" + opt.player + "'");
  if (!(opt.budget >= 0.0)) throw ConfigError("budget", "must be >= 0");
  const std::vector<OpponentActions> record = load_opponent_record(game, player, opt.record);
  const BenchmarkResult result = best_dynamic_sequence(game, player, record, opt.budget);
  std::vector<std::string> labels;
  for (int a : result.sequence) labels.push_back(game.action_label(player, a));
  if (opt.format == "json") {
    json doc{{"value", number(result.value)},
             {"sequence", labels},
             {"switches_used", result.switches_used},
             {"rounds", record.size()},
             {"budget", number(opt.budget)}};
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  if (opt.format != "text") throw ConfigError("format", "expected text or json");
  out << "value " << format_number(result.value) << "\n";
  out << "sequence";
  for (const auto& l : labels) out << " " << l;
  out << "\nswitches_used " << result.switches_used << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ hannan

struct HannanOptions {
  std::string game;
  std::string format = "text";
  std::string distribution;
  std::size_t points = 100;
  std::uint64_t seed = 0;
  int threads = 0;
};

void emit(std::ostream& out, const std::string& format, const json& doc,
          const std::vector<std::pair<std::string, std::string>>& lines) {
  if (format == "json") {
    out << doc.dump(2) << "\n";
    return;
  }
  if (format != "text") throw ConfigError("format", "expected text or json");
  for (const auto& [k, v] : lines) out << k << " " << v << "\n";
}

int cmd_hannan_member(const HannanOptions& opt, std::ostream& out) {
  const Game game = load_game_or_config_error(opt.game);
  const JointDistribution q = parse_distribution(game, opt.distribution);
  const double violation = hannan_violation(game, q);
  const bool member = violation <= kHannanTolerance;
  json gains = json::array();
  std::vector<std::pair<std::string, std::string>> lines = {
      {"verdict", member ? "member" : "non-member"}, {"violation", format_number(violation)}};
  for (const DeviationGain& g : deviation_gains(game, q)) {
    const std::string who = game.player_name(g.player) + "->" +
                            game.action_label(g.player, g.deviation);
    gains.push_back({{"player", game.player_name(g.player)},
                     {"deviation", game.action_label(g.player, g.deviation)},
                     {"gain", number(g.gain)}});
    lines.emplace_back("gain " + who, format_number(g.gain));
  }
  emit(out, opt.format,
       {{"verdict", member ? "member" : "non-member"},
        {"violation", number(violation)},
        {"tolerance", number(kHannanTolerance)},
        {"gains", gains}},
       lines);
  return kExitOk;
}

int cmd_hannan_welfare(const HannanOptions& opt, Direction direction, std::ostream& out) {
  const Game game = load_game_or_config_error(opt.game);
  const LpResult r = extremal_social_welfare(game, direction);
  const std::string exact = r.exact_value ? to_string(*r.exact_value) : "";
  std::vector<std::pair<std::string, std::string>> lines = {
      {"value", format_number(r.value)}, {"argument", distribution_text(game, *r.argument)}};
  if (!exact.empty()) lines.emplace_back("exact", exact);
  json doc{{"value", number(r.value)}, {"argument", distribution_json(game, *r.argument)}};
  if (!exact.empty()) doc["exact"] = exact;
  emit(out, opt.format, doc, lines);
  return kExitOk;
}

int cmd_hannan_poa(const HannanOptions& opt, std::ostream& out) {
  const Game game = load_game_or_config_error(opt.game);
  double poa = 0.0;
  try {
    poa = price_of_anarchy(game);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("game", e.what());
  }
  const LpResult worst = extremal_social_welfare(game, Direction::kMin);
  const LpResult best = max_welfare(game);
  std::vector<std::pair<std::string, std::string>> lines = {
      {"poa", format_number(poa)},
      {"max_welfare", format_number(best.value)},
      {"min_hannan_welfare", format_number(worst.value)}};
  json doc{{"poa", number(poa)},
           {"max_welfare", number(best.value)},
           {"min_hannan_welfare", number(worst.value)}};
  if (best.exact_value && worst.exact_value && sgn(*worst.exact_value) != 0) {
    const std::string ratio = to_string(Rational(*best.exact_value / *worst.exact_value));
    lines.emplace_back("exact", ratio);
    doc["exact"] = ratio;
  }
  emit(out, opt.format, doc, lines);
  return kExitOk;
}

int cmd_hannan_distance(const HannanOptions& opt, std::ostream& out) {
  const Game game = load_game_or_config_error(opt.game);
  const JointDistribution q = parse_distribution(game, opt.distribution);
  const LpResult r = distance_to_hannan(game, q);
  std::vector<std::pair<std::string, std::string>> lines = {
      {"distance", format_number(r.value)}, {"closest", distribution_text(game, *r.argument)}};
  json doc{{"distance", number(r.value)}, {"closest", distribution_json(game, *r.argument)}};
  if (r.exact_value) {
    lines.emplace_back("exact", to_string(*r.exact_value));
    doc["exact"] = to_string(*r.exact_value);
  }
  emit(out, opt.format, doc, lines);
  return kExitOk;
}

int cmd_hannan_cloud(const HannanOptions& opt, std::ostream& out) {
  const Game game = load_game_or_config_error(opt.game);
  if (opt.points < 1) throw ConfigError("points", "must be >= 1");
  const auto cloud = boundary_cloud(game, opt.points, opt.seed, opt.threads);
  if (opt.format == "json") {
    json rows = json::array();
    for (const auto& point : cloud) {
      json row = json::object();
      for (std::size_t a = 0; a < point.size(); ++a) row[profile_key(game, a)] = number(point[a]);
      rows.push_back(row);
    }
    out << rows.dump(2) << "\n";
    return kExitOk;
  }
  if (opt.format != "csv" && opt.format != "text") {
    throw ConfigError("format", "expected csv or json");
  }
  out << "k";
  for (std::size_t a = 0; a < game.num_profiles(); ++a) out << ",q_" << profile_key(game, a);
  out << ",welfare\n";
  for (std::size_t k = 0; k < cloud.size(); ++k) {
    double welfare = 0.0;
    out << k;
    for (std::size_t a = 0; a < cloud[k].size(); ++a) {
      out << "," << format_number(cloud[k][a]);
      welfare += cloud[k][a] * social_welfare(game, a);
    }
    out << "," << format_number(welfare) << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------- bench

struct BenchOptions {
  std::int64_t horizon = 1 << 14;
  int actions = 4;
  std::int64_t switches = 64;
  int threads = 0;
  std::uint64_t seed = 1;
};

template <class F>
double time_seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_bench(const BenchOptions& opt, std::ostream& out) {
  if (opt.horizon < 1) throw ConfigError("horizon", "must be >= 1");
  if (opt.actions < 2) throw ConfigError("actions", "must be >= 2");
  if (opt.switches < 0) throw ConfigError("switches", "must be >= 0");
  Rng rng(opt.seed);
  RewardMatrix rewards;
  rewards.rounds = opt.horizon;
  rewards.actions = opt.actions;
  rewards.values.resize(static_cast<std::size_t>(opt.horizon) * opt.actions);
  for (double& v : rewards.values) v = rng.uniform();
  const int threads = resolve_threads(opt.threads);
  double serial_value = 0.0;
  double parallel_value = 0.0;
  const double serial = time_seconds(
      [&] { serial_value = best_dynamic_value_serial(rewards, opt.switches); });
  const double parallel = time_seconds(
      [&] { parallel_value = best_dynamic_value(rewards, opt.switches, threads); });
  out << "kernel,threads,horizon,actions,switches,seconds,value\n";
  out << "dp_serial,1," << opt.horizon << "," << opt.actions << "," << opt.switches << ","
      << format_number(serial) << "," << format_number(serial_value) << "\n";
  out << "dp_openmp," << threads << "," << opt.horizon << "," << opt.actions << ","
      << opt.switches << "," << format_number(parallel) << "," << format_number(parallel_value)
      << "\n";
  if (serial_value != parallel_value) {
    throw std::logic_error("serial and parallel kernels disagree");
  }
  return kExitOk;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"benchdyn: dynamic-benchmark learning laboratory for repeated games"};
  app.name("benchdyn");
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run matches and write diagnostics");
  simulate->add_option("--config", sim.config, "Experiment document (TOML or JSON)")->required();
  simulate->add_option("--game", sim.game, "Override the game file");
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--seeds", sim.seeds, "Number of replications");
  simulate->add_option("--horizon", sim.horizon, "Rounds per match");
  simulate->add_option("--out", sim.out, "Output directory");
  simulate->add_option("--format", sim.format, "csv or json");
  simulate->add_flag("--record", sim.record, "Also write the play record (seeds = 1)");
  simulate->add_option("--threads", sim.threads, "Replication threads (0: BENCHDYN_THREADS)");

  OracleOptions oracle;
  auto* regret = app.add_subcommand("regret-oracle", "Best switch-limited sequence in hindsight");
  regret->add_option("--game", oracle.game, "Game file")->required();
  regret->add_option("--record", oracle.record, "Opponent record CSV")->required();
  regret->add_option("--budget", oracle.budget, "Switch budget (floored)");
  regret->add_option("--player", oracle.player, "Player name or 1-based number");
  regret->add_option("--format", oracle.format, "text or json");

  HannanOptions han;
  auto* hannan = app.add_subcommand("hannan", "Hannan-set analysis");
  hannan->require_subcommand(1);
  hannan->add_option("--game", han.game, "Game file")->required();
  hannan->add_option("--format", han.format, "text or json (csv for boundary-cloud)");
  auto* member = hannan->add_subcommand("member", "Membership verdict for a distribution");
  member->add_option("distribution", han.distribution, "e.g. \"p_h,p_h=1\"")->required();
  auto* min_welfare = hannan->add_subcommand("min-welfare", "Worst welfare over the set");
  auto* max_hannan = hannan->add_subcommand("max-welfare", "Best welfare over the set");
  auto* poa = hannan->add_subcommand("poa", "Price of anarchy");
  auto* distance = hannan->add_subcommand("distance", "L1 distance to the set");
  distance->add_option("distribution", han.distribution, "e.g. \"p_l,p_h=1/2;p_h,p_l=1/2\"")
      ->required();
  auto* cloud = hannan->add_subcommand("boundary-cloud", "Sampled boundary points");
  cloud->add_option("n", han.points, "Number of points")->required();
  cloud->add_option("--seed", han.seed, "Sampling seed");
  cloud->add_option("--threads", han.threads, "Sampling threads");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the serial and OpenMP regret kernels");
  bench_cmd->add_option("--horizon", bench.horizon, "Rounds");
  bench_cmd->add_option("--actions", bench.actions, "Actions");
  bench_cmd->add_option("--switches", bench.switches, "Switch budget");
  bench_cmd->add_option("--threads", bench.threads, "Threads");
  bench_cmd->add_option("--seed", bench.seed, "Seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, out);
    if (regret->parsed()) return cmd_regret_oracle(oracle, out);
    if (member->parsed()) return cmd_hannan_member(han, out);
    if (min_welfare->parsed()) return cmd_hannan_welfare(han, Direction::kMin, out);
    if (max_hannan->parsed()) return cmd_hannan_welfare(han, Direction::kMax, out);
    if (poa->parsed()) return cmd_hannan_poa(han, out);
    if (distance->parsed()) return cmd_hannan_distance(han, out);
    if (cloud->parsed()) return cmd_hannan_cloud(han, out);
    if (bench_cmd->parsed()) return cmd_bench(bench, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GameError& e) {
    err << "config error: game: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  err << "internal error: no command ran\n";
  return kExitInternal;
}

}  // namespace benchdyn
