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

#include "benchdyn/hannan.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "benchdyn/parallel.h"
#include "benchdyn/rng.h"

namespace benchdyn {
namespace {

constexpr double kSmoothnessTolerance = 1e-9;

// Exact payoff tables, present when every payoff is a bounded fraction.
std::optional<std::vector<std::vector<Rational>>> rational_payoffs(const Game& game) {
  std::vector<std::vector<Rational>> out(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    out[i].reserve(game.num_profiles());
    for (double u : game.payoffs(i)) {
      std::optional<Rational> q = recover_rational(u);
      if (!q) return std::nullopt;
      out[i].push_back(*q);
    }
  }
  return out;
}

std::optional<std::vector<Rational>> rational_masses(const JointDistribution& q) {
  std::vector<Rational> out;
  out.reserve(q.size());
  for (double m : q.mass()) {
    std::optional<Rational> r = recover_rational(m);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return out;
}

// Payoff access over a generic scalar table.
template <class Scalar>
using PayoffTable = std::vector<std::vector<Scalar>>;

PayoffTable<double> double_payoffs(const Game& game) {
  PayoffTable<double> out(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    out[i].assign(game.payoffs(i).begin(), game.payoffs(i).end());
  }
  return out;
}

// Adds the Hannan rows over variables [offset, offset + |A|) of the LP.
template <class Scalar>
void add_hannan_rows(const Game& game, const PayoffTable<Scalar>& u, std::size_t offset,
                     LinearProgram<Scalar>& lp) {
  const std::size_t profiles = game.num_profiles();
  for (int i = 0; i < game.num_players(); ++i) {
    for (int x = 0; x < game.num_actions(i); ++x) {
      std::vector<Scalar> row(lp.num_vars, Scalar(0));
      for (std::size_t a = 0; a < profiles; ++a) {
        row[offset + a] = u[i][game.with_action(a, i, x)] - u[i][a];
      }
      lp.add_row(std::move(row), Relation::kLessEqual, Scalar(0));
    }
  }
  std::vector<Scalar> simplex(lp.num_vars, Scalar(0));
  for (std::size_t a = 0; a < profiles; ++a) simplex[offset + a] = Scalar(1);
  lp.add_row(std::move(simplex), Relation::kEqual, Scalar(1));
}

template <class Scalar>
LinearProgram<Scalar> welfare_lp(const Game& game, const PayoffTable<Scalar>& u,
                                 Direction direction) {
  LinearProgram<Scalar> lp;
  lp.num_vars = game.num_profiles();
  lp.maximize = direction == Direction::kMax;
  lp.objective.assign(lp.num_vars, Scalar(0));
  for (std::size_t a = 0; a < lp.num_vars; ++a) {
    for (int i = 0; i < game.num_players(); ++i) lp.objective[a] += u[i][a];
  }
  add_hannan_rows(game, u, 0, lp);
  return lp;
}

template <class Scalar>
LinearProgram<Scalar> distance_lp(const Game& game, const PayoffTable<Scalar>& u,
                                  const std::vector<Scalar>& q) {
  const std::size_t n = game.num_profiles();
  LinearProgram<Scalar> lp;
  lp.num_vars = 3 * n;  // q' | pos | neg
  lp.objective.assign(lp.num_vars, Scalar(0));
  for (std::size_t j = n; j < 3 * n; ++j) lp.objective[j] = Scalar(1);
  add_hannan_rows(game, u, 0, lp);
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<Scalar> row(lp.num_vars, Scalar(0));
    row[a] = Scalar(1);
    row[n + a] = Scalar(-1);
    row[2 * n + a] = Scalar(1);
    lp.add_row(std::move(row), Relation::kEqual, q[a]);
  }
  return lp;
}

double scalar_to_double(const Rational& v) { return to_double(v); }
double scalar_to_double(double v) { return v; }

// Clips solver noise and renormalizes onto the simplex.
JointDistribution to_distribution(const Game& game, std::vector<double> mass) {
  double total = 0.0;
  for (double& m : mass) {
    if (m < 0.0) m = 0.0;
    total += m;
  }
  for (double& m : mass) m /= total;
  return JointDistribution(game.action_counts(), std::move(mass));
}

template <class Scalar>
LpResult finish(const Game& game, const LpSolution<Scalar>& solution, std::size_t mass_vars) {
  LpResult out;
  out.status = solution.status;
  if (solution.status != LpStatus::kOptimal) return out;
  out.value = scalar_to_double(solution.value);
  std::vector<double> mass(mass_vars);
  for (std::size_t a = 0; a < mass_vars; ++a) mass[a] = scalar_to_double(solution.x[a]);
  out.argument = to_distribution(game, std::move(mass));
  if constexpr (std::is_same_v<Scalar, Rational>) out.exact_value = solution.value;
  return out;
}

void require_nonnegative(const Game& game, const char* what) {
  for (int i = 0; i < game.num_players(); ++i) {
    for (double u : game.payoffs(i)) {
      if (u < 0.0) throw std::invalid_argument(std::string(what) + " needs nonnegative payoffs");
    }
  }
}

double welfare_at(const Game& game, std::size_t a) { return social_welfare(game, a); }

// Maximizes the margin t with q_a >= t and row . q + t <= 0 for every
// nonzero Hannan row, so the result lies in the relative interior when the
// set has one. Degenerate sets fall back to the midpoint of the welfare
// extremes.
std::vector<double> interior_point(const Game& game) {
  const std::size_t n = game.num_profiles();
  LinearProgram<double> lp;
  lp.num_vars = n + 1;
  lp.maximize = true;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = 1.0;
  for (const HannanRow& h : hannan_constraints(game)) {
    if (std::all_of(h.coefficients.begin(), h.coefficients.end(),
                    [](double c) { return c == 0.0; })) {
      continue;
    }
    std::vector<double> row(h.coefficients);
    row.push_back(1.0);
    lp.add_row(std::move(row), Relation::kLessEqual, 0.0);
  }
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<double> row(n + 1, 0.0);
    row[a] = 1.0;
    row[n] = -1.0;
    lp.add_row(std::move(row), Relation::kGreaterEqual, 0.0);
  }
  std::vector<double> simplex(n, 1.0);
  simplex.push_back(0.0);
  lp.add_row(std::move(simplex), Relation::kEqual, 1.0);
  const LpSolution<double> sol = solve_lp(lp);
  std::vector<double> center(n);
  if (sol.status == LpStatus::kOptimal && sol.value > 1e-9) {
    std::copy(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n), center.begin());
    return center;
  }
  const LpResult low = extremal_social_welfare(game, Direction::kMin);
  const LpResult high = extremal_social_welfare(game, Direction::kMax);
  for (std::size_t a = 0; a < n; ++a) {
    center[a] = 0.5 * ((*low.argument)[a] + (*high.argument)[a]);
  }
  return center;
}

}  // namespace

std::vector<HannanRow> hannan_constraints(const Game& game) {
  std::vector<HannanRow> rows;
  for (int i = 0; i < game.num_players(); ++i) {
    for (int x = 0; x < game.num_actions(i); ++x) {
      HannanRow row{i, x, std::vector<double>(game.num_profiles())};
      for (std::size_t a = 0; a < game.num_profiles(); ++a) {
        row.coefficients[a] = game.payoff(i, game.with_action(a, i, x)) - game.payoff(i, a);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<DeviationGain> deviation_gains(const Game& game, const JointDistribution& q) {
  q.check_shape(game);
  std::vector<DeviationGain> out;
  for (const HannanRow& row : hannan_constraints(game)) {
    double gain = 0.0;
    for (std::size_t a = 0; a < q.size(); ++a) gain += q[a] * row.coefficients[a];
    out.push_back({row.player, row.deviation, gain});
  }
  return out;
}

double hannan_violation(const Game& game, const JointDistribution& q) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const DeviationGain& g : deviation_gains(game, q)) worst = std::max(worst, g.gain);
  return worst;
}

bool is_hannan_member(const Game& game, const JointDistribution& q, double tolerance) {
  return hannan_violation(game, q) <= tolerance;
}

bool has_rational_payoffs(const Game& game) { return rational_payoffs(game).has_value(); }

LpResult extremal_social_welfare(const Game& game, Direction direction) {
  LpResult out;
  if (auto exact = rational_payoffs(game)) {
    out = finish(game, solve_lp(welfare_lp(game, *exact, direction)), game.num_profiles());
  } else {
    out = finish(game, solve_lp(welfare_lp(game, double_payoffs(game), direction)),
                 game.num_profiles());
  }
  if (out.status != LpStatus::kOptimal) {
    throw std::logic_error("welfare LP over the Hannan set is not optimal");
  }
  return out;
}

LpResult max_welfare(const Game& game) {
  std::size_t best = 0;
  for (std::size_t a = 1; a < game.num_profiles(); ++a) {
    if (welfare_at(game, a) > welfare_at(game, best)) best = a;
  }
  LpResult out;
  out.status = LpStatus::kOptimal;
  out.value = welfare_at(game, best);
  out.argument = JointDistribution::dirac(game, game.profile_at(best));
  if (auto exact = rational_payoffs(game)) {
    Rational total = 0;
    for (int i = 0; i < game.num_players(); ++i) total += (*exact)[i][best];
    out.exact_value = total;
  }
  return out;
}

double price_of_anarchy(const Game& game) {
  require_nonnegative(game, "price of anarchy");
  const LpResult worst = extremal_social_welfare(game, Direction::kMin);
  const LpResult best = max_welfare(game);
  if (worst.exact_value && best.exact_value) {
    if (sgn(*worst.exact_value) == 0) return std::numeric_limits<double>::infinity();
    return to_double(Rational(*best.exact_value / *worst.exact_value));
  }
  if (worst.value <= 0.0) return std::numeric_limits<double>::infinity();
  return best.value / worst.value;
}

LpResult distance_to_hannan(const Game& game, const JointDistribution& q) {
  q.check_shape(game);
  const std::size_t n = game.num_profiles();
  LpResult out;
  auto exact_u = rational_payoffs(game);
  auto exact_q = rational_masses(q);
  if (exact_u && exact_q) {
    out = finish(game, solve_lp(distance_lp(game, *exact_u, *exact_q)), n);
  } else {
    std::vector<double> mass(q.mass().begin(), q.mass().end());
    out = finish(game, solve_lp(distance_lp(game, double_payoffs(game), mass)), n);
  }
  if (out.status != LpStatus::kOptimal) {
    throw std::logic_error("distance LP to the Hannan set is not optimal");
  }
  return out;
}

SmoothnessResult smoothness_check_serial(const Game& game, double lambda, double mu) {
  return smoothness_check(game, lambda, mu, 1);
}

SmoothnessResult smoothness_check(const Game& game, double lambda, double mu, int threads) {
  if (!(lambda >= 0.0) || !(mu >= 0.0)) throw std::invalid_argument("lambda, mu must be >= 0");
  require_nonnegative(game, "smoothness check");
  const std::size_t n = game.num_profiles();
  const int players = game.num_players();
  std::vector<double> welfare(n);
  for (std::size_t a = 0; a < n; ++a) welfare[a] = welfare_at(game, a);

  // Per-row maxima, reduced in row order so the first maximizer wins for
  // any thread count.
  std::vector<double> row_worst(n);
  std::vector<std::size_t> row_arg(n);
  const int team = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(team) if (team > 1 && n >= 64)
  for (std::ptrdiff_t sa = 0; sa < static_cast<std::ptrdiff_t>(n); ++sa) {
    const auto a = static_cast<std::size_t>(sa);
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t b = 0; b < n; ++b) {
      double unilateral = 0.0;
      for (int i = 0; i < players; ++i) {
        unilateral += game.payoff(i, game.with_action(a, i, game.action_of(b, i)));
      }
      const double violation = lambda * welfare[b] - mu * welfare[a] - unilateral;
      if (violation > worst) {
        worst = violation;
        arg = b;
      }
    }
    row_worst[a] = worst;
    row_arg[a] = arg;
  }
  SmoothnessResult out;
  out.worst_violation = row_worst[0];
  out.worst_a = 0;
  out.worst_a_prime = row_arg[0];
  for (std::size_t a = 1; a < n; ++a) {
    if (row_worst[a] > out.worst_violation) {
      out.worst_violation = row_worst[a];
      out.worst_a = a;
      out.worst_a_prime = row_arg[a];
    }
  }
  out.holds = out.worst_violation <= kSmoothnessTolerance;
  out.welfare_fraction = lambda / (1.0 + mu);
  return out;
}

std::vector<std::vector<double>> boundary_cloud(const Game& game, std::size_t n,
                                                std::uint64_t seed, int threads) {
  const std::size_t profiles = game.num_profiles();
  const std::vector<double> center = interior_point(game);
  const std::vector<HannanRow> rows = hannan_constraints(game);
  std::vector<double> row_at_center(rows.size(), 0.0);
  for (std::size_t h = 0; h < rows.size(); ++h) {
    for (std::size_t a = 0; a < profiles; ++a) {
      row_at_center[h] += rows[h].coefficients[a] * center[a];
    }
  }

  std::vector<std::vector<double>> cloud(n);
  const int team = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(team) if (team > 1)
  for (std::ptrdiff_t sk = 0; sk < static_cast<std::ptrdiff_t>(n); ++sk) {
    const auto k = static_cast<std::size_t>(sk);
    Rng rng(derive_seed(seed, k));
    std::vector<double> dir(profiles);
    double norm = 0.0;
    while (norm <= 1e-12) {
      double mean = 0.0;
      for (double& d : dir) {
        d = rng.normal();
        mean += d;
      }
      mean /= static_cast<double>(profiles);
      norm = 0.0;
      for (double& d : dir) {
        d -= mean;
        norm += std::abs(d);
      }
    }
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < profiles; ++a) {
      if (dir[a] < 0.0) step = std::min(step, center[a] / -dir[a]);
    }
    for (std::size_t h = 0; h < rows.size(); ++h) {
      double slope = 0.0;
      for (std::size_t a = 0; a < profiles; ++a) slope += rows[h].coefficients[a] * dir[a];
      if (slope > 0.0) step = std::min(step, std::max(0.0, -row_at_center[h]) / slope);
    }
    std::vector<double> point(profiles);
    for (std::size_t a = 0; a < profiles; ++a) {
      point[a] = std::max(0.0, center[a] + step * dir[a]);
    }
    cloud[k] = std::move(point);
  }
  return cloud;
}

}  // namespace benchdyn
