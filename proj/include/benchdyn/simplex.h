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

#ifndef BENCHDYN_SIMPLEX_H_
#define BENCHDYN_SIMPLEX_H_

// Dense two-phase tableau simplex with Bland's rule. Instantiated over
// mpq_class (exact pivoting) and double (absolute tolerance 1e-9).

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace benchdyn {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

// minimize (or maximize) objective . x  s.t.  rows[i] . x  (rel[i])  rhs[i],
// x >= 0.
template <class Scalar>
struct LinearProgram {
  std::size_t num_vars = 0;
  bool maximize = false;
  std::vector<Scalar> objective;
  std::vector<std::vector<Scalar>> rows;
  std::vector<Relation> relations;
  std::vector<Scalar> rhs;

  void add_row(std::vector<Scalar> row, Relation rel, Scalar b) {
    if (row.size() != num_vars) throw std::invalid_argument("LP row has wrong width");
    rows.push_back(std::move(row));
    relations.push_back(rel);
    rhs.push_back(std::move(b));
  }
};

template <class Scalar>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Scalar value{};
  std::vector<Scalar> x;
};

namespace simplex_detail {

template <class Scalar>
struct Tolerance;

template <>
struct Tolerance<mpq_class> {
  static bool positive(const mpq_class& v) { return sgn(v) > 0; }
  static bool negative(const mpq_class& v) { return sgn(v) < 0; }
  static bool zero(const mpq_class& v) { return sgn(v) == 0; }
};

template <>
struct Tolerance<double> {
  static constexpr double kEps = 1e-9;
  static bool positive(double v) { return v > kEps; }
  static bool negative(double v) { return v < -kEps; }
  static bool zero(double v) { return std::abs(v) <= kEps; }
};

template <class Scalar>
class Tableau {
 public:
  using Tol = Tolerance<Scalar>;

  Tableau(std::size_t rows, std::size_t cols)
      : cells_(rows, std::vector<Scalar>(cols + 1)), cost_(cols + 1), basis_(rows) {}

  Scalar& at(std::size_t r, std::size_t c) { return cells_[r][c]; }
  Scalar& rhs(std::size_t r) { return cells_[r].back(); }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t num_rows() const { return cells_.size(); }
  std::size_t num_cols() const { return cost_.size() - 1; }

  // Loads reduced costs c_j - c_B B^-1 A_j for the current basis.
  void set_costs(const std::vector<Scalar>& c) {
    for (std::size_t j = 0; j <= num_cols(); ++j) cost_[j] = j < num_cols() ? c[j] : Scalar(0);
    for (std::size_t r = 0; r < num_rows(); ++r) {
      const Scalar cb = c[basis_[r]];
      if (Tol::zero(cb)) continue;
      for (std::size_t j = 0; j <= num_cols(); ++j) cost_[j] -= cb * cells_[r][j];
    }
  }

  // Objective value of the current basic solution.
  Scalar objective() const { return -cost_.back(); }

  void pivot(std::size_t pr, std::size_t pc) {
    const Scalar inv = Scalar(1) / cells_[pr][pc];
    for (auto& v : cells_[pr]) v *= inv;
    cells_[pr][pc] = Scalar(1);
    for (std::size_t r = 0; r < num_rows(); ++r) {
      if (r == pr) continue;
      eliminate(cells_[r], pr, pc);
    }
    eliminate(cost_, pr, pc);
    basis_[pr] = pc;
  }

  // Runs Bland's rule over columns < allowed. Returns false when unbounded.
  bool optimize(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (Tol::negative(cost_[j])) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = num_rows();
      Scalar best_ratio{};
      for (std::size_t r = 0; r < num_rows(); ++r) {
        if (!Tol::positive(cells_[r][enter])) continue;
        Scalar ratio = cells_[r].back() / cells_[r][enter];
        if (leave == num_rows() || ratio < best_ratio ||
            (!(best_ratio < ratio) && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == num_rows()) return false;
      pivot(leave, enter);
    }
  }

 private:
  void eliminate(std::vector<Scalar>& row, std::size_t pr, std::size_t pc) {
    if (Tol::zero(row[pc])) {
      row[pc] = Scalar(0);
      return;
    }
    const Scalar factor = row[pc];
    const auto& prow = cells_[pr];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!Tol::zero(prow[j])) row[j] -= factor * prow[j];
    }
    row[pc] = Scalar(0);
  }

  std::vector<std::vector<Scalar>> cells_;
  std::vector<Scalar> cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace simplex_detail

template <class Scalar>
LpSolution<Scalar> solve_lp(const LinearProgram<Scalar>& lp) {
  using Tol = simplex_detail::Tolerance<Scalar>;
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n || lp.relations.size() != m || lp.rhs.size() != m) {
    throw std::invalid_argument("inconsistent LP dimensions");
  }

  // Column layout: structural | slack/surplus | artificial.
  std::size_t slacks = 0;
  for (Relation rel : lp.relations) slacks += rel != Relation::kEqual;
  std::vector<bool> flipped(m);
  std::vector<bool> needs_artificial(m);
  std::size_t artificials = 0;
  for (std::size_t i = 0; i < m; ++i) {
    flipped[i] = Tol::negative(lp.rhs[i]);
    Relation rel = lp.relations[i];
    if (flipped[i] && rel != Relation::kEqual) {
      rel = rel == Relation::kLessEqual ? Relation::kGreaterEqual : Relation::kLessEqual;
    }
    needs_artificial[i] = rel != Relation::kLessEqual;
    artificials += needs_artificial[i];
  }
  const std::size_t cols = n + slacks + artificials;
  simplex_detail::Tableau<Scalar> tab(m, cols);
  std::size_t next_slack = n;
  std::size_t next_artificial = n + slacks;
  for (std::size_t i = 0; i < m; ++i) {
    const Scalar sign = flipped[i] ? Scalar(-1) : Scalar(1);
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign * lp.rows[i][j];
    tab.rhs(i) = sign * lp.rhs[i];
    if (lp.relations[i] != Relation::kEqual) {
      const bool less = (lp.relations[i] == Relation::kLessEqual) != flipped[i];
      tab.at(i, next_slack) = less ? Scalar(1) : Scalar(-1);
      if (less) tab.basic(i) = next_slack;
      ++next_slack;
    }
    if (needs_artificial[i]) {
      tab.at(i, next_artificial) = Scalar(1);
      tab.basic(i) = next_artificial;
      ++next_artificial;
    }
  }

  LpSolution<Scalar> out;
  if (artificials > 0) {
    std::vector<Scalar> phase1(cols, Scalar(0));
    for (std::size_t j = n + slacks; j < cols; ++j) phase1[j] = Scalar(1);
    tab.set_costs(phase1);
    tab.optimize(cols);
    if (Tol::positive(tab.objective())) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    // Drive zero-valued artificials out where a structural pivot exists;
    // rows without one are redundant and stay inert.
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basic(r) < n + slacks) continue;
      for (std::size_t j = 0; j < n + slacks; ++j) {
        if (!Tol::zero(tab.at(r, j))) {
          tab.pivot(r, j);
          break;
        }
      }
    }
  }

  std::vector<Scalar> phase2(cols, Scalar(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.maximize ? -lp.objective[j] : lp.objective[j];
  tab.set_costs(phase2);
  if (!tab.optimize(n + slacks)) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.x.assign(n, Scalar(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basic(r) < n) out.x[tab.basic(r)] = tab.rhs(r);
  }
  out.value = Scalar(0);
  for (std::size_t j = 0; j < n; ++j) out.value += lp.objective[j] * out.x[j];
  return out;
}

}  // namespace benchdyn

#endif  // BENCHDYN_SIMPLEX_H_
