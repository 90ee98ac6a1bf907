// Copyright 2026 The Semigame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "semigame/common.hpp"
#include "semigame/rational.hpp"

namespace semigame {

enum class LpRel { le, eq, ge };
enum class LpStatus { optimal, infeasible, unbounded };

template <class S>
struct LpScalarTraits;

template <>
struct LpScalarTraits<Rational> {
  static int sign(const Rational& x) { return sgn(x); }
};

template <>
struct LpScalarTraits<double> {
  static int sign(double x) {
    constexpr double eps = 1e-9;
    if (x > eps) return 1;
    if (x < -eps) return -1;
    return 0;
  }
};

// min c.x  subject to  rows (a.x REL b)  and  x >= 0.
template <class S>
struct LinearProgramT {
  struct Row {
    std::vector<S> coeffs;
    LpRel rel;
    S rhs;
  };

  explicit LinearProgramT(int vars) : num_vars(vars), objective(vars, S(0)) {
    require(vars >= 1, "linear program needs at least one variable");
  }

  void set_objective(std::vector<S> c) {
    require(static_cast<int>(c.size()) == num_vars, "objective size mismatch");
    objective = std::move(c);
  }

  void add_row(std::vector<S> coeffs, LpRel rel, S rhs) {
    require(static_cast<int>(coeffs.size()) == num_vars, "constraint size mismatch");
    rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
  }

  int num_vars;
  std::vector<S> objective;
  std::vector<Row> rows;
};

template <class S>
struct LpSolutionT {
  LpStatus status = LpStatus::infeasible;
  S objective = S(0);
  std::vector<S> x;
};

using LinearProgram = LinearProgramT<Rational>;
using LpSolution = LpSolutionT<Rational>;

// Dense two-phase primal simplex with Bland's anti-cycling rule: entering
// column is the lowest index with negative reduced cost, the leaving row
// breaks ratio ties by lowest basic variable index.  With exact scalars this
// terminates and the optimum is exact; the double instantiation exists for
// the monitoring backend only.
template <class S>
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgramT<S>& lp) : lp_(lp) { build(); }

  LpSolutionT<S> solve() {
    LpSolutionT<S> result;
    // Phase 1: minimize the artificial sum (bounded below by zero, so it
    // cannot be unbounded).
    if (num_artificial_ > 0) {
      ensure(run(phase1_cost_), "phase 1 reported unbounded");
      if (sign(phase1_cost_[total_cols_]) != 0) {
        result.status = LpStatus::infeasible;
        return result;
      }
      expel_artificials();
    }
    // Phase 2 on the true objective.
    if (!run(phase2_cost_)) {
      result.status = LpStatus::unbounded;
      return result;
    }
    result.status = LpStatus::optimal;
    result.x.assign(lp_.num_vars, S(0));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] < lp_.num_vars) result.x[basis_[i]] = rhs(i);
    }
    result.objective = -phase2_cost_[total_cols_];
    return result;
  }

 private:
  static int sign(const S& x) { return LpScalarTraits<S>::sign(x); }

  S& cell(std::size_t row, int col) { return tableau_[row][col]; }
  S& rhs(std::size_t row) { return tableau_[row][total_cols_]; }

  void build() {
    const int n = lp_.num_vars;
    const int m = static_cast<int>(lp_.rows.size());

    // Column layout: structural | slack/surplus | artificial | rhs.
    std::vector<int> slack_col(m, -1);
    std::vector<bool> needs_artificial(m, false);
    int next = n;
    for (int i = 0; i < m; ++i) {
      if (lp_.rows[i].rel != LpRel::eq) slack_col[i] = next++;
    }
    const int artificial_start = next;

    // Normalize rhs >= 0, then decide which rows start on an artificial.
    std::vector<std::vector<S>> coeffs(m);
    std::vector<S> b(m, S(0));
    std::vector<int> slack_sign(m, 0);
    for (int i = 0; i < m; ++i) {
      coeffs[i] = lp_.rows[i].coeffs;
      b[i] = lp_.rows[i].rhs;
      LpRel rel = lp_.rows[i].rel;
      if (sign(b[i]) < 0) {
        for (auto& c : coeffs[i]) c = -c;
        b[i] = -b[i];
        if (rel == LpRel::le) rel = LpRel::ge;
        else if (rel == LpRel::ge) rel = LpRel::le;
      }
      if (rel == LpRel::le) {
        slack_sign[i] = 1;  // slack is a valid starting basic variable
      } else if (rel == LpRel::ge) {
        slack_sign[i] = -1;
        needs_artificial[i] = true;
      } else {
        needs_artificial[i] = true;
      }
    }
    num_artificial_ = 0;
    std::vector<int> artificial_col(m, -1);
    for (int i = 0; i < m; ++i)
      if (needs_artificial[i]) artificial_col[i] = artificial_start + num_artificial_++;
    total_cols_ = artificial_start + num_artificial_;
    first_artificial_ = artificial_start;
    banned_.assign(total_cols_, false);

    tableau_.assign(m, std::vector<S>(total_cols_ + 1, S(0)));
    basis_.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) cell(i, j) = coeffs[i][j];
      if (slack_col[i] >= 0) cell(i, slack_col[i]) = S(slack_sign[i]);
      if (artificial_col[i] >= 0) cell(i, artificial_col[i]) = S(1);
      rhs(i) = b[i];
      basis_[i] = needs_artificial[i] ? artificial_col[i] : slack_col[i];
    }

    // Reduced-cost rows, with the running objective in the rhs slot
    // (stored negated: value = -cost_row[total_cols_]).
    phase1_cost_.assign(total_cols_ + 1, S(0));
    for (int j = first_artificial_; j < total_cols_; ++j) phase1_cost_[j] = S(1);
    for (int i = 0; i < m; ++i) {
      if (!needs_artificial[i]) continue;
      for (int j = 0; j <= total_cols_; ++j) phase1_cost_[j] -= cell(i, j);
    }
    phase2_cost_.assign(total_cols_ + 1, S(0));
    for (int j = 0; j < n; ++j) phase2_cost_[j] = lp_.objective[j];
    // Starting basics (slacks/artificials) have zero true cost, so the
    // phase-2 row needs no initial adjustment.
  }

  // Runs the simplex loop against the given cost row.  Returns false when the
  // problem is unbounded in the minimizing direction.
  bool run(std::vector<S>& cost) {
    const std::size_t m = tableau_.size();
    const long iteration_cap =
        100000L + 1000L * static_cast<long>(m + 1) * (total_cols_ + 1);
    for (long iter = 0; iter < iteration_cap; ++iter) {
      int entering = -1;
      for (int j = 0; j < total_cols_; ++j) {
        if (banned_[j]) continue;
        if (sign(cost[j]) < 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;  // optimal

      int leaving = -1;
      for (std::size_t i = 0; i < m; ++i) {
        if (sign(cell(i, entering)) <= 0) continue;
        if (leaving < 0) {
          leaving = static_cast<int>(i);
          continue;
        }
        // Compare rhs(i)/cell(i,e) against rhs(leaving)/cell(leaving,e) by
        // cross multiplication (both pivots are positive).
        const S lhs = rhs(i) * cell(leaving, entering);
        const S rhs_cmp = rhs(leaving) * cell(i, entering);
        const int c = sign(lhs - rhs_cmp);
        if (c < 0 || (c == 0 && basis_[i] < basis_[leaving])) {
          leaving = static_cast<int>(i);
        }
      }
      if (leaving < 0) return false;  // unbounded
      pivot(static_cast<std::size_t>(leaving), entering);
    }
    throw internal_error("simplex iteration cap exceeded");
  }

  void pivot(std::size_t row, int col) {
    const S pivot_value = cell(row, col);
    ensure(sign(pivot_value) > 0, "pivot element must be positive");
    for (int j = 0; j <= total_cols_; ++j) tableau_[row][j] /= pivot_value;
    for (std::size_t r = 0; r < tableau_.size(); ++r) {
      if (r == row) continue;
      const S factor = cell(r, col);
      if (sign(factor) == 0) continue;
      for (int j = 0; j <= total_cols_; ++j) tableau_[r][j] -= factor * tableau_[row][j];
    }
    eliminate_from_cost(phase1_cost_, row, col);
    eliminate_from_cost(phase2_cost_, row, col);
    basis_[row] = col;
  }

  void eliminate_from_cost(std::vector<S>& cost, std::size_t row, int col) {
    const S factor = cost[col];
    if (sign(factor) == 0) return;
    for (int j = 0; j <= total_cols_; ++j) cost[j] -= factor * tableau_[row][j];
  }

  // After a feasible phase 1, pivot remaining artificials out of the basis
  // (their values are zero); rows that cannot be pivoted are redundant and
  // get dropped.  Artificial columns are banned from ever re-entering.
  void expel_artificials() {
    for (std::size_t i = 0; i < tableau_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < first_artificial_; ++j) {
        if (sign(cell(i, j)) != 0) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        // Degenerate pivot: basis value is zero, so positivity of the pivot
        // element is not required; flip the row sign if needed.
        if (sign(cell(i, col)) < 0) {
          for (int j = 0; j <= total_cols_; ++j) tableau_[i][j] = -tableau_[i][j];
        }
        pivot(i, col);
        ++i;
      } else {
        tableau_.erase(tableau_.begin() + static_cast<long>(i));
        basis_.erase(basis_.begin() + static_cast<long>(i));
      }
    }
    for (int j = first_artificial_; j < total_cols_; ++j) banned_[j] = true;
  }

  const LinearProgramT<S>& lp_;
  std::vector<std::vector<S>> tableau_;
  std::vector<S> phase1_cost_, phase2_cost_;
  std::vector<int> basis_;
  std::vector<bool> banned_;
  int total_cols_ = 0;
  int first_artificial_ = 0;
  int num_artificial_ = 0;
};

template <class S>
LpSolutionT<S> solve_lp(const LinearProgramT<S>& lp) {
  return SimplexSolver<S>(lp).solve();
}

}  // namespace semigame
