// Copyright 2026 The mirrorfit Authors
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

#include "mirrorfit/assignment.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace mirrorfit {

namespace {

struct LapSolution {
  std::vector<int> row_to_col;
  std::vector<double> u, v;  // dual potentials, 0-indexed
};

// Shortest-augmenting-path solver for the square min-cost assignment
// problem, O(n^3). Returns the matching and dual potentials satisfying
// cost(i,j) - u(i) - v(j) >= 0 with equality on matched edges (up to
// floating-point noise).
LapSolution solve_lap_min(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  LapSolution out;
  out.row_to_col.assign(n, -1);
  out.u.assign(n, 0.0);
  out.v.assign(n, 0.0);
  for (int j = 1; j <= n; ++j)
    if (p[j]) out.row_to_col[p[j] - 1] = j - 1;
  for (int i = 1; i <= n; ++i) out.u[i - 1] = u[i];
  for (int j = 1; j <= n; ++j) out.v[j - 1] = v[j];
  return out;
}

// Kuhn augmenting search over tight edges, skipping fixed columns.
bool augment(int row, const std::vector<std::vector<int>>& tight_cols,
             const std::vector<char>& fixed, std::vector<char>& visited,
             std::vector<int>& row_to_col, std::vector<int>& col_to_row) {
  for (int c : tight_cols[row]) {
    if (fixed[c] || visited[c]) continue;
    visited[c] = 1;
    if (col_to_row[c] < 0 ||
        augment(col_to_row[c], tight_cols, fixed, visited, row_to_col, col_to_row)) {
      row_to_col[row] = c;
      col_to_row[c] = row;
      return true;
    }
  }
  return false;
}

// Among all perfect matchings of the tight subgraph (which contains every
// optimal assignment), rewrite the matching so its assignment vector is
// lexicographically smallest.
void lexicographic_canonicalize(const Eigen::MatrixXd& cost, const LapSolution& duals,
                                std::vector<int>& row_to_col) {
  const int n = static_cast<int>(cost.rows());
  const double tau = 1e-9 * (1.0 + cost.cwiseAbs().maxCoeff());
  std::vector<std::vector<int>> tight_cols(n);
  bool any_choice = false;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (cost(i, j) - duals.u[i] - duals.v[j] <= tau) tight_cols[i].push_back(j);
    if (tight_cols[i].size() > 1) any_choice = true;
  }
  if (!any_choice) return;

  std::vector<int> col_to_row(n, -1);
  for (int i = 0; i < n; ++i) col_to_row[row_to_col[i]] = i;
  std::vector<char> fixed(n, 0);
  for (int i = 0; i < n; ++i) {
    const int current = row_to_col[i];
    for (int j : tight_cols[i]) {
      if (j >= current) break;  // tight_cols is ascending
      if (fixed[j]) continue;
      // Attempt to give column j to row i and re-match the displaced row.
      const int displaced = col_to_row[j];
      auto saved_rows = row_to_col;
      auto saved_cols = col_to_row;
      row_to_col[i] = j;
      col_to_row[j] = i;
      col_to_row[current] = -1;
      row_to_col[displaced] = -1;
      fixed[j] = 1;
      std::vector<char> visited(n, 0);
      if (augment(displaced, tight_cols, fixed, visited, row_to_col, col_to_row)) break;
      fixed[j] = 0;
      row_to_col = std::move(saved_rows);
      col_to_row = std::move(saved_cols);
    }
    fixed[row_to_col[i]] = 1;
  }
}

}  // namespace

Correspondence solve_assignment(const AssignmentProblem& prob) {
  const int n = static_cast<int>(prob.score.rows());
  if (n == 1) return Correspondence(1, {0});
  const Eigen::MatrixXd cost = -prob.score;
  LapSolution sol = solve_lap_min(cost);
  lexicographic_canonicalize(cost, sol, sol.row_to_col);
  std::vector<std::int32_t> target(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) target[static_cast<std::size_t>(i)] = sol.row_to_col[i];
  return Correspondence(n, std::move(target));
}

Correspondence solve_assignment_capped(const AssignmentProblem& prob, int k) {
  const Eigen::Index n = prob.score.rows();
  require(k >= 1 && 2 * static_cast<Eigen::Index>(k) <= n, ErrorCode::InvalidArgument,
          "pair cap must satisfy 1 <= 2k <= n");
  const Correspondence full = solve_assignment(prob);

  struct Unit {
    double score;
    int entries;
    std::int32_t a, b;
  };
  std::vector<Unit> units;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto t = full.target(i);
    if (t == static_cast<std::int32_t>(i)) {
      units.push_back({prob.score(i, i), 1, static_cast<std::int32_t>(i),
                       static_cast<std::int32_t>(i)});
    } else if (full.target(t) == static_cast<std::int32_t>(i) && t > i) {
      units.push_back({prob.score(i, t) + prob.score(t, i), 2, static_cast<std::int32_t>(i), t});
    }
    // Entries on longer cycles are not mutual and are dropped.
  }
  std::sort(units.begin(), units.end(), [](const Unit& lhs, const Unit& rhs) {
    if (lhs.score != rhs.score) return lhs.score > rhs.score;
    return lhs.a < rhs.a;
  });

  std::vector<std::int32_t> target(static_cast<std::size_t>(n), -1);
  int capacity = 2 * k;
  for (const auto& unit : units) {
    if (unit.entries > capacity) continue;
    capacity -= unit.entries;
    target[static_cast<std::size_t>(unit.a)] = unit.b;
    target[static_cast<std::size_t>(unit.b)] = unit.a;
    if (capacity == 0) break;
  }
  return Correspondence(n, std::move(target));
}

Eigen::MatrixXd assignment_scores(const PointCloud& cloud, const PointCloud& mirrored) {
  require(cloud.dim() == mirrored.dim() && cloud.count() == mirrored.count(),
          ErrorCode::DimensionMismatch, "cloud and mirrored cloud shapes differ");
  return cloud.points.transpose() * mirrored.points;
}

double assignment_objective(const Eigen::MatrixXd& score, const Correspondence& corr) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < corr.size(); ++i)
    if (corr.matched(i)) total += score(i, corr.target(i));
  return total;
}

}  // namespace mirrorfit
