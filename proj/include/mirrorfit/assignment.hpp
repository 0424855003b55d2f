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

#pragma once

#include <optional>

#include <Eigen/Core>

#include "mirrorfit/types.hpp"

namespace mirrorfit {

/// Mirror-correspondence estimation at a fixed transform. The score matrix
/// is C = X' X_m: entry (i, j) scores matching point i onto the reflected
/// image of point j, and the optimal P maximizes trace(X_m' X P).
struct AssignmentProblem {
  Eigen::MatrixXd score;          // n x n, finite
  std::optional<int> cap;         // limit matched entries to <= 2 * cap

  explicit AssignmentProblem(Eigen::MatrixXd c, std::optional<int> k = std::nullopt)
      : score(std::move(c)), cap(k) {
    require(score.rows() == score.cols(), ErrorCode::InvalidArgument,
            "score matrix must be square");
    require(score.rows() >= 1, ErrorCode::InvalidArgument, "score matrix is empty");
    require(score.allFinite(), ErrorCode::InvalidArgument,
            "score matrix contains non-finite values");
  }
};

/// Exact maximum-score full assignment (shortest augmenting path, O(n^3)).
/// Among optimal permutations, returns the one with the lexicographically
/// smallest assignment vector (sigma(0), sigma(1), ...).
Correspondence solve_assignment(const AssignmentProblem& prob);

/// Partial matching with at most 2k matched entries: solves the full
/// assignment, decomposes it into self-pairs and mutual pairs, then keeps
/// units in decreasing order of total score while capacity remains. Units
/// are kept or dropped whole, preserving P(i,i') == P(i',i). Entries lying
/// on longer (non-mutual) cycles of the full assignment cannot be kept
/// without breaking that symmetry and are dropped.
Correspondence solve_assignment_capped(const AssignmentProblem& prob, int k);

/// Score matrix builder: C = X' X_m.
Eigen::MatrixXd assignment_scores(const PointCloud& cloud, const PointCloud& mirrored);

/// Sum of scores over matched entries of a correspondence.
double assignment_objective(const Eigen::MatrixXd& score, const Correspondence& corr);

}  // namespace mirrorfit
