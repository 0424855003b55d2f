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

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "mirrorfit/assignment.hpp"
#include "mirrorfit/synth.hpp"

using namespace mirrorfit;
using namespace mirrorfit::testing;

namespace {

double brute_force_max(const Eigen::MatrixXd& score, std::vector<int>* best_out = nullptr) {
  const int n = static_cast<int>(score.rows());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> best_perm;
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += score(i, perm[i]);
    if (total > best) {
      best = total;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best_out) *best_out = best_perm;
  return best;
}

Eigen::MatrixXd random_scores(int n, Rng& rng) {
  Eigen::MatrixXd c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = rng.uniform(-5.0, 5.0);
  return c;
}

}  // namespace

TEST_CASE("a symmetric pair about y=0 is matched as a swap") {
  Eigen::MatrixXd pts(2, 2);
  pts << 1.0, 1.0, 1.0, -1.0;
  const PointCloud cloud(pts);
  const auto mirrored = reflect_points(cloud, ReflectionTransform::identity(2));
  const auto corr = solve_assignment(AssignmentProblem(assignment_scores(cloud, mirrored)));
  CHECK(corr.target(0) == 1);
  CHECK(corr.target(1) == 0);
}

TEST_CASE("a dominant diagonal selects the identity") {
  Eigen::MatrixXd c = Eigen::MatrixXd::Constant(5, 5, 0.1);
  c.diagonal().setConstant(10.0);
  const auto corr = solve_assignment(AssignmentProblem(c));
  for (Eigen::Index i = 0; i < 5; ++i) CHECK(corr.target(i) == i);
}

TEST_CASE("random 7x7 scores match the exhaustive maximum") {
  Rng rng(61);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::MatrixXd c = random_scores(7, rng);
    const auto corr = solve_assignment(AssignmentProblem(c));
    CHECK(assignment_objective(c, corr) ==
          doctest::Approx(brute_force_max(c)).epsilon(1e-12));
  }
}

TEST_CASE("exact optimality across sizes 1..8") {
  Rng rng(67);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + rep % 8;
    const Eigen::MatrixXd c = random_scores(n, rng);
    const auto corr = solve_assignment(AssignmentProblem(c));
    CHECK(corr.is_full_permutation());
    CHECK(assignment_objective(c, corr) ==
          doctest::Approx(brute_force_max(c)).epsilon(1e-12));
  }
}

TEST_CASE("output is a valid permutation (row and column sums exactly 1)") {
  Rng rng(71);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + rep * 5;
    const auto corr = solve_assignment(AssignmentProblem(random_scores(n, rng)));
    CHECK(corr.is_full_permutation());
    std::vector<int> col_hits(static_cast<std::size_t>(n), 0);
    for (Eigen::Index i = 0; i < n; ++i) ++col_hits[static_cast<std::size_t>(corr.target(i))];
    for (int hits : col_hits) CHECK(hits == 1);
  }
}

TEST_CASE("ties break toward the lexicographically smallest assignment vector") {
  SUBCASE("all-equal scores give the identity") {
    const auto corr = solve_assignment(AssignmentProblem(Eigen::MatrixXd::Ones(4, 4)));
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(corr.target(i) == i);
  }
  SUBCASE("a two-block tie keeps the first row on its smallest column") {
    // Rows 0/1 tie across columns 0/1; the unique optimum elsewhere.
    Eigen::MatrixXd c(3, 3);
    c << 5.0, 5.0, 0.0,
         5.0, 5.0, 0.0,
         0.0, 0.0, 7.0;
    const auto corr = solve_assignment(AssignmentProblem(c));
    CHECK(corr.target(0) == 0);
    CHECK(corr.target(1) == 1);
    CHECK(corr.target(2) == 2);
  }
  SUBCASE("swap-symmetric optima pick the smaller leading target") {
    // Both the identity and the swap reach the same total.
    Eigen::MatrixXd c(2, 2);
    c << 1.0, 3.0,
         3.0, 1.0;
    const auto corr = solve_assignment(AssignmentProblem(c));
    // Optimal value 6 is only reached by the swap; with a genuine tie:
    Eigen::MatrixXd tied(2, 2);
    tied << 2.0, 2.0,
            2.0, 2.0;
    const auto tie_corr = solve_assignment(AssignmentProblem(tied));
    CHECK(corr.target(0) == 1);
    CHECK(tie_corr.target(0) == 0);
    CHECK(tie_corr.target(1) == 1);
  }
}

TEST_CASE("mutual matching on noiseless ground-truth instances") {
  Rng rng(73);
  for (int rep = 0; rep < 10; ++rep) {
    SynthSpec spec;
    spec.dim = 2 + rep % 3;
    spec.half_count = 8;
    // Plane through the origin keeps C = X' X_m symmetric.
    spec.transform = transform_from_plane(rng.normal_vector(spec.dim).normalized(),
                                          Eigen::VectorXd::Zero(spec.dim));
    spec.seed = 500 + rep;
    const auto inst = generate(spec);
    const auto mirrored = reflect_points(inst.cloud, spec.transform);
    const Eigen::MatrixXd c = assignment_scores(inst.cloud, mirrored);
    CHECK((c - c.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const auto corr = solve_assignment(AssignmentProblem(c));
    CHECK(corr.is_mutual());
    CHECK(corr == inst.truth.pairs);
  }
}

TEST_CASE("Frobenius and trace objectives select the same permutation") {
  Rng rng(79);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::Index d = 2 + rep % 3;
    const int n = 5 + rep % 3;  // up to 7
    const auto cloud = random_cloud(d, n, rng);
    const auto xf = random_transform(d, rng);
    const auto mirrored = reflect_points(cloud, xf);
    const Eigen::MatrixXd c = assignment_scores(cloud, mirrored);

    std::vector<int> trace_best;
    brute_force_max(c, &trace_best);

    // Brute-force minimum of || X_m - X P ||_F^2 over permutations.
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> frob_best;
    do {
      double cost = 0.0;
      for (int i = 0; i < n; ++i)
        cost += (mirrored.points.col(perm[i]) - cloud.points.col(i)).squaredNorm();
      if (cost < best_cost) {
        best_cost = cost;
        frob_best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    CHECK(trace_best == frob_best);
    const auto corr = solve_assignment(AssignmentProblem(c));
    for (int i = 0; i < n; ++i) CHECK(corr.target(i) == trace_best[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("capped assignment") {
  SUBCASE("inactive cap reproduces the full assignment") {
    Rng rng(83);
    SynthSpec spec;
    spec.dim = 2;
    spec.half_count = 6;
    spec.transform = transform_from_plane(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d::Zero());
    spec.seed = 7;
    const auto inst = generate(spec);
    const auto mirrored = reflect_points(inst.cloud, spec.transform);
    const AssignmentProblem prob(assignment_scores(inst.cloud, mirrored));
    const auto full = solve_assignment(prob);
    const auto capped = solve_assignment_capped(prob, 6);
    CHECK(full == capped);
  }

  SUBCASE("outliers are the unmatched points under a tight cap") {
    // Four symmetric points about x=0 plus two small off-pattern points
    // whose retained-unit score is strictly the lowest.
    Eigen::MatrixXd pts(2, 6);
    pts << 1.0, -1.0, 2.0, -2.0, 0.3, 0.2,
           1.0, 1.0, -1.0, -1.0, 0.2, -0.25;
    const PointCloud cloud(pts);
    const auto xf = transform_from_plane(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d::Zero());
    const auto mirrored = reflect_points(cloud, xf);
    const AssignmentProblem prob(assignment_scores(cloud, mirrored));
    const auto full = solve_assignment(prob);
    CHECK(full.target(0) == 1);  // true pairs survive the full solve
    CHECK(full.target(2) == 3);
    const auto capped = solve_assignment_capped(prob, 2);  // n/2 - 1
    CHECK(capped.matched_count() <= 4);
    CHECK_FALSE(capped.matched(4));
    CHECK_FALSE(capped.matched(5));
    CHECK(capped.target(0) == 1);
    CHECK(capped.target(2) == 3);
  }

  SUBCASE("k=1 keeps exactly the best mutual pair") {
    Rng rng(89);
    for (int rep = 0; rep < 5; ++rep) {
      SynthSpec spec;
      spec.dim = 2;
      spec.half_count = 3;
      spec.transform = transform_from_plane(rng.normal_vector(2).normalized(),
                                            Eigen::VectorXd::Zero(2));
      spec.seed = 900 + rep;
      const auto inst = generate(spec);
      const auto mirrored = reflect_points(inst.cloud, spec.transform);
      const Eigen::MatrixXd c = assignment_scores(inst.cloud, mirrored);
      const auto capped = solve_assignment_capped(AssignmentProblem(c), 1);
      CHECK(capped.matched_count() == 2);
      CHECK(capped.is_mutual());

      // Exhaustive best mutual pair.
      double best = -std::numeric_limits<double>::infinity();
      int best_i = -1, best_j = -1;
      for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
          if (c(i, j) + c(j, i) > best) {
            best = c(i, j) + c(j, i);
            best_i = i;
            best_j = j;
          }
      CHECK(capped.target(best_i) == best_j);
      CHECK(capped.target(best_j) == best_i);
    }
  }

  SUBCASE("cap bounds are validated") {
    const AssignmentProblem prob(Eigen::MatrixXd::Ones(4, 4));
    CHECK_THROWS_AS(solve_assignment_capped(prob, 0), Error);
    CHECK_THROWS_AS(solve_assignment_capped(prob, 3), Error);
  }
}

TEST_CASE("non-finite scores are rejected") {
  Eigen::MatrixXd c = Eigen::MatrixXd::Ones(3, 3);
  c(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(AssignmentProblem{c}, Error);
}
