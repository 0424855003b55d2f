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

#include <cstdint>
#include <optional>
#include <vector>

#include "mirrorfit/reflection.hpp"
#include "mirrorfit/rng.hpp"
#include "mirrorfit/trust_region.hpp"
#include "mirrorfit/types.hpp"

namespace mirrorfit {

struct DetectConfig {
  double eps_theta = 5.0 * M_PI / 180.0;  // candidate-plane angle tolerance, radians
  double eps_d = 0.05;                    // candidate-plane distance-ratio tolerance
  int init_trials = 10;
  int max_alternations = 50;
  double cost_rel_tol = 1e-10;
  std::optional<int> pair_cap;
  std::uint64_t rng_seed = 0;
  Eigen::Index subsample_threshold = 2000;
  TrustRegionConfig tr;
};

struct SymmetryResult {
  ReflectionTransform transform = ReflectionTransform::identity(2);
  Hyperplane plane;
  Correspondence correspondence;
  double final_cost = 0.0;
  int alternations = 0;
  Hyperplane init_plane;

  // Diagnostics.
  std::vector<double> cost_trace;       // cost after init and after each half-step
  std::vector<Eigen::Index> subsample;  // original indices when subsampling was applied
  double grad_norm = 0.0;
  bool converged = false;
};

struct InitialGuess {
  Hyperplane plane;
  Eigen::VectorXd translation;
};

/// Randomized candidate-pair voting. Per trial, two anchor points are
/// drawn; the pairs of the first anchor are ranked by how well their plane
/// mirrors the cloud onto itself (reflected-nearest-neighbor support on a
/// seeded probe subset) and the best one votes; a pair of the second
/// anchor whose plane agrees with the vote under the angle and
/// distance-ratio tolerances adds a second vote. The winning plane is the
/// componentwise median inside the largest cluster of mutually consistent
/// votes (normals sign-aligned first), and the translation seed is the
/// median of that cluster's pair midpoints. Throws
/// ErrorCode::InitializationFailure when no usable candidate pair exists.
InitialGuess init_candidates(const PointCloud& cloud, const DetectConfig& cfg, Rng& rng);

/// Mirror the cloud through the plane via the Householder transform, score
/// C = X' X_m, and solve the (optionally capped) assignment.
Correspondence initial_correspondence(const PointCloud& cloud, const Hyperplane& plane,
                                      std::optional<int> pair_cap = std::nullopt);

/// Full detection: randomized initialization, then alternation between the
/// assignment step (fixed transform) and the trust-region transform step
/// (fixed correspondences) until the relative cost decrease over a full
/// alternation drops below cost_rel_tol, the correspondence repeats, or
/// max_alternations is reached. The cost never increases across half-steps.
SymmetryResult detect(const PointCloud& cloud, const DetectConfig& cfg);

/// Same alternation but starting from a caller-supplied transform instead
/// of the randomized initialization.
SymmetryResult detect_with_init(const PointCloud& cloud, const DetectConfig& cfg,
                                const ReflectionTransform& init);

}  // namespace mirrorfit
