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

#include "mirrorfit/manifold.hpp"

namespace mirrorfit {

/// Riemannian trust-region parameters. Non-positive values request the
/// defaults, resolved per solve: initial radius 0.1 sqrt(d-1), max radius
/// ten times that, gradient tolerance 1e-8 (1 + initial cost), and a
/// truncated-CG iteration cap equal to the manifold dimension.
struct TrustRegionConfig {
  double initial_radius = 0.0;
  double max_radius = 0.0;
  double accept_ratio = 0.1;  // rho' in (0, 1/4)
  int max_outer_iters = 200;
  double grad_tol = 0.0;
  int tcg_max_iters = 0;
  double tcg_kappa = 0.1;
  double tcg_theta = 1.0;
};

struct SolveReport {
  ReflectionTransform final_transform = ReflectionTransform::identity(2);
  double final_cost = 0.0;
  double grad_norm = 0.0;
  int outer_iters = 0;
  bool converged = false;
};

/// Minimizes the symmetry error over (R_1..R_{d-1}, t) at fixed
/// correspondences. The quadratic model is solved by truncated conjugate
/// gradients in the tangent space; steps are accepted and the radius
/// adapted by the usual reduction-ratio rules, so accepted iterates never
/// increase the cost. Throws ErrorCode::NumericalFailure if the cost turns
/// non-finite.
SolveReport solve_transform(const PointCloud& cloud, const Correspondence& corr,
                            const ReflectionTransform& init, const TrustRegionConfig& cfg);

}  // namespace mirrorfit
