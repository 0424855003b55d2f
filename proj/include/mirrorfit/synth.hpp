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
#include <string>
#include <vector>

#include "mirrorfit/pipeline.hpp"
#include "mirrorfit/reflection.hpp"
#include "mirrorfit/types.hpp"

namespace mirrorfit {

/// Recipe for one synthetic instance: half_count base points drawn uniform
/// in [0,1]^d, reflected through the ground-truth transform, then every
/// point perturbed by zero-mean Gaussian noise with covariance sigma2 * I.
struct SynthSpec {
  Eigen::Index dim = 2;
  Eigen::Index half_count = 25;
  ReflectionTransform transform = ReflectionTransform::identity(2);
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
  bool on_plane_extra = false;  // append one self-paired point on the plane (odd totals)
};

struct GroundTruth {
  Correspondence pairs;
  Hyperplane plane;
  ReflectionTransform transform = ReflectionTransform::identity(2);
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
};

struct SynthInstance {
  PointCloud cloud;
  GroundTruth truth;
};

SynthInstance generate(const SynthSpec& spec);

/// Metric value plus the count of pairs excluded as degenerate (self-pairs
/// and coincident pairs, whose segment direction is undefined).
struct MetricValue {
  double value = 0.0;
  int excluded = 0;
};

/// Mean |<z_i, v>| over matched pairs: alignment of the unit pair segments
/// with the plane normal. 1 on a perfect pattern at the true plane.
MetricValue error_ed(const PointCloud& cloud, const Correspondence& corr, const Hyperplane& plane);

/// Mean |v.x_mid + w0| over matched pairs: distance of pair midpoints from
/// the plane. 0 on a perfect pattern at the true plane.
MetricValue error_em(const PointCloud& cloud, const Correspondence& corr, const Hyperplane& plane);

/// Fraction of estimated correspondences (i, i'_est) whose target lies
/// strictly within tau_d of the ground-truth target x_{i'_gt}.
double correspondence_rate(const Correspondence& est, const GroundTruth& truth,
                           const PointCloud& cloud, double tau_d);

struct BoundingBox {
  Eigen::VectorXd lo, hi;
  Eigen::VectorXd center() const { return 0.5 * (lo + hi); }
  double half_diagonal() const { return 0.5 * (hi - lo).norm(); }
};

BoundingBox compute_bbox(const PointCloud& cloud);

/// Plane correctness test: the angle between the normals is below t_theta
/// and the detected plane, referenced at the projection of the bounding-box
/// center, lies within t_d of the ground-truth plane.
bool plane_correct(const Hyperplane& est, const Hyperplane& gt, double t_theta, double t_d,
                   const BoundingBox& bbox);

struct EvalCurves {
  std::vector<double> thresholds;
  std::vector<double> rates;
};

struct InstanceRecord {
  int index = -1;
  double sigma2 = 0.0;
  bool failed = false;
  double ed_detected = 0.0, ed_truth = 0.0;
  double em_detected = 0.0, em_truth = 0.0;
  double cost = 0.0;
  double plane_angle_deg = 0.0;  // angle between detected and true normals
  std::vector<double> corr_rates;  // per tau_d grid entry
};

struct SweepResult {
  std::vector<double> tau_d_grid;      // 0, 0.01, ..., 0.34
  std::vector<double> tau_theta_grid;  // degrees, 0 .. 5 step 0.01
  std::vector<double> sigma2_levels;
  std::vector<EvalCurves> corr_rate_by_level;   // pooled over instances per level
  std::vector<EvalCurves> precision_by_level;   // fraction of instances within tau_theta
  std::vector<InstanceRecord> instances;
  int failures = 0;
};

/// Runs detection over the batch and assembles the correspondence-rate and
/// plane-precision curves per sigma2 level. Instances run in parallel
/// (bounded by `threads`; 0 means one per logical core, further bounded by
/// the MIRRORFIT_THREADS environment variable) and are aggregated by index,
/// so results do not depend on the thread count.
SweepResult sweep(const std::vector<SynthSpec>& batch, const DetectConfig& cfg, int threads = 0);

/// The d=2 evaluation grid: n in {50,...,300} step 50, axis orientations
/// -90..90 degrees step 10, sigma2 in {0, 0.01, ..., 0.1}; 1254 specs.
std::vector<SynthSpec> evaluation_grid_2d(std::uint64_t master_seed);

/// The d=3 evaluation grid: n in {50,...,300} step 50, angle pairs from
/// {-30, 0, 35, 80} degrees for the two leading factors, sigma2 in
/// {0, 0.01, ..., 0.1}; 1056 specs.
std::vector<SynthSpec> evaluation_grid_3d(std::uint64_t master_seed);

/// Ground-truth transform helpers used by the grids and the CLI.
ReflectionTransform axis_transform_2d(double axis_angle_rad, const Eigen::VectorXd& translation);
ReflectionTransform angles_transform_3d(double theta_x_rad, double theta_y_rad,
                                        const Eigen::VectorXd& translation);

}  // namespace mirrorfit
