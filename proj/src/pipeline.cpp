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

#include "mirrorfit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mirrorfit/assignment.hpp"
#include "mirrorfit/manifold.hpp"

namespace mirrorfit {

namespace {

struct PairPlane {
  Eigen::VectorXd normal;  // unit, oriented from the second point toward the first
  double origin_distance;  // c with plane {x : normal.x - c = 0}
  Eigen::VectorXd midpoint;
  int a = -1, b = -1;
};

std::optional<PairPlane> pair_plane(const PointCloud& cloud, int a, int b) {
  Eigen::VectorXd diff = cloud.points.col(a) - cloud.points.col(b);
  const double len = diff.norm();
  if (len < 1e-12) return std::nullopt;
  PairPlane p;
  p.normal = diff / len;
  p.midpoint = 0.5 * (cloud.points.col(a) + cloud.points.col(b));
  p.origin_distance = p.normal.dot(p.midpoint);
  p.a = a;
  p.b = b;
  return p;
}

double component_median(std::vector<double>& values) {
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

Correspondence assignment_at_transform(const PointCloud& cloud, const ReflectionTransform& xf,
                                       std::optional<int> pair_cap) {
  const PointCloud mirrored = reflect_points(cloud, xf);
  AssignmentProblem prob(assignment_scores(cloud, mirrored), pair_cap);
  return pair_cap ? solve_assignment_capped(prob, *pair_cap) : solve_assignment(prob);
}

// How well a candidate plane mirrors the cloud onto itself: the trimmed
// mean over the smaller half of the reflected-nearest-neighbor distances,
// measured for a fixed probe subset against the full cloud. True symmetry
// planes score near the noise level, accidental pair agreements score near
// the inter-point spacing.
double reflection_support_score(const PointCloud& cloud, const std::vector<int>& probes,
                                const Eigen::VectorXd& normal, double origin_distance) {
  const Eigen::Index n = cloud.count();
  const Eigen::VectorXd foot = origin_distance * normal;
  std::vector<double> nearest;
  nearest.reserve(probes.size());
  for (int k : probes) {
    const Eigen::VectorXd centered = cloud.points.col(k) - foot;
    const Eigen::VectorXd reflected =
        centered - 2.0 * normal.dot(centered) * normal + foot;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index m = 0; m < n; ++m) {
      const double dist2 = (reflected - cloud.points.col(m)).squaredNorm();
      if (dist2 < best) best = dist2;
    }
    nearest.push_back(best);
  }
  const std::size_t half = (nearest.size() + 1) / 2;
  std::nth_element(nearest.begin(), nearest.begin() + half, nearest.end());
  double total = 0.0;
  for (std::size_t k = 0; k < half; ++k) total += std::sqrt(nearest[k]);
  return total / static_cast<double>(half);
}

// Replace the rotation stack by the critical-point representation: the
// factor product becomes the eigenvector basis of A in descending
// eigenvalue order. Valid only when the current mirror normal is already
// an eigenvector of A, which the vanished gradient guarantees at
// convergence; the mirror plane and the cost are unchanged.
void canonicalize_rotations(const PointCloud& cloud, const Correspondence& corr,
                            ReflectionTransform& xf, double& cost) {
  const MatchedColumns cols = MatchedColumns::from(cloud, corr);
  const GradientWorkspace ws(xf, cols);
  const CriticalRotation crit = critical_rotation(ws.A());
  const Eigen::VectorXd current_normal = xf.raw_normal();
  const Eigen::VectorXd candidate_normal = crit.rotation.col(xf.dim() - 1);
  if (std::abs(current_normal.dot(candidate_normal)) < 1.0 - 1e-8) return;

  ReflectionTransform canonical =
      ReflectionTransform::from_leading_rotation(crit.rotation, xf.translation());
  const double canonical_cost = symmetry_error(cloud, canonical, corr);
  if (canonical_cost <= cost * (1.0 + 1e-9) + 1e-18) {
    xf = std::move(canonical);
    cost = canonical_cost;
  }
}

SymmetryResult alternate(const PointCloud& cloud, const DetectConfig& cfg,
                         const ReflectionTransform& init, Hyperplane init_plane,
                         Correspondence corr, std::vector<Eigen::Index> subsample) {
  SymmetryResult result;
  result.transform = init;
  result.init_plane = std::move(init_plane);
  result.subsample = std::move(subsample);

  double cost = symmetry_error(cloud, result.transform, corr);
  result.cost_trace.push_back(cost);

  for (int alt = 0; alt < cfg.max_alternations; ++alt) {
    const double cost_at_start = cost;

    SolveReport report = solve_transform(cloud, corr, result.transform, cfg.tr);
    result.transform = report.final_transform;
    result.grad_norm = report.grad_norm;
    cost = report.final_cost;
    result.cost_trace.push_back(cost);

    Correspondence next = assignment_at_transform(cloud, result.transform, cfg.pair_cap);
    const double next_cost = symmetry_error(cloud, result.transform, next);
    result.cost_trace.push_back(next_cost);
    result.alternations = alt + 1;

    const bool fixed_point = next == corr;
    corr = std::move(next);
    cost = std::min(cost, next_cost);
    if (fixed_point) {
      result.converged = true;
      break;
    }
    const double rel_decrease =
        (cost_at_start - next_cost) / std::max(cost_at_start, 1e-300);
    cost = next_cost;
    if (rel_decrease < cfg.cost_rel_tol || next_cost == 0.0) {
      result.converged = true;
      break;
    }
  }

  canonicalize_rotations(cloud, corr, result.transform, cost);
  result.correspondence = std::move(corr);
  result.final_cost = cost;
  result.plane = hyperplane_from_transform(result.transform);
  return result;
}

}  // namespace

InitialGuess init_candidates(const PointCloud& cloud, const DetectConfig& cfg, Rng& rng) {
  const int n = static_cast<int>(cloud.count());
  require(n >= 4, ErrorCode::InvalidArgument, "initialization needs at least 4 points");
  require(cfg.init_trials >= 1, ErrorCode::InvalidArgument, "init_trials must be >= 1");
  require(cfg.eps_theta > 0.0 && cfg.eps_theta < M_PI / 2.0, ErrorCode::InvalidArgument,
          "eps_theta must lie in (0, pi/2)");
  require(cfg.eps_d > 0.0 && cfg.eps_d < 1.0, ErrorCode::InvalidArgument,
          "eps_d must lie in (0, 1)");

  // Probe subset for support scoring, drawn once per initialization.
  std::vector<int> probes = rng.permutation(n);
  if (probes.size() > 64) probes.resize(64);

  std::vector<PairPlane> candidates;
  for (int trial = 0; trial < cfg.init_trials; ++trial) {
    const int p = static_cast<int>(rng.uniform_int(0, n - 1));
    int q = static_cast<int>(rng.uniform_int(0, n - 2));
    if (q >= p) ++q;

    std::vector<int> others;
    others.reserve(static_cast<std::size_t>(n) - 2);
    for (int i = 0; i < n; ++i)
      if (i != p && i != q) others.push_back(i);

    // Rank the anchor-p pair planes by how well they mirror the cloud onto
    // itself; the round votes the strongest one. The anchor-q pair set is
    // then sampled without replacement for a pair whose plane agrees with
    // the vote under the angle and distance-ratio tolerances; when one
    // exists it becomes the round's second candidate pair. Agreement
    // ignores segment orientation (a plane is unchanged under a normal
    // flip) and requires each pair to straddle the other pair's plane at
    // matching distances, both ways.
    std::vector<int> p_order = rng.permutation(static_cast<int>(others.size()));
    constexpr std::size_t kSupportScanCap = 512;
    if (p_order.size() > kSupportScanCap) p_order.resize(kSupportScanCap);

    std::optional<PairPlane> round_vote;
    double best_support = std::numeric_limits<double>::infinity();
    for (std::size_t pi = 0; pi < p_order.size(); ++pi) {
      const int i = others[static_cast<std::size_t>(p_order[pi])];
      const auto plane_pi = pair_plane(cloud, p, i);
      if (!plane_pi) continue;
      const double support = reflection_support_score(cloud, probes, plane_pi->normal,
                                                      plane_pi->origin_distance);
      if (support < best_support) {
        best_support = support;
        round_vote = *plane_pi;
      }
    }
    if (!round_vote) continue;

    auto straddle_ratio = [&](const PairPlane& plane, int a, int b) -> double {
      const double sa = plane.normal.dot(cloud.points.col(a)) - plane.origin_distance;
      const double sb = plane.normal.dot(cloud.points.col(b)) - plane.origin_distance;
      if (sa * sb > 0.0) return -1.0;  // same side: not a mirror pair for this plane
      const double hi = std::max(std::abs(sa), std::abs(sb));
      if (hi < 1e-12) return -1.0;
      return std::min(std::abs(sa), std::abs(sb)) / hi;
    };

    candidates.push_back(*round_vote);
    std::vector<int> q_order = rng.permutation(static_cast<int>(others.size()));
    for (std::size_t qi = 0; qi < q_order.size(); ++qi) {
      const int j = others[static_cast<std::size_t>(q_order[qi])];
      if (j == round_vote->b) continue;
      const auto plane_qj = pair_plane(cloud, q, j);
      if (!plane_qj) continue;
      const double cosine = std::min(1.0, std::abs(round_vote->normal.dot(plane_qj->normal)));
      if (std::acos(cosine) > cfg.eps_theta) continue;
      if (straddle_ratio(*round_vote, q, j) < 1.0 - cfg.eps_d) continue;
      if (straddle_ratio(*plane_qj, p, round_vote->b) < 1.0 - cfg.eps_d) continue;
      PairPlane partner = *plane_qj;
      if (round_vote->normal.dot(partner.normal) < 0.0) {
        partner.normal = -partner.normal;
        partner.origin_distance = -partner.origin_distance;
      }
      candidates.push_back(std::move(partner));
      break;  // first agreeing j
    }
  }

  require(!candidates.empty(), ErrorCode::InitializationFailure,
          "no usable candidate pairs found; consider larger tolerances");

  // Candidate planes from true mirror pairs concentrate around the symmetry
  // plane while accidental agreements scatter, so the vote goes to the
  // first largest cluster of mutually consistent planes and the median is
  // taken inside it.
  const Eigen::Index d = cloud.dim();
  const double half_diagonal =
      0.5 * (cloud.points.rowwise().maxCoeff() - cloud.points.rowwise().minCoeff()).norm();
  const double angle_radius = std::max(2.0 * cfg.eps_theta, 10.0 * M_PI / 180.0);
  const double offset_radius = std::max(0.1 * half_diagonal, 1e-9);

  std::vector<std::size_t> winner;
  for (std::size_t seed = 0; seed < candidates.size(); ++seed) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const double dot = candidates[seed].normal.dot(candidates[k].normal);
      const double cosine = std::min(1.0, std::abs(dot));
      if (std::acos(cosine) > angle_radius) continue;
      const double ck = dot < 0.0 ? -candidates[k].origin_distance : candidates[k].origin_distance;
      if (std::abs(ck - candidates[seed].origin_distance) > offset_radius) continue;
      members.push_back(k);
    }
    if (members.size() > winner.size()) winner = std::move(members);
  }

  // Sign-align the cluster to its first member before taking medians.
  std::vector<PairPlane> cluster;
  cluster.reserve(winner.size());
  for (std::size_t k : winner) cluster.push_back(candidates[k]);
  const Eigen::VectorXd reference = cluster.front().normal;
  for (auto& c : cluster) {
    if (c.normal.dot(reference) < 0.0) {
      c.normal = -c.normal;
      c.origin_distance = -c.origin_distance;
    }
  }

  Eigen::VectorXd median_normal(d);
  Eigen::VectorXd median_midpoint(d);
  std::vector<double> scratch(cluster.size());
  for (Eigen::Index k = 0; k < d; ++k) {
    for (std::size_t c = 0; c < cluster.size(); ++c) scratch[c] = cluster[c].normal(k);
    median_normal(k) = component_median(scratch);
    for (std::size_t c = 0; c < cluster.size(); ++c) scratch[c] = cluster[c].midpoint(k);
    median_midpoint(k) = component_median(scratch);
  }
  for (std::size_t c = 0; c < cluster.size(); ++c) scratch[c] = cluster[c].origin_distance;
  const double median_c = component_median(scratch);

  require(median_normal.norm() > 1e-9, ErrorCode::InitializationFailure,
          "candidate planes cancelled out; consider larger tolerances");

  InitialGuess guess;
  guess.plane = Hyperplane(median_normal, -median_c);
  guess.translation = median_midpoint;
  return guess;
}

Correspondence initial_correspondence(const PointCloud& cloud, const Hyperplane& plane,
                                      std::optional<int> pair_cap) {
  const PointCloud mirrored = householder_reflect(cloud, plane);
  AssignmentProblem prob(assignment_scores(cloud, mirrored), pair_cap);
  return pair_cap ? solve_assignment_capped(prob, *pair_cap) : solve_assignment(prob);
}

SymmetryResult detect(const PointCloud& cloud, const DetectConfig& cfg) {
  require(cloud.count() >= 4, ErrorCode::InvalidArgument, "detection needs at least 4 points");

  Rng rng(cfg.rng_seed);
  PointCloud working = cloud;
  std::vector<Eigen::Index> subsample;
  if (cloud.count() > cfg.subsample_threshold) {
    std::vector<int> order = rng.permutation(static_cast<int>(cloud.count()));
    order.resize(static_cast<std::size_t>(cfg.subsample_threshold));
    std::sort(order.begin(), order.end());
    Eigen::MatrixXd pts(cloud.dim(), cfg.subsample_threshold);
    subsample.reserve(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      pts.col(static_cast<Eigen::Index>(k)) = cloud.points.col(order[k]);
      subsample.push_back(order[k]);
    }
    working = PointCloud(std::move(pts));
  }

  const InitialGuess guess = init_candidates(working, cfg, rng);
  Correspondence corr = initial_correspondence(working, guess.plane, cfg.pair_cap);
  const ReflectionTransform init = transform_from_plane(guess.plane.normal, guess.translation);
  return alternate(working, cfg, init, guess.plane, std::move(corr), std::move(subsample));
}

SymmetryResult detect_with_init(const PointCloud& cloud, const DetectConfig& cfg,
                                const ReflectionTransform& init) {
  require(cloud.count() >= 4, ErrorCode::InvalidArgument, "detection needs at least 4 points");
  require(cloud.dim() == init.dim(), ErrorCode::DimensionMismatch,
          "cloud and transform dimensions differ");
  Correspondence corr = assignment_at_transform(cloud, init, cfg.pair_cap);
  return alternate(cloud, cfg, init, hyperplane_from_transform(init), std::move(corr), {});
}

}  // namespace mirrorfit
