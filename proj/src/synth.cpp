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

#include "mirrorfit/synth.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace mirrorfit {

namespace {

int resolve_thread_count(int requested) {
  int threads = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* env = std::getenv("MIRRORFIT_THREADS")) {
    const int bound = std::atoi(env);
    if (bound >= 1) threads = std::min(threads, bound);
  }
  return threads;
}

std::vector<double> tau_d_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 34; ++k) grid.push_back(0.01 * k);
  return grid;
}

std::vector<double> tau_theta_grid_deg() {
  std::vector<double> grid;
  for (int k = 0; k <= 500; ++k) grid.push_back(0.01 * k);
  return grid;
}

}  // namespace

SynthInstance generate(const SynthSpec& spec) {
  require(spec.dim >= 2, ErrorCode::InvalidArgument, "dimension must be >= 2");
  require(spec.half_count >= 1, ErrorCode::InvalidArgument, "half_count must be >= 1");
  require(spec.sigma2 >= 0.0, ErrorCode::InvalidArgument, "sigma2 must be nonnegative");
  require(spec.transform.dim() == spec.dim, ErrorCode::DimensionMismatch,
          "transform dimension does not match spec");

  Rng rng(spec.seed);
  const Eigen::Index d = spec.dim;
  const Eigen::Index half = spec.half_count;
  const Eigen::Index extra = spec.on_plane_extra ? 1 : 0;
  const Eigen::Index n = 2 * half + extra;

  Eigen::MatrixXd base(d, half);
  for (Eigen::Index i = 0; i < half; ++i) base.col(i) = rng.uniform_vector(d, 0.0, 1.0);

  const Hyperplane plane = hyperplane_from_transform(spec.transform);
  const Eigen::VectorXd& t = spec.transform.translation();
  Eigen::MatrixXd pts(d, n);
  pts.leftCols(half) = base;
  pts.middleCols(half, half) =
      (spec.transform.mirror() * (base.colwise() - t)).colwise() + t;
  std::vector<std::int32_t> target(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < half; ++i) {
    target[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(half + i);
    target[static_cast<std::size_t>(half + i)] = static_cast<std::int32_t>(i);
  }
  if (extra) {
    // One additional point projected onto the plane: its own mirror image.
    Eigen::VectorXd x = rng.uniform_vector(d, 0.0, 1.0);
    x -= plane.signed_distance(x) * plane.normal;
    pts.col(n - 1) = x;
    target[static_cast<std::size_t>(n - 1)] = static_cast<std::int32_t>(n - 1);
  }

  const double sigma = std::sqrt(spec.sigma2);
  if (sigma > 0.0) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < d; ++k) pts(k, i) += sigma * rng.normal();
  }

  SynthInstance out{PointCloud(std::move(pts)),
                    GroundTruth{Correspondence(n, std::move(target)), plane, spec.transform,
                                spec.sigma2, spec.seed}};
  return out;
}

MetricValue error_ed(const PointCloud& cloud, const Correspondence& corr,
                     const Hyperplane& plane) {
  require(corr.matched_count() > 0, ErrorCode::InvalidArgument, "correspondence is empty");
  MetricValue out;
  double sum = 0.0;
  int counted = 0;
  for (const auto& [i, j] : corr.mutual_pairs()) {
    if (i == j) {
      ++out.excluded;
      continue;
    }
    Eigen::VectorXd seg = cloud.points.col(i) - cloud.points.col(j);
    const double len = seg.norm();
    if (len < 1e-15) {
      ++out.excluded;
      continue;
    }
    sum += std::abs(seg.dot(plane.normal)) / len;
    ++counted;
  }
  out.value = counted > 0 ? sum / counted : 0.0;
  return out;
}

MetricValue error_em(const PointCloud& cloud, const Correspondence& corr,
                     const Hyperplane& plane) {
  require(corr.matched_count() > 0, ErrorCode::InvalidArgument, "correspondence is empty");
  MetricValue out;
  double sum = 0.0;
  int counted = 0;
  for (const auto& [i, j] : corr.mutual_pairs()) {
    if (i == j) {
      ++out.excluded;
      continue;
    }
    if ((cloud.points.col(i) - cloud.points.col(j)).norm() < 1e-15) {
      ++out.excluded;
      continue;
    }
    const Eigen::VectorXd mid = 0.5 * (cloud.points.col(i) + cloud.points.col(j));
    sum += std::abs(plane.signed_distance(mid));
    ++counted;
  }
  out.value = counted > 0 ? sum / counted : 0.0;
  return out;
}

double correspondence_rate(const Correspondence& est, const GroundTruth& truth,
                           const PointCloud& cloud, double tau_d) {
  require(tau_d >= 0.0, ErrorCode::InvalidArgument, "threshold must be nonnegative");
  Eigen::Index total = 0;
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < est.size(); ++i) {
    const auto e = est.target(i);
    if (e < 0) continue;
    const auto g = truth.pairs.target(i);
    if (g < 0) continue;
    ++total;
    if ((cloud.points.col(e) - cloud.points.col(g)).norm() < tau_d) ++correct;
  }
  return total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

BoundingBox compute_bbox(const PointCloud& cloud) {
  BoundingBox box;
  box.lo = cloud.points.rowwise().minCoeff();
  box.hi = cloud.points.rowwise().maxCoeff();
  return box;
}

bool plane_correct(const Hyperplane& est, const Hyperplane& gt, double t_theta, double t_d,
                   const BoundingBox& bbox) {
  require(t_theta >= 0.0 && t_d >= 0.0, ErrorCode::InvalidArgument,
          "thresholds must be nonnegative");
  if (est.normal_angle(gt) >= t_theta) return false;
  const Eigen::VectorXd c = bbox.center();
  const Eigen::VectorXd center_on_est = c - est.signed_distance(c) * est.normal;
  return gt.distance(center_on_est) < t_d;
}

SweepResult sweep(const std::vector<SynthSpec>& batch, const DetectConfig& cfg, int threads) {
  require(!batch.empty(), ErrorCode::InvalidArgument, "sweep batch is empty");

  SweepResult result;
  result.tau_d_grid = tau_d_grid();
  result.tau_theta_grid = tau_theta_grid_deg();
  result.instances.resize(batch.size());

  const int worker_count = resolve_thread_count(threads);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= batch.size()) return;
      InstanceRecord& rec = result.instances[idx];
      rec.index = static_cast<int>(idx);
      rec.sigma2 = batch[idx].sigma2;
      try {
        const SynthInstance inst = generate(batch[idx]);
        DetectConfig local = cfg;
        local.rng_seed = derive_seed(cfg.rng_seed, idx);
        const SymmetryResult det = detect(inst.cloud, local);
        rec.cost = det.final_cost;
        rec.ed_detected = error_ed(inst.cloud, det.correspondence, det.plane).value;
        rec.em_detected = error_em(inst.cloud, det.correspondence, det.plane).value;
        rec.ed_truth = error_ed(inst.cloud, inst.truth.pairs, inst.truth.plane).value;
        rec.em_truth = error_em(inst.cloud, inst.truth.pairs, inst.truth.plane).value;
        rec.plane_angle_deg = det.plane.normal_angle(inst.truth.plane) * 180.0 / M_PI;
        rec.corr_rates.reserve(result.tau_d_grid.size());
        for (double tau : result.tau_d_grid)
          rec.corr_rates.push_back(
              correspondence_rate(det.correspondence, inst.truth, inst.cloud, tau));
      } catch (const Error&) {
        rec.failed = true;
      }
    }
  };
  if (worker_count == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  // Deterministic aggregation by instance index into per-sigma2 curves.
  for (const auto& spec : batch) {
    bool seen = false;
    for (double s : result.sigma2_levels)
      if (s == spec.sigma2) seen = true;
    if (!seen) result.sigma2_levels.push_back(spec.sigma2);
  }
  std::sort(result.sigma2_levels.begin(), result.sigma2_levels.end());

  for (double level : result.sigma2_levels) {
    EvalCurves corr;
    corr.thresholds = result.tau_d_grid;
    corr.rates.assign(result.tau_d_grid.size(), 0.0);
    EvalCurves prec;
    prec.thresholds = result.tau_theta_grid;
    prec.rates.assign(result.tau_theta_grid.size(), 0.0);
    int count = 0;
    for (const auto& rec : result.instances) {
      if (rec.sigma2 != level) continue;
      if (rec.failed) {
        ++result.failures;
        continue;
      }
      ++count;
      for (std::size_t k = 0; k < corr.rates.size(); ++k) corr.rates[k] += rec.corr_rates[k];
      for (std::size_t k = 0; k < prec.rates.size(); ++k)
        if (rec.plane_angle_deg < prec.thresholds[k]) prec.rates[k] += 1.0;
    }
    if (count > 0) {
      for (auto& r : corr.rates) r /= count;
      for (auto& r : prec.rates) r /= count;
    }
    result.corr_rate_by_level.push_back(std::move(corr));
    result.precision_by_level.push_back(std::move(prec));
  }
  return result;
}

ReflectionTransform axis_transform_2d(double axis_angle_rad, const Eigen::VectorXd& translation) {
  return ReflectionTransform::from_leading_rotation(givens_rotation(2, 0, 1, axis_angle_rad),
                                                    translation);
}

ReflectionTransform angles_transform_3d(double theta_x_rad, double theta_y_rad,
                                        const Eigen::VectorXd& translation) {
  std::vector<Eigen::MatrixXd> rots{givens_rotation(3, 1, 2, theta_x_rad),
                                    givens_rotation(3, 0, 2, theta_y_rad)};
  return ReflectionTransform(std::move(rots), translation);
}

std::vector<SynthSpec> evaluation_grid_2d(std::uint64_t master_seed) {
  std::vector<SynthSpec> specs;
  const Eigen::VectorXd center = Eigen::VectorXd::Constant(2, 0.5);
  std::uint64_t stream = 0;
  for (int n = 50; n <= 300; n += 50) {
    for (int angle_deg = -90; angle_deg <= 90; angle_deg += 10) {
      for (int s = 0; s <= 10; ++s) {
        SynthSpec spec;
        spec.dim = 2;
        spec.half_count = n / 2;
        spec.transform = axis_transform_2d(angle_deg * M_PI / 180.0, center);
        spec.sigma2 = 0.01 * s;
        spec.seed = derive_seed(master_seed, stream++);
        specs.push_back(std::move(spec));
      }
    }
  }
  return specs;
}

std::vector<SynthSpec> evaluation_grid_3d(std::uint64_t master_seed) {
  static const double kAngles[4] = {-30.0, 0.0, 35.0, 80.0};
  std::vector<SynthSpec> specs;
  const Eigen::VectorXd center = Eigen::VectorXd::Constant(3, 0.5);
  std::uint64_t stream = 0;
  for (int n = 50; n <= 300; n += 50) {
    for (double ax : kAngles) {
      for (double ay : kAngles) {
        for (int s = 0; s <= 10; ++s) {
          SynthSpec spec;
          spec.dim = 3;
          spec.half_count = n / 2;
          spec.transform =
              angles_transform_3d(ax * M_PI / 180.0, ay * M_PI / 180.0, center);
          spec.sigma2 = 0.01 * s;
          spec.seed = derive_seed(master_seed, stream++);
          specs.push_back(std::move(spec));
        }
      }
    }
  }
  return specs;
}

}  // namespace mirrorfit
