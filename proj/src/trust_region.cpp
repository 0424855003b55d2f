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

#include "mirrorfit/trust_region.hpp"

#include <cmath>

namespace mirrorfit {

namespace {

double restricted_cost(const MatchedColumns& cols, const ReflectionTransform& xf) {
  const Eigen::VectorXd& t = xf.translation();
  Eigen::MatrixXd mirrored = xf.mirror() * (cols.targets.colwise() - t);
  mirrored.colwise() += t;
  return (mirrored - cols.sources).squaredNorm();
}

struct TcgResult {
  TangentVector step;
  double predicted_reduction = 0.0;
  bool hit_boundary = false;
};

// Steihaug-Toint truncated CG on the tangent space. Follows negative
// curvature and boundary-crossing directions to the trust-region border;
// interior convergence uses the kappa/theta residual rule.
TcgResult truncated_cg(const GradientWorkspace& ws, const TangentVector& grad, double radius,
                       const TrustRegionConfig& cfg, int max_iters) {
  TcgResult out;
  const Eigen::Index d = grad.dim();
  TangentVector s = TangentVector::zero(d);
  TangentVector r = grad;
  TangentVector p = -1.0 * grad;

  double r_r = metric(r, r);
  const double r0_norm = std::sqrt(r_r);
  const double r_stop = r0_norm * std::min(cfg.tcg_kappa, std::pow(r0_norm, cfg.tcg_theta));

  double s_s = 0.0;
  double s_p = 0.0;
  double p_p = r_r;

  // Positive root of ||s + tau p|| = radius given the cached inner products.
  auto to_boundary = [&](double bb, double bd, double dd) {
    const double disc = std::max(0.0, bd * bd + dd * (radius * radius - bb));
    return (-bd + std::sqrt(disc)) / dd;
  };

  if (r0_norm == 0.0) return out;

  for (int iter = 0; iter < max_iters; ++iter) {
    const TangentVector hp = rhess_apply(ws, p);
    const double php = metric(p, hp);
    if (php <= 0.0) {
      s.add_scaled(p, to_boundary(s_s, s_p, p_p));
      out.hit_boundary = true;
      break;
    }
    const double alpha = r_r / php;
    const double new_s_s = s_s + 2.0 * alpha * s_p + alpha * alpha * p_p;
    if (new_s_s >= radius * radius) {
      s.add_scaled(p, to_boundary(s_s, s_p, p_p));
      out.hit_boundary = true;
      break;
    }
    s.add_scaled(p, alpha);
    s_s = new_s_s;
    r.add_scaled(hp, alpha);
    const double r_r_new = metric(r, r);
    if (std::sqrt(r_r_new) <= r_stop) break;
    const double beta = r_r_new / r_r;
    r_r = r_r_new;
    p *= beta;
    p.add_scaled(r, -1.0);
    s_p = beta * (s_p + alpha * p_p);
    p_p = r_r + beta * beta * p_p;
  }

  const TangentVector hs = rhess_apply(ws, s);
  out.predicted_reduction = -(metric(grad, s) + 0.5 * metric(s, hs));
  out.step = std::move(s);
  return out;
}

}  // namespace

SolveReport solve_transform(const PointCloud& cloud, const Correspondence& corr,
                            const ReflectionTransform& init, const TrustRegionConfig& cfg) {
  require(cloud.dim() == init.dim(), ErrorCode::DimensionMismatch,
          "cloud and transform dimensions differ");
  require(cfg.accept_ratio > 0.0 && cfg.accept_ratio < 0.25, ErrorCode::InvalidArgument,
          "accept_ratio must lie in (0, 1/4)");
  const Eigen::Index d = cloud.dim();
  const MatchedColumns cols = MatchedColumns::from(cloud, corr);

  const double sqrt_dm1 = std::sqrt(static_cast<double>(d - 1));
  const double radius0 = cfg.initial_radius > 0.0 ? cfg.initial_radius : 0.1 * sqrt_dm1;
  const double radius_max = cfg.max_radius > 0.0 ? cfg.max_radius : 10.0 * radius0;
  require(radius0 <= radius_max, ErrorCode::InvalidArgument,
          "initial radius exceeds the maximum radius");
  const int manifold_dim = static_cast<int>((d - 1) * (d * (d - 1)) / 2 + d);
  const int tcg_max = cfg.tcg_max_iters > 0 ? cfg.tcg_max_iters : manifold_dim;

  SolveReport report;
  report.final_transform = init;
  double cost = restricted_cost(cols, report.final_transform);
  require(std::isfinite(cost), ErrorCode::NumericalFailure,
          "cost at the initial transform is not finite");
  const double grad_tol = cfg.grad_tol > 0.0 ? cfg.grad_tol : 1e-8 * (1.0 + cost);

  double radius = radius0;
  int iter = 0;
  for (; iter < cfg.max_outer_iters; ++iter) {
    const GradientWorkspace ws(report.final_transform, cols);
    const TangentVector grad = rgrad(ws);
    report.grad_norm = tangent_norm(grad);
    if (report.grad_norm <= grad_tol) {
      report.converged = true;
      break;
    }

    const TcgResult sub = truncated_cg(ws, grad, radius, cfg, tcg_max);
    if (sub.predicted_reduction <= 0.0) {
      // Model cannot improve: the gradient is at numerical noise level.
      report.converged = report.grad_norm <= grad_tol;
      break;
    }
    const ReflectionTransform candidate = retract(report.final_transform, sub.step, 1.0);
    const double candidate_cost = restricted_cost(cols, candidate);
    if (!std::isfinite(candidate_cost))
      throw Error(ErrorCode::NumericalFailure, "trust-region step produced non-finite cost");

    const double rho = (cost - candidate_cost) / sub.predicted_reduction;
    if (rho < 0.25) {
      radius *= 0.25;
    } else if (rho > 0.75 && sub.hit_boundary) {
      radius = std::min(2.0 * radius, radius_max);
    }
    if (rho > cfg.accept_ratio && candidate_cost <= cost) {
      report.final_transform = candidate;
      cost = candidate_cost;
    }
    if (radius < 1e-14) break;
  }

  report.outer_iters = iter;
  report.final_cost = cost;
  return report;
}

}  // namespace mirrorfit
