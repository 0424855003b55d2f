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

#include <unsupported/Eigen/MatrixFunctions>

#include "mirrorfit/manifold.hpp"
#include "mirrorfit/reflection.hpp"
#include "mirrorfit/rng.hpp"
#include "mirrorfit/types.hpp"

namespace mirrorfit::testing {

inline PointCloud random_cloud(Eigen::Index d, Eigen::Index n, Rng& rng) {
  Eigen::MatrixXd pts(d, n);
  for (Eigen::Index i = 0; i < n; ++i) pts.col(i) = rng.uniform_vector(d, 0.0, 1.0);
  return PointCloud(std::move(pts));
}

inline ReflectionTransform random_transform(Eigen::Index d, Rng& rng) {
  std::vector<Eigen::MatrixXd> rots;
  for (Eigen::Index j = 0; j + 1 < d; ++j) rots.push_back(random_rotation(d, rng));
  return ReflectionTransform(std::move(rots), rng.uniform_vector(d, -1.0, 1.0));
}

inline Correspondence random_permutation_corr(Eigen::Index n, Rng& rng) {
  const std::vector<int> p = rng.permutation(static_cast<int>(n));
  std::vector<std::int32_t> target(p.begin(), p.end());
  return Correspondence(n, std::move(target));
}

inline Eigen::MatrixXd random_skew(Eigen::Index d, Rng& rng) {
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = rng.normal();
  return 0.5 * (m - m.transpose());
}

inline TangentVector random_tangent(Eigen::Index d, Rng& rng) {
  TangentVector v = TangentVector::zero(d);
  for (auto& w : v.omegas) w = random_skew(d, rng);
  v.eta_t = rng.normal_vector(d);
  return v;
}

/// Tangent supported on a single factor (block in [0, d-1)) or, for
/// block == d-1, on the translation component only.
inline TangentVector single_block_tangent(Eigen::Index d, Eigen::Index block, Rng& rng) {
  TangentVector v = TangentVector::zero(d);
  if (block < d - 1) {
    v.omegas[static_cast<std::size_t>(block)] = random_skew(d, rng);
  } else {
    v.eta_t = rng.normal_vector(d);
  }
  return v;
}

/// Geodesic curve oracle: rotation factors move along the Lie exponential,
/// the translation along a straight line. Independent of the library's QR
/// retraction.
inline ReflectionTransform exp_retract(const ReflectionTransform& xf, const TangentVector& dir,
                                       double step) {
  std::vector<Eigen::MatrixXd> rots;
  for (Eigen::Index j = 0; j < xf.factor_count(); ++j) {
    const Eigen::MatrixXd arg = step * dir.omegas[static_cast<std::size_t>(j)];
    rots.push_back(xf.rotation(j) * arg.exp());
  }
  return ReflectionTransform(ReflectionTransform::unchecked_t{}, std::move(rots),
                             xf.translation() + step * dir.eta_t);
}

inline double cost_at(const PointCloud& cloud, const ReflectionTransform& xf,
                      const Correspondence& corr) {
  return symmetry_error(cloud, xf, corr);
}

/// Central-difference directional derivative along the QR retraction.
inline double fd_directional(const PointCloud& cloud, const Correspondence& corr,
                             const ReflectionTransform& xf, const TangentVector& v, double h) {
  const double fp = cost_at(cloud, retract(xf, v, h), corr);
  const double fm = cost_at(cloud, retract(xf, v, -h), corr);
  return (fp - fm) / (2.0 * h);
}

/// Second-order finite difference along the geodesic curve.
inline double fd_second_geodesic(const PointCloud& cloud, const Correspondence& corr,
                                 const ReflectionTransform& xf, const TangentVector& v, double h) {
  const double fp = cost_at(cloud, exp_retract(xf, v, h), corr);
  const double f0 = cost_at(cloud, xf, corr);
  const double fm = cost_at(cloud, exp_retract(xf, v, -h), corr);
  return (fp - 2.0 * f0 + fm) / (h * h);
}

inline double relative_error(double got, double want) {
  return std::abs(got - want) / std::max(1e-12, std::abs(want));
}

/// Plain triple-loop matrix multiply, kept independent of Eigen's product
/// kernels for use as an oracle.
inline Eigen::MatrixXd naive_multiply(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      for (Eigen::Index j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

}  // namespace mirrorfit::testing
