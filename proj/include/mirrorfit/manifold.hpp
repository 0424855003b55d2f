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

#include <vector>

#include <Eigen/Core>

#include "mirrorfit/reflection.hpp"
#include "mirrorfit/types.hpp"

namespace mirrorfit {

// Differential geometry of the product manifold SO(d)^{d-1} x R^d on which
// the symmetry error is minimized at fixed correspondences. Tangent vectors
// at (R, t) are (R_1 W_1, ..., R_{d-1} W_{d-1}, eta) with each W_u skew; we
// store the skew parts W_u directly together with eta.

struct TangentVector {
  std::vector<Eigen::MatrixXd> omegas;
  Eigen::VectorXd eta_t;

  static TangentVector zero(Eigen::Index dim);

  Eigen::Index dim() const { return eta_t.size(); }

  TangentVector& operator+=(const TangentVector& other);
  TangentVector& operator*=(double s);
  void add_scaled(const TangentVector& other, double s);

  /// Largest deviation of any omega from exact skew-symmetry.
  double skew_defect() const;
};

TangentVector operator+(TangentVector a, const TangentVector& b);
TangentVector operator*(double s, TangentVector v);

/// Riemannian metric of the product manifold: eta'eta' plus the sum of
/// trace(W_u' W_u') over the rotation factors. Point-independent.
double metric(const TangentVector& u, const TangentVector& v);

double tangent_norm(const TangentVector& v);

/// Matched columns of the cost, in first-index order: column k holds
/// (target, source) = (x_{i'}, x_i) for the k-th matched entry i -> i'.
/// For a full permutation this is (X P, X) up to a common column
/// permutation, which every formula below is invariant to.
struct MatchedColumns {
  Eigen::MatrixXd targets;  // d x m, columns of X that receive a match
  Eigen::MatrixXd sources;  // d x m, the points matched onto them
  Eigen::Index count() const { return targets.cols(); }

  static MatchedColumns from(const PointCloud& cloud, const Correspondence& corr);
};

/// Quantities fixed while (R, t) and P are fixed, shared by the gradient and
/// every Hessian application of an outer trust-region iteration:
///   A    = (Z - t e')(Y - t e')' + (Y - t e')(Z - t e')'   (symmetric)
///   B1_j = (prod_{u>j} R_u) E (prod_{u>j} R_u)'
///   B2_j = (prod_{u<j} R_u)' A (prod_{u<j} R_u)
///   M_j  = R_j' B2_j R_j
class GradientWorkspace {
 public:
  GradientWorkspace(const ReflectionTransform& xf, const MatchedColumns& cols);

  const Eigen::MatrixXd& A() const { return a_; }
  const Eigen::MatrixXd& B1(Eigen::Index j) const { return b1_[static_cast<std::size_t>(j)]; }
  const Eigen::MatrixXd& B2(Eigen::Index j) const { return b2_[static_cast<std::size_t>(j)]; }
  const Eigen::MatrixXd& conjugated_B2(Eigen::Index j) const {
    return m_[static_cast<std::size_t>(j)];
  }
  const Eigen::MatrixXd& prefix(Eigen::Index j) const { return pre_[static_cast<std::size_t>(j)]; }
  const Eigen::MatrixXd& suffix(Eigen::Index j) const { return suf_[static_cast<std::size_t>(j)]; }
  const Eigen::MatrixXd& mirror() const { return mirror_; }
  const ReflectionTransform& transform() const { return *xf_; }
  Eigen::Index matched_count() const { return m_count_; }
  const Eigen::VectorXd& target_sum() const { return sum_targets_; }
  const Eigen::VectorXd& source_sum() const { return sum_sources_; }

 private:
  const ReflectionTransform* xf_;
  Eigen::Index m_count_;
  Eigen::MatrixXd a_;
  Eigen::MatrixXd mirror_;
  std::vector<Eigen::MatrixXd> pre_, suf_, b1_, b2_, m_;
  Eigen::VectorXd sum_targets_, sum_sources_;
};

// Euclidean (ambient) gradients of the unconstrained cost.

/// 2 (I - T E T')(2 m t - Y e - Z e).
Eigen::VectorXd egrad_t(const GradientWorkspace& ws);
Eigen::VectorXd egrad_t(const PointCloud& cloud, const ReflectionTransform& xf,
                        const Correspondence& corr);

/// -2 (prod_{u<j} R_u)' A T E (prod_{u>j} R_u)'.
Eigen::MatrixXd egrad_R(const GradientWorkspace& ws, Eigen::Index j);
Eigen::MatrixXd egrad_R(const PointCloud& cloud, const ReflectionTransform& xf,
                        const Correspondence& corr, Eigen::Index j);

// Riemannian gradient: translation component passes through unchanged,
// rotation components are R_j skew(R_j' egrad_R_j); the stored omegas are
// the skew parts.
TangentVector rgrad(const GradientWorkspace& ws);
TangentVector rgrad(const PointCloud& cloud, const ReflectionTransform& xf,
                    const Correspondence& corr);

/// Rotation component of the Riemannian gradient in its explicit two-term
/// form (ambient matrix), kept as an independent route for testing against
/// the skew-projection form.
Eigen::MatrixXd rgrad_R_expanded(const GradientWorkspace& ws, Eigen::Index j);

/// Riemannian Hessian applied to a tangent direction. Rotation components:
///   1/2 ( [B1, [M_j, W_j]] + [[W_j, B1], M_j] )      (stored skew part)
/// translation component: 4 m (I - T E T') eta. The operator is
/// block-diagonal across factors, matching the per-variable derivation.
TangentVector rhess_apply(const GradientWorkspace& ws, const TangentVector& dir);
TangentVector rhess_apply(const PointCloud& cloud, const ReflectionTransform& xf,
                          const Correspondence& corr, const TangentVector& dir);

/// First-order retraction: R_j <- qf(R_j + step R_j W_j) with qf the thin-QR
/// orthogonal factor (positive diagonal, determinant corrected to +1);
/// t <- t + step eta.
ReflectionTransform retract(const ReflectionTransform& xf, const TangentVector& dir, double step);

struct CriticalRotation {
  Eigen::MatrixXd rotation;
  bool ambiguous = false;  // eigenvalue gap between the two smallest < 1e-10
};

/// Orthogonal matrix whose columns are the eigenvectors of the symmetric
/// matrix A sorted by descending eigenvalue, determinant corrected to +1 by
/// flipping the sign of the last column when needed.
CriticalRotation critical_rotation(const Eigen::MatrixXd& a);

}  // namespace mirrorfit
