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

#include "mirrorfit/types.hpp"

namespace mirrorfit {

/// Reflection through an affine hyperplane in R^d, parameterized by d-1
/// rotation factors R_1..R_{d-1} and a translation t. With T the product
/// of the factors and E = diag(1,..,1,-1), a point maps as
///
///   x  ->  T E T' (x - t) + t.
///
/// The conjugated flip T E T' equals I - 2 h h' where h is the last column
/// of T, so the mirror plane has unit normal h and passes through t.
class ReflectionTransform {
 public:
  /// Validates each factor: orthogonal to 1e-10, determinant within 1e-8
  /// of +1. Throws ErrorCode::InvalidArgument on violation.
  ReflectionTransform(std::vector<Eigen::MatrixXd> rotations, Eigen::VectorXd translation);

  /// Skips validation; for internal iteration steps and for tests that
  /// need deliberately broken transforms.
  struct unchecked_t {};
  ReflectionTransform(unchecked_t, std::vector<Eigen::MatrixXd> rotations,
                      Eigen::VectorXd translation);

  /// All factors identity, t = 0.
  static ReflectionTransform identity(Eigen::Index dim);

  /// R_1 is the given rotation, remaining factors identity.
  static ReflectionTransform from_leading_rotation(Eigen::MatrixXd rotation,
                                                   Eigen::VectorXd translation);

  Eigen::Index dim() const { return translation_.size(); }
  Eigen::Index factor_count() const { return static_cast<Eigen::Index>(rotations_.size()); }
  const Eigen::MatrixXd& rotation(Eigen::Index j) const { return rotations_[static_cast<std::size_t>(j)]; }
  const std::vector<Eigen::MatrixXd>& rotations() const { return rotations_; }
  const Eigen::VectorXd& translation() const { return translation_; }

  /// T = R_1 R_2 ... R_{d-1}, computed once at construction.
  const Eigen::MatrixXd& product() const { return product_; }

  /// T E T', the involutive mirror matrix.
  const Eigen::MatrixXd& mirror() const { return mirror_; }

  /// Unit normal of the mirror plane: last column of T, before any sign
  /// canonicalization.
  Eigen::VectorXd raw_normal() const { return product_.col(dim() - 1); }

  bool satisfies_invariants(double* worst = nullptr) const;

 private:
  void finalize();

  std::vector<Eigen::MatrixXd> rotations_;
  Eigen::VectorXd translation_;
  Eigen::MatrixXd product_;
  Eigen::MatrixXd mirror_;
};

/// Image of every point under the reflection. Throws on dimension mismatch.
PointCloud reflect_points(const PointCloud& cloud, const ReflectionTransform& xf);

/// The factor product T (same matrix the transform caches).
Eigen::MatrixXd compose_product(const ReflectionTransform& xf);

/// Mirror plane of the transform, extracted from the null space of
/// I + T E T' via SVD. Throws ErrorCode::DegenerateTransform when the
/// second-smallest singular value falls below 1e-6 (the null space must be
/// one-dimensional for a valid reflection).
Hyperplane hyperplane_from_transform(const ReflectionTransform& xf);

/// || T E T'(X - t e') + t e' - X P ||_F^2, restricted to matched columns
/// when the correspondence is partial.
double symmetry_error(const PointCloud& cloud, const ReflectionTransform& xf,
                      const Correspondence& corr);

/// Householder reflection of every point through the plane:
/// x -> (I - 2 h h')(x - p) + p with p the plane's foot point.
PointCloud householder_reflect(const PointCloud& cloud, const Hyperplane& plane);

// Rotation construction helpers.

/// Plane rotation by angle theta acting on coordinates (i, j):
/// entries (i,i) = (j,j) = cos, (i,j) = -sin, (j,i) = sin.
Eigen::MatrixXd givens_rotation(Eigen::Index dim, Eigen::Index i, Eigen::Index j, double theta);

/// Shortest rotation in SO(d) mapping unit vector `from` to unit vector `to`.
Eigen::MatrixXd rotation_between(const Eigen::VectorXd& from, const Eigen::VectorXd& to);

class Rng;

/// Random rotation: orthogonal factor of a Gaussian matrix' QR
/// decomposition, sign-fixed and determinant-corrected to +1.
Eigen::MatrixXd random_rotation(Eigen::Index dim, Rng& rng);

/// Transform whose mirror plane has the given unit normal and passes
/// through t: leading factor rotates e_d onto the normal, the rest stay
/// identity.
ReflectionTransform transform_from_plane(const Eigen::VectorXd& normal,
                                         const Eigen::VectorXd& translation);

}  // namespace mirrorfit
