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

#include "mirrorfit/reflection.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "mirrorfit/rng.hpp"

namespace mirrorfit {

namespace {

constexpr double kOrthogonalityTol = 1e-10;
constexpr double kDeterminantTol = 1e-8;
constexpr double kInvolutionTol = 1e-10;
constexpr double kDegenerateNullTol = 1e-6;

Eigen::MatrixXd flip_matrix(Eigen::Index d) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Identity(d, d);
  e(d - 1, d - 1) = -1.0;
  return e;
}

}  // namespace

ReflectionTransform::ReflectionTransform(std::vector<Eigen::MatrixXd> rotations,
                                         Eigen::VectorXd translation)
    : rotations_(std::move(rotations)), translation_(std::move(translation)) {
  const Eigen::Index d = translation_.size();
  require(d >= 2, ErrorCode::InvalidArgument, "reflection transform needs dimension >= 2");
  require(static_cast<Eigen::Index>(rotations_.size()) == d - 1, ErrorCode::InvalidArgument,
          "reflection transform needs d-1 rotation factors");
  for (const auto& r : rotations_) {
    require(r.rows() == d && r.cols() == d, ErrorCode::InvalidArgument,
            "rotation factor has wrong shape");
    const double ortho = (r.transpose() * r - Eigen::MatrixXd::Identity(d, d)).norm();
    require(ortho <= kOrthogonalityTol, ErrorCode::InvalidArgument,
            "rotation factor is not orthogonal");
    require(std::abs(r.determinant() - 1.0) <= kDeterminantTol, ErrorCode::InvalidArgument,
            "rotation factor determinant is not +1");
  }
  finalize();
}

ReflectionTransform::ReflectionTransform(unchecked_t, std::vector<Eigen::MatrixXd> rotations,
                                         Eigen::VectorXd translation)
    : rotations_(std::move(rotations)), translation_(std::move(translation)) {
  finalize();
}

void ReflectionTransform::finalize() {
  const Eigen::Index d = translation_.size();
  product_ = Eigen::MatrixXd::Identity(d, d);
  for (const auto& r : rotations_) product_ *= r;
  mirror_ = product_ * flip_matrix(d) * product_.transpose();
}

ReflectionTransform ReflectionTransform::identity(Eigen::Index dim) {
  std::vector<Eigen::MatrixXd> rots(static_cast<std::size_t>(dim - 1),
                                    Eigen::MatrixXd::Identity(dim, dim));
  return ReflectionTransform(std::move(rots), Eigen::VectorXd::Zero(dim));
}

ReflectionTransform ReflectionTransform::from_leading_rotation(Eigen::MatrixXd rotation,
                                                               Eigen::VectorXd translation) {
  const Eigen::Index d = translation.size();
  std::vector<Eigen::MatrixXd> rots(static_cast<std::size_t>(d - 1),
                                    Eigen::MatrixXd::Identity(d, d));
  rots[0] = std::move(rotation);
  return ReflectionTransform(std::move(rots), std::move(translation));
}

bool ReflectionTransform::satisfies_invariants(double* worst) const {
  const Eigen::Index d = dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  double w = 0.0;
  for (const auto& r : rotations_) {
    w = std::max(w, (r.transpose() * r - id).norm());
    w = std::max(w, std::abs(r.determinant() - 1.0));
  }
  w = std::max(w, (product_.transpose() * product_ - id).norm());
  w = std::max(w, (mirror_ * mirror_ - id).norm());
  if (worst) *worst = w;
  return w <= kInvolutionTol * 10;
}

PointCloud reflect_points(const PointCloud& cloud, const ReflectionTransform& xf) {
  require(cloud.dim() == xf.dim(), ErrorCode::DimensionMismatch,
          "cloud and transform dimensions differ");
  const Eigen::VectorXd& t = xf.translation();
  Eigen::MatrixXd out = xf.mirror() * (cloud.points.colwise() - t);
  out.colwise() += t;
  return PointCloud(std::move(out));
}

Eigen::MatrixXd compose_product(const ReflectionTransform& xf) { return xf.product(); }

Hyperplane hyperplane_from_transform(const ReflectionTransform& xf) {
  const Eigen::Index d = xf.dim();
  const Eigen::MatrixXd k = Eigen::MatrixXd::Identity(d, d) + xf.mirror();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();  // descending
  require(sv(d - 2) >= kDegenerateNullTol && sv(d - 1) <= kDegenerateNullTol,
          ErrorCode::DegenerateTransform,
          "null space of I + T E T' is not one-dimensional");
  Eigen::VectorXd normal = svd.matrixV().col(d - 1);
  const double offset = -normal.dot(xf.translation());
  return Hyperplane(std::move(normal), offset);
}

double symmetry_error(const PointCloud& cloud, const ReflectionTransform& xf,
                      const Correspondence& corr) {
  require(cloud.dim() == xf.dim(), ErrorCode::DimensionMismatch,
          "cloud and transform dimensions differ");
  require(corr.size() == cloud.count(), ErrorCode::DimensionMismatch,
          "correspondence size does not match cloud");
  const PointCloud mirrored = reflect_points(cloud, xf);
  double total = 0.0;
  for (Eigen::Index i = 0; i < corr.size(); ++i) {
    const auto t = corr.target(i);
    if (t < 0) continue;
    // Column t of X P is x_i; column t of X_m is the mirror image of x_t.
    total += (mirrored.points.col(t) - cloud.points.col(i)).squaredNorm();
  }
  return total;
}

PointCloud householder_reflect(const PointCloud& cloud, const Hyperplane& plane) {
  require(cloud.dim() == plane.normal.size(), ErrorCode::DimensionMismatch,
          "cloud and plane dimensions differ");
  const Eigen::VectorXd& h = plane.normal;
  const Eigen::VectorXd p = plane.foot_point();
  Eigen::MatrixXd centered = cloud.points.colwise() - p;
  Eigen::MatrixXd out = centered - 2.0 * h * (h.transpose() * centered);
  out.colwise() += p;
  return PointCloud(std::move(out));
}

Eigen::MatrixXd givens_rotation(Eigen::Index dim, Eigen::Index i, Eigen::Index j, double theta) {
  require(i != j && i >= 0 && j >= 0 && i < dim && j < dim, ErrorCode::InvalidArgument,
          "invalid rotation plane axes");
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(dim, dim);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  r(i, i) = c;
  r(j, j) = c;
  r(i, j) = -s;
  r(j, i) = s;
  return r;
}

Eigen::MatrixXd rotation_between(const Eigen::VectorXd& from, const Eigen::VectorXd& to) {
  const Eigen::Index d = from.size();
  require(to.size() == d, ErrorCode::DimensionMismatch, "vector dimensions differ");
  Eigen::VectorXd a = from.normalized();
  Eigen::VectorXd b = to.normalized();
  const double c = a.dot(b);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  if (c > 1.0 - 1e-14) return id;
  if (c < -1.0 + 1e-14) {
    // Antipodal: rotate by pi in a plane spanned by a and any perpendicular.
    Eigen::Index k = 0;
    for (Eigen::Index i = 1; i < d; ++i)
      if (std::abs(a(i)) < std::abs(a(k))) k = i;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    w(k) = 1.0;
    w -= a.dot(w) * a;
    w.normalize();
    return id - 2.0 * (a * a.transpose()) - 2.0 * (w * w.transpose());
  }
  // Rotation acting only in span{a, b}: with u = a and v the unit rejection
  // of b from a, R = I + (c-1)(uu' + vv') + s(vu' - uv'), s = sin(angle).
  Eigen::VectorXd v = (b - c * a).normalized();
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  return id + (c - 1.0) * (a * a.transpose() + v * v.transpose()) +
         s * (v * a.transpose() - a * v.transpose());
}

Eigen::MatrixXd random_rotation(Eigen::Index dim, Rng& rng) {
  Eigen::MatrixXd g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  if (q.determinant() < 0.0) q.col(dim - 1) = -q.col(dim - 1);
  return q;
}

ReflectionTransform transform_from_plane(const Eigen::VectorXd& normal,
                                         const Eigen::VectorXd& translation) {
  const Eigen::Index d = normal.size();
  Eigen::VectorXd axis = Eigen::VectorXd::Zero(d);
  axis(d - 1) = 1.0;
  return ReflectionTransform::from_leading_rotation(rotation_between(axis, normal.normalized()),
                                                    translation);
}

}  // namespace mirrorfit
