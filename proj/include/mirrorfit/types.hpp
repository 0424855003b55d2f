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

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "mirrorfit/error.hpp"

namespace mirrorfit {

/// A finite point set in R^d, stored column-major: points(:, i) is point i.
struct PointCloud {
  Eigen::MatrixXd points;  // d x n

  PointCloud() = default;

  explicit PointCloud(Eigen::MatrixXd pts) : points(std::move(pts)) {
    require(points.rows() >= 2, ErrorCode::InvalidArgument,
            "point cloud dimension must be at least 2");
    require(points.cols() >= 2, ErrorCode::InvalidArgument,
            "point cloud must contain at least 2 points");
    require(points.allFinite(), ErrorCode::InvalidArgument,
            "point cloud contains non-finite coordinates");
  }

  Eigen::Index dim() const { return points.rows(); }
  Eigen::Index count() const { return points.cols(); }
  Eigen::VectorXd point(Eigen::Index i) const { return points.col(i); }
};

/// Affine hyperplane {x : normal . x + offset = 0} with unit normal.
/// Sign convention: the first component of the normal whose magnitude
/// exceeds 1e-12 is positive, which makes outputs deterministic.
struct Hyperplane {
  Eigen::VectorXd normal;
  double offset = 0.0;

  Hyperplane() = default;

  Hyperplane(Eigen::VectorXd n, double w0) : normal(std::move(n)), offset(w0) {
    const double len = normal.norm();
    require(len > 1e-12, ErrorCode::InvalidArgument, "hyperplane normal is near zero");
    if (std::abs(len - 1.0) > 1e-12) {
      normal /= len;
      offset /= len;
    }
    canonicalize_sign();
  }

  /// Signed distance of x from the plane.
  double signed_distance(const Eigen::VectorXd& x) const {
    return normal.dot(x) + offset;
  }

  double distance(const Eigen::VectorXd& x) const {
    return std::abs(signed_distance(x));
  }

  /// Point on the plane closest to the origin.
  Eigen::VectorXd foot_point() const { return -offset * normal; }

  /// Angle in radians between this plane's normal and another's, ignoring
  /// orientation, clamped for safety against roundoff.
  double normal_angle(const Hyperplane& other) const {
    const double c = std::min(1.0, std::abs(normal.dot(other.normal)));
    return std::acos(c);
  }

  void canonicalize_sign() {
    for (Eigen::Index i = 0; i < normal.size(); ++i) {
      if (std::abs(normal(i)) > 1e-12) {
        if (normal(i) < 0.0) {
          normal = -normal;
          offset = -offset;
        }
        return;
      }
    }
  }
};

/// Mirror pairing over n points: target(i) == i' when point i' is matched
/// as the mirror image of point i, and -1 when i is unmatched. Self-pairs
/// (target(i) == i) mark points lying on the mirror plane. The matrix view
/// is P with P(i, i') = 1, so matched targets are unique (injective map).
class Correspondence {
 public:
  Correspondence() = default;

  Correspondence(Eigen::Index n, std::vector<std::int32_t> target)
      : n_(n), target_(std::move(target)) {
    require(static_cast<Eigen::Index>(target_.size()) == n_, ErrorCode::InvalidArgument,
            "correspondence size does not match point count");
    std::vector<char> used(static_cast<std::size_t>(n_), 0);
    for (auto t : target_) {
      if (t < 0) continue;
      require(t < n_, ErrorCode::InvalidArgument, "correspondence target out of range");
      require(!used[static_cast<std::size_t>(t)], ErrorCode::InvalidArgument,
              "correspondence target repeated (column sum > 1)");
      used[static_cast<std::size_t>(t)] = 1;
    }
  }

  static Correspondence identity(Eigen::Index n) {
    std::vector<std::int32_t> t(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
    return Correspondence(n, std::move(t));
  }

  Eigen::Index size() const { return n_; }

  /// Mirror target of i, or -1.
  std::int32_t target(Eigen::Index i) const { return target_[static_cast<std::size_t>(i)]; }

  bool matched(Eigen::Index i) const { return target(i) >= 0; }

  /// Number of matched entries, i.e. e' P e.
  Eigen::Index matched_count() const {
    Eigen::Index m = 0;
    for (auto t : target_)
      if (t >= 0) ++m;
    return m;
  }

  /// True when every matched entry is reciprocated: P(i,i') == P(i',i).
  bool is_mutual() const {
    for (Eigen::Index i = 0; i < n_; ++i) {
      const auto t = target(i);
      if (t >= 0 && target(t) != i) return false;
    }
    return true;
  }

  bool is_full_permutation() const { return matched_count() == n_; }

  /// Unordered mutual pairs, each listed once with first <= second.
  std::vector<std::pair<std::int32_t, std::int32_t>> mutual_pairs() const {
    std::vector<std::pair<std::int32_t, std::int32_t>> out;
    for (Eigen::Index i = 0; i < n_; ++i) {
      const auto t = target(i);
      if (t >= 0 && target(t) == static_cast<std::int32_t>(i) && t >= i)
        out.emplace_back(static_cast<std::int32_t>(i), t);
    }
    return out;
  }

  bool operator==(const Correspondence& other) const {
    return n_ == other.n_ && target_ == other.target_;
  }

  const std::vector<std::int32_t>& targets() const { return target_; }

 private:
  Eigen::Index n_ = 0;
  std::vector<std::int32_t> target_;
};

}  // namespace mirrorfit
