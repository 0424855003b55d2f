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

#include <doctest.h>

#include <Eigen/SVD>

#include "helpers.hpp"
#include "mirrorfit/synth.hpp"

using namespace mirrorfit;
using namespace mirrorfit::testing;

namespace {

PointCloud two_points(double ax, double ay, double bx, double by) {
  Eigen::MatrixXd pts(2, 2);
  pts << ax, bx, ay, by;
  return PointCloud(pts);
}

}  // namespace

TEST_CASE("reflect_points flips the last coordinate under the identity transform") {
  const auto xf = ReflectionTransform::identity(2);
  const PointCloud in = two_points(1.0, 2.0, 0.0, 0.0);
  const PointCloud out = reflect_points(in, xf);
  CHECK(out.points(0, 0) == doctest::Approx(1.0));
  CHECK(out.points(1, 0) == doctest::Approx(-2.0));
}

TEST_CASE("reflect_points twice is the identity") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index d = 2 + rep % 5;
    const auto xf = random_transform(d, rng);
    const auto cloud = random_cloud(d, 12, rng);
    const auto back = reflect_points(reflect_points(cloud, xf), xf);
    CHECK((back.points - cloud.points).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("reflect_points matches the Householder closed form for a 30-degree axis") {
  const auto xf = axis_transform_2d(30.0 * M_PI / 180.0, Eigen::Vector2d::Zero());
  Eigen::Vector2d eta(-std::sin(30.0 * M_PI / 180.0), std::cos(30.0 * M_PI / 180.0));
  const Eigen::Matrix2d house = Eigen::Matrix2d::Identity() - 2.0 * eta * eta.transpose();
  Rng rng(5);
  const auto cloud = random_cloud(2, 8, rng);
  const auto out = reflect_points(cloud, xf);
  for (Eigen::Index i = 0; i < cloud.count(); ++i) {
    const Eigen::Vector2d expect = house * cloud.points.col(i);
    CHECK((out.points.col(i) - expect).norm() < 1e-12);
  }
}

TEST_CASE("reflect_points rejects dimension mismatches") {
  const auto xf = ReflectionTransform::identity(3);
  const PointCloud in = two_points(1.0, 2.0, 3.0, 4.0);
  CHECK_THROWS_AS(reflect_points(in, xf), Error);
}

TEST_CASE("compose_product") {
  SUBCASE("identity factors") {
    CHECK(compose_product(ReflectionTransform::identity(4))
              .isApprox(Eigen::MatrixXd::Identity(4, 4)));
  }
  SUBCASE("single factor is returned as-is") {
    const double theta = 0.7;
    const auto xf = axis_transform_2d(theta, Eigen::Vector2d::Zero());
    CHECK(compose_product(xf).isApprox(givens_rotation(2, 0, 1, theta), 1e-14));
  }
  SUBCASE("two factors agree with a naive multiply oracle") {
    Rng rng(3);
    for (int rep = 0; rep < 10; ++rep) {
      const auto r1 = givens_rotation(3, 1, 2, rng.uniform(-M_PI, M_PI));
      const auto r2 = givens_rotation(3, 0, 2, rng.uniform(-M_PI, M_PI));
      const ReflectionTransform xf({r1, r2}, Eigen::Vector3d::Zero());
      CHECK((compose_product(xf) - naive_multiply(r1, r2)).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("hyperplane_from_transform identity cases") {
  SUBCASE("plane y = 0") {
    const auto plane = hyperplane_from_transform(ReflectionTransform::identity(2));
    CHECK(plane.normal(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(plane.normal(1) == doctest::Approx(1.0));
    CHECK(plane.offset == doctest::Approx(0.0));
  }
  SUBCASE("plane y = 3 passes through t") {
    std::vector<Eigen::MatrixXd> rots{Eigen::MatrixXd::Identity(2, 2)};
    const ReflectionTransform xf(rots, Eigen::Vector2d(0.0, 3.0));
    const auto plane = hyperplane_from_transform(xf);
    CHECK(plane.normal(1) == doctest::Approx(1.0));
    CHECK(plane.offset == doctest::Approx(-3.0));
  }
}

TEST_CASE("hyperplane_from_transform: points and images are equidistant from the plane") {
  Rng rng(17);
  const auto xf = angles_transform_3d(20.0 * M_PI / 180.0, -35.0 * M_PI / 180.0,
                                      rng.uniform_vector(3, -1.0, 1.0));
  const auto plane = hyperplane_from_transform(xf);
  const auto cloud = random_cloud(3, 25, rng);
  const auto mirrored = reflect_points(cloud, xf);
  for (Eigen::Index i = 0; i < cloud.count(); ++i) {
    const double da = plane.signed_distance(cloud.points.col(i));
    const double db = plane.signed_distance(mirrored.points.col(i));
    CHECK(std::abs(da + db) < 1e-9);  // opposite signed distances
  }
}

TEST_CASE("hyperplane_from_transform flags degenerate transforms") {
  std::vector<Eigen::MatrixXd> rots{0.5 * Eigen::MatrixXd::Identity(2, 2)};
  const ReflectionTransform broken(ReflectionTransform::unchecked_t{}, rots,
                                   Eigen::Vector2d::Zero());
  CHECK_THROWS_AS(hyperplane_from_transform(broken), Error);
  try {
    hyperplane_from_transform(broken);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateTransform);
  }
}

TEST_CASE("null space of I + T E T' is one-dimensional across dimensions") {
  Rng rng(23);
  int checked = 0;
  for (int rep = 0; checked < 1000; ++rep) {
    const Eigen::Index d = 2 + rep % 7;
    const auto xf = random_transform(d, rng);
    const Eigen::MatrixXd k = Eigen::MatrixXd::Identity(d, d) + xf.mirror();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(k);
    const auto& sv = svd.singularValues();
    CHECK(sv(d - 1) < 1e-8);
    CHECK(sv(d - 2) > 0.5);
    ++checked;
  }
}

TEST_CASE("the extracted plane passes through the translation") {
  Rng rng(29);
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index d = 2 + rep % 5;
    const auto xf = random_transform(d, rng);
    const auto plane = hyperplane_from_transform(xf);
    CHECK(std::abs(plane.normal.dot(xf.translation()) + plane.offset) < 1e-10);
  }
}

TEST_CASE("symmetry_error") {
  const PointCloud pair = two_points(1.0, 1.0, 1.0, -1.0);
  const auto xf = ReflectionTransform::identity(2);
  SUBCASE("perfect pair under the swap") {
    const Correspondence swap(2, {1, 0});
    CHECK(symmetry_error(pair, xf, swap) == doctest::Approx(0.0));
  }
  SUBCASE("identity matching pays the full segment twice") {
    CHECK(symmetry_error(pair, xf, Correspondence::identity(2)) == doctest::Approx(8.0));
  }
  SUBCASE("noisy cloud agrees with a per-column loop oracle") {
    Rng rng(31);
    SynthSpec spec;
    spec.dim = 3;
    spec.half_count = 10;
    spec.transform = random_transform(3, rng);
    spec.sigma2 = 0.01;
    spec.seed = 99;
    const auto inst = generate(spec);
    const double got = symmetry_error(inst.cloud, spec.transform, inst.truth.pairs);
    const auto mirrored = reflect_points(inst.cloud, spec.transform);
    double expect = 0.0;
    for (Eigen::Index i = 0; i < inst.cloud.count(); ++i) {
      const auto t = inst.truth.pairs.target(i);
      expect += (inst.cloud.points.col(i) - mirrored.points.col(t)).squaredNorm();
    }
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("symmetry_error is zero at the generator transform of a noiseless cloud") {
  Rng rng(37);
  for (int rep = 0; rep < 10; ++rep) {
    SynthSpec spec;
    spec.dim = 2 + rep % 4;
    spec.half_count = 20;
    spec.transform = random_transform(spec.dim, rng);
    spec.seed = 1000 + rep;
    const auto inst = generate(spec);
    CHECK(symmetry_error(inst.cloud, spec.transform, inst.truth.pairs) < 1e-18);
  }
}

TEST_CASE("householder_reflect") {
  SUBCASE("plane y = 0") {
    const Hyperplane plane(Eigen::Vector2d(0.0, 1.0), 0.0);
    const auto out = householder_reflect(two_points(2.0, 5.0, 0.0, 0.0), plane);
    CHECK(out.points(0, 0) == doctest::Approx(2.0));
    CHECK(out.points(1, 0) == doctest::Approx(-5.0));
  }
  SUBCASE("applying twice is the identity") {
    Rng rng(41);
    const Hyperplane plane(rng.normal_vector(3).normalized(), 0.4);
    const auto cloud = random_cloud(3, 10, rng);
    const auto back = householder_reflect(householder_reflect(cloud, plane), plane);
    CHECK((back.points - cloud.points).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("45-degree plane through the origin maps (1,0) to (0,1)") {
    // Mirror line y = x: unit normal (1,-1)/sqrt(2) (canonical sign).
    const Hyperplane plane(Eigen::Vector2d(1.0, -1.0).normalized(), 0.0);
    const auto out = householder_reflect(two_points(1.0, 0.0, 0.0, 0.0), plane);
    CHECK(out.points(0, 0) == doctest::Approx(0.0));
    CHECK(out.points(1, 0) == doctest::Approx(1.0));
  }
}

TEST_CASE("householder_reflect agrees with reflect_points on equivalent representations") {
  Rng rng(43);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index d = 2 + rep % 5;
    const auto xf = random_transform(d, rng);
    const auto plane = hyperplane_from_transform(xf);
    const auto cloud = random_cloud(d, 15, rng);
    const auto via_transform = reflect_points(cloud, xf);
    const auto via_plane = householder_reflect(cloud, plane);
    CHECK((via_transform.points - via_plane.points).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("transform invariants hold for constructed transforms") {
  Rng rng(47);
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::Index d = 2 + rep % 6;
    const auto xf = random_transform(d, rng);
    const Eigen::MatrixXd m = xf.mirror();
    CHECK((m * m - Eigen::MatrixXd::Identity(d, d)).norm() < 1e-10);
    CHECK((m - m.transpose()).norm() < 1e-10);
    CHECK(std::abs(xf.product().determinant() - 1.0) < 1e-8);
    CHECK(xf.satisfies_invariants());
  }
  std::vector<Eigen::MatrixXd> rots{1.001 * Eigen::MatrixXd::Identity(2, 2)};
  const ReflectionTransform drifted(ReflectionTransform::unchecked_t{}, rots,
                                    Eigen::Vector2d::Zero());
  CHECK_FALSE(drifted.satisfies_invariants());
}

TEST_CASE("invalid rotation factors are rejected") {
  std::vector<Eigen::MatrixXd> rots{2.0 * Eigen::MatrixXd::Identity(2, 2)};
  CHECK_THROWS_AS(ReflectionTransform(rots, Eigen::Vector2d::Zero()), Error);
  Eigen::Matrix2d flip;
  flip << 1.0, 0.0, 0.0, -1.0;  // orthogonal, det -1
  std::vector<Eigen::MatrixXd> improper{flip};
  CHECK_THROWS_AS(ReflectionTransform(improper, Eigen::Vector2d::Zero()), Error);
}
