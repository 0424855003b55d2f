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

#include "helpers.hpp"
#include "mirrorfit/synth.hpp"

using namespace mirrorfit;
using namespace mirrorfit::testing;

TEST_CASE("generate") {
  SUBCASE("noiseless clouds have exactly zero error at the generator") {
    SynthSpec spec;
    spec.dim = 4;
    spec.half_count = 25;
    Rng rng(3);
    spec.transform = random_transform(4, rng);
    spec.seed = 100;
    const auto inst = generate(spec);
    CHECK(inst.cloud.count() == 50);
    CHECK(symmetry_error(inst.cloud, spec.transform, inst.truth.pairs) < 1e-18);
  }

  SUBCASE("mean displacement matches the Gaussian norm expectation") {
    SynthSpec clean;
    clean.dim = 2;
    clean.half_count = 50;
    clean.transform = axis_transform_2d(0.4, Eigen::Vector2d(0.5, 0.5));
    clean.seed = 6;
    SynthSpec noisy = clean;
    noisy.sigma2 = 0.01;
    const auto a = generate(clean);
    const auto b = generate(noisy);
    double mean = 0.0;
    for (Eigen::Index i = 0; i < a.cloud.count(); ++i)
      mean += (a.cloud.points.col(i) - b.cloud.points.col(i)).norm();
    mean /= static_cast<double>(a.cloud.count());
    const double expect = 0.1 * std::sqrt(M_PI / 2.0);
    CHECK(std::abs(mean - expect) < 0.15 * expect);
  }

  SUBCASE("identical seeds give identical clouds") {
    SynthSpec spec;
    spec.dim = 3;
    spec.half_count = 20;
    spec.transform = angles_transform_3d(0.2, 0.3, Eigen::Vector3d(0.5, 0.5, 0.5));
    spec.sigma2 = 0.05;
    spec.seed = 11;
    const auto a = generate(spec);
    const auto b = generate(spec);
    CHECK(a.cloud.points == b.cloud.points);
  }

  SUBCASE("a single base point yields one mirror pair") {
    SynthSpec spec;
    spec.dim = 2;
    spec.half_count = 1;
    spec.transform = axis_transform_2d(0.4, Eigen::Vector2d(0.5, 0.5));
    spec.seed = 5;
    const auto inst = generate(spec);
    CHECK(inst.cloud.count() == 2);
    CHECK(inst.truth.pairs.target(0) == 1);
    CHECK(symmetry_error(inst.cloud, spec.transform, inst.truth.pairs) < 1e-20);
  }

  SUBCASE("the on-plane extra point is its own mirror") {
    SynthSpec spec;
    spec.dim = 2;
    spec.half_count = 5;
    spec.transform = axis_transform_2d(0.9, Eigen::Vector2d(0.5, 0.5));
    spec.seed = 13;
    spec.on_plane_extra = true;
    const auto inst = generate(spec);
    CHECK(inst.cloud.count() == 11);
    CHECK(inst.truth.pairs.target(10) == 10);
    CHECK(inst.truth.plane.distance(inst.cloud.points.col(10)) < 1e-12);
  }
}

TEST_CASE("error_ed") {
  SynthSpec spec;
  spec.dim = 2;
  spec.half_count = 15;
  spec.transform = axis_transform_2d(0.7, Eigen::Vector2d(0.5, 0.5));
  spec.seed = 17;
  const auto inst = generate(spec);

  SUBCASE("perfect pattern at the true plane scores exactly one") {
    CHECK(error_ed(inst.cloud, inst.truth.pairs, inst.truth.plane).value == doctest::Approx(1.0));
  }
  SUBCASE("a plane rotated 90 degrees scores zero") {
    const Eigen::Vector2d axis = inst.truth.plane.normal;
    const Hyperplane perpendicular(Eigen::Vector2d(-axis(1), axis(0)), 0.0);
    CHECK(error_ed(inst.cloud, inst.truth.pairs, perpendicular).value ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("self-pairs are excluded and counted") {
    SynthSpec with_self = spec;
    with_self.on_plane_extra = true;
    const auto inst2 = generate(with_self);
    const auto v = error_ed(inst2.cloud, inst2.truth.pairs, inst2.truth.plane);
    CHECK(v.excluded == 1);
    CHECK(v.value == doctest::Approx(1.0));
  }
}

TEST_CASE("detected e_d tracks the ground-truth value on a gentle d=2 sweep") {
  for (int k = 0; k < 3; ++k) {
    SynthSpec spec;
    spec.dim = 2;
    spec.half_count = 50;
    spec.transform = axis_transform_2d(0.3 + 0.4 * k, Eigen::Vector2d(0.5, 0.5));
    spec.sigma2 = 0.02 * 0.02;  // sigma = 0.02
    spec.seed = 800 + k;
    const auto inst = generate(spec);
    DetectConfig cfg;
    cfg.rng_seed = 40 + k;
    const auto det = detect(inst.cloud, cfg);
    const double ed_det = error_ed(inst.cloud, det.correspondence, det.plane).value;
    const double ed_gt = error_ed(inst.cloud, inst.truth.pairs, inst.truth.plane).value;
    CHECK(std::abs(ed_det - ed_gt) <= 0.05 * ed_gt);
  }
}

TEST_CASE("error_em") {
  SynthSpec spec;
  spec.dim = 3;
  spec.half_count = 20;
  spec.transform = angles_transform_3d(0.5, -0.3, Eigen::Vector3d(0.5, 0.5, 0.5));
  spec.seed = 19;
  const auto inst = generate(spec);

  SUBCASE("perfect pattern at the truth is zero") {
    CHECK(error_em(inst.cloud, inst.truth.pairs, inst.truth.plane).value < 1e-12);
  }
  SUBCASE("translating the plane moves the metric by exactly the shift") {
    const double delta = 0.37;
    const Hyperplane shifted(inst.truth.plane.normal, inst.truth.plane.offset + delta);
    CHECK(error_em(inst.cloud, inst.truth.pairs, shifted).value == doctest::Approx(delta));
  }
}

TEST_CASE("correspondence_rate") {
  SynthSpec spec;
  spec.dim = 2;
  spec.half_count = 10;
  spec.transform = axis_transform_2d(1.2, Eigen::Vector2d(0.5, 0.5));
  spec.seed = 23;
  const auto inst = generate(spec);

  SUBCASE("exact estimate scores one for any positive threshold") {
    CHECK(correspondence_rate(inst.truth.pairs, inst.truth, inst.cloud, 1e-9) == 1.0);
  }
  SUBCASE("zero threshold scores zero (strict inequality)") {
    CHECK(correspondence_rate(inst.truth.pairs, inst.truth, inst.cloud, 0.0) == 0.0);
  }
}

TEST_CASE("plane_correct") {
  Rng rng(29);
  const auto cloud = random_cloud(3, 30, rng);
  const auto bbox = compute_bbox(cloud);
  const Hyperplane gt(Eigen::Vector3d(0.0, 0.0, 1.0), -0.5);

  SUBCASE("an exact match passes any positive thresholds") {
    CHECK(plane_correct(gt, gt, 1e-6, 1e-6, bbox));
  }
  SUBCASE("normals 46 degrees apart fail a 45-degree test") {
    const double a = 46.0 * M_PI / 180.0;
    const Hyperplane est(Eigen::Vector3d(std::sin(a), 0.0, std::cos(a)), -0.5);
    CHECK_FALSE(plane_correct(est, gt, 45.0 * M_PI / 180.0, 10.0, bbox));
  }
  SUBCASE("offset planes fail the distance test") {
    const Hyperplane est(Eigen::Vector3d(0.0, 0.0, 1.0), -0.9);
    CHECK_FALSE(plane_correct(est, gt, 0.1, 0.05, bbox));
    CHECK(plane_correct(est, gt, 0.1, 0.5, bbox));
  }
}

TEST_CASE("metric bounds and ground-truth sanity") {
  Rng rng(31);
  for (int rep = 0; rep < 6; ++rep) {
    SynthSpec spec;
    spec.dim = 2 + rep % 4;
    spec.half_count = 15;
    spec.transform = random_transform(spec.dim, rng);
    spec.sigma2 = 0.02 * (rep % 3);
    spec.seed = 600 + rep;
    const auto inst = generate(spec);
    const auto ed = error_ed(inst.cloud, inst.truth.pairs, inst.truth.plane);
    const auto em = error_em(inst.cloud, inst.truth.pairs, inst.truth.plane);
    CHECK(ed.value >= 0.0);
    CHECK(ed.value <= 1.0 + 1e-12);
    CHECK(em.value >= 0.0);
    if (spec.sigma2 == 0.0) {
      CHECK(ed.value == doctest::Approx(1.0));
      CHECK(em.value < 1e-12);
      CHECK(correspondence_rate(inst.truth.pairs, inst.truth, inst.cloud, 1e-6) == 1.0);
    }
  }
}

TEST_CASE("sweep produces monotone curves and per-level aggregates") {
  std::vector<SynthSpec> batch;
  Rng rng(37);
  for (double sigma2 : {0.0, 0.04}) {
    for (int k = 0; k < 2; ++k) {
      SynthSpec spec;
      spec.dim = 2;
      spec.half_count = 20;
      spec.transform = axis_transform_2d(rng.uniform(-1.0, 1.0), Eigen::Vector2d(0.5, 0.5));
      spec.sigma2 = sigma2;
      spec.seed = 700 + k + static_cast<int>(sigma2 * 100);
      batch.push_back(spec);
    }
  }
  DetectConfig cfg;
  cfg.rng_seed = 11;
  const auto result = sweep(batch, cfg, 2);
  CHECK(result.failures == 0);
  REQUIRE(result.sigma2_levels.size() == 2);
  REQUIRE(result.corr_rate_by_level.size() == 2);
  for (const auto& curves : result.corr_rate_by_level) {
    REQUIRE(curves.rates.size() == curves.thresholds.size());
    for (std::size_t k = 1; k < curves.rates.size(); ++k)
      CHECK(curves.rates[k] >= curves.rates[k - 1] - 1e-12);
  }
  for (const auto& curves : result.precision_by_level) {
    for (std::size_t k = 1; k < curves.rates.size(); ++k)
      CHECK(curves.rates[k] >= curves.rates[k - 1] - 1e-12);
  }
  // Noiseless level saturates instantly.
  CHECK(result.corr_rate_by_level[0].rates[1] == 1.0);

  // Thread count must not affect results.
  const auto serial = sweep(batch, cfg, 1);
  for (std::size_t lvl = 0; lvl < result.corr_rate_by_level.size(); ++lvl)
    CHECK(serial.corr_rate_by_level[lvl].rates == result.corr_rate_by_level[lvl].rates);
}

TEST_CASE("evaluation grids have the documented cardinalities") {
  CHECK(evaluation_grid_2d(0).size() == 1254);
  CHECK(evaluation_grid_3d(0).size() == 1056);
}

TEST_CASE("grid transforms follow the stated angle parameterization") {
  // d=2: the mirror axis of the transform built for angle t is (cos t, sin t).
  const double theta = 25.0 * M_PI / 180.0;
  const auto xf = axis_transform_2d(theta, Eigen::Vector2d::Zero());
  const auto plane = hyperplane_from_transform(xf);
  const Eigen::Vector2d expected_normal(-std::sin(theta), std::cos(theta));
  CHECK(std::abs(std::abs(plane.normal.dot(expected_normal)) - 1.0) < 1e-12);
}
