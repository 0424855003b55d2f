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

#include <json.hpp>

#include "helpers.hpp"
#include "mirrorfit/io.hpp"

using namespace mirrorfit;
using namespace mirrorfit::testing;

TEST_CASE("point text parsing") {
  SUBCASE("whitespace, commas, comments and blank lines") {
    const std::string text =
        "# demo cloud\n"
        "1.0 2.0\n"
        "\n"
        "3.5,4.5\n"
        "  5 , 6 \n";
    const auto cloud = read_point_text(text);
    CHECK(cloud.dim() == 2);
    CHECK(cloud.count() == 3);
    CHECK(cloud.points(0, 1) == doctest::Approx(3.5));
    CHECK(cloud.points(1, 2) == doctest::Approx(6.0));
  }
  SUBCASE("a malformed row names its line number") {
    const std::string text = "1 2\n3 4\n5 6 7\n";
    try {
      read_point_text(text, "demo.txt");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("non-numeric fields name their line number") {
    const std::string text = "1 2\nx 4\n";
    try {
      read_point_text(text, "demo.txt");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("round trip preserves coordinates exactly") {
    Rng rng(5);
    const auto cloud = random_cloud(4, 12, rng);
    const auto back = read_point_text(write_point_text(cloud));
    CHECK(back.points == cloud.points);
  }
}

TEST_CASE("ascii ply vertex lists are readable") {
  const std::string text =
      "ply\n"
      "format ascii 1.0\n"
      "comment demo\n"
      "element vertex 3\n"
      "property float x\n"
      "property float y\n"
      "property float z\n"
      "end_header\n"
      "0 0 1\n"
      "0 1 0\n"
      "1 0 0\n";
  const auto cloud = read_ply_text(text);
  CHECK(cloud.dim() == 3);
  CHECK(cloud.count() == 3);
  CHECK(cloud.points(2, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(read_ply_text("not a ply"), Error);
}

TEST_CASE("result document schema is pinned") {
  ResultDocument doc;
  doc.seed = 42;
  doc.plane = Hyperplane(Eigen::Vector2d(0.0, 1.0), -0.25);
  doc.rotations = {Eigen::MatrixXd::Identity(2, 2)};
  doc.translation = Eigen::Vector2d(0.1, 0.2);
  doc.correspondences = {{0, 1}, {2, 3}};
  doc.cost = 1.5e-12;
  doc.alternations = 3;

  const std::string json = result_to_json(doc);
  const auto parsed = nlohmann::ordered_json::parse(json);
  const std::vector<std::string> keys = {"schema_version", "seed",  "plane",
                                         "rotations",      "translation", "correspondences",
                                         "cost",           "alternations"};
  std::vector<std::string> got;
  for (auto it = parsed.begin(); it != parsed.end(); ++it) got.push_back(it.key());
  CHECK(got == keys);
  CHECK(parsed["schema_version"] == 1);

  const ResultDocument back = result_from_json(json);
  CHECK(back.seed == doc.seed);
  CHECK(back.plane.normal == doc.plane.normal);
  CHECK(back.plane.offset == doc.plane.offset);
  CHECK(back.correspondences == doc.correspondences);
  CHECK(back.cost == doc.cost);
  CHECK(back.alternations == doc.alternations);
  CHECK(back.rotations.size() == 1);
  CHECK(back.translation == doc.translation);
}

TEST_CASE("subsampled results carry the original indices") {
  ResultDocument doc;
  doc.plane = Hyperplane(Eigen::Vector2d(1.0, 0.0), 0.0);
  doc.rotations = {Eigen::MatrixXd::Identity(2, 2)};
  doc.translation = Eigen::Vector2d::Zero();
  doc.correspondences = {{0, 1}};
  doc.subsample = {5, 9};
  const ResultDocument back = result_from_json(result_to_json(doc));
  CHECK(back.subsample == doc.subsample);
}

TEST_CASE("truth documents round trip") {
  SynthSpec spec;
  spec.dim = 3;
  spec.half_count = 6;
  spec.transform = angles_transform_3d(0.2, -0.4, Eigen::Vector3d(0.5, 0.5, 0.5));
  spec.sigma2 = 0.01;
  spec.seed = 77;
  const auto inst = generate(spec);
  const auto doc = TruthDocument::from_truth(inst.truth, inst.cloud.count());
  const auto back = truth_from_json(truth_to_json(doc));
  CHECK(back.count == inst.cloud.count());
  CHECK(back.sigma2 == spec.sigma2);
  CHECK(back.pairs == doc.pairs);
  const GroundTruth truth = back.to_truth();
  CHECK(truth.pairs == inst.truth.pairs);
  CHECK((truth.plane.normal - inst.truth.plane.normal).norm() < 1e-15);
}

TEST_CASE("invalid json reports a parse error") {
  CHECK_THROWS_AS(result_from_json("{ nope"), Error);
  CHECK_THROWS_AS(result_from_json("{\"schema_version\": 9}"), Error);
}
