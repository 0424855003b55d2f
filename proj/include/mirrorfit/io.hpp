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

#include <cstdint>
#include <string>
#include <vector>

#include "mirrorfit/pipeline.hpp"
#include "mirrorfit/synth.hpp"
#include "mirrorfit/types.hpp"

namespace mirrorfit {

// Point files are delimited text: one point per line, fields separated by
// whitespace and/or commas, lines starting with '#' ignored, dimension
// inferred from the first data line. Parse errors report the line number.

PointCloud read_point_text(const std::string& text, const std::string& origin = "<input>");
PointCloud read_point_file(const std::string& path);
std::string write_point_text(const PointCloud& cloud);
void write_point_file(const PointCloud& cloud, const std::string& path);

/// Reader for ASCII PLY vertex lists (x, y, z properties); d = 3 only.
PointCloud read_ply_text(const std::string& text, const std::string& origin = "<input>");

// Machine-readable result document, schema v1. Field set:
//   schema_version, seed, plane{normal, offset}, rotations (row-major),
//   translation, correspondences (mutual [i, i'] pairs, i <= i'), cost,
//   alternations, and subsample (original indices; only when subsampling
//   was applied).
struct ResultDocument {
  int schema_version = 1;
  std::uint64_t seed = 0;
  Hyperplane plane;
  std::vector<Eigen::MatrixXd> rotations;
  Eigen::VectorXd translation;
  std::vector<std::pair<std::int32_t, std::int32_t>> correspondences;
  double cost = 0.0;
  int alternations = 0;
  std::vector<Eigen::Index> subsample;

  static ResultDocument from_result(const SymmetryResult& result, std::uint64_t seed);
};

std::string result_to_json(const ResultDocument& doc);
ResultDocument result_from_json(const std::string& text);

// Ground-truth sidecar written next to synthesized clouds, schema v1.
struct TruthDocument {
  int schema_version = 1;
  std::uint64_t seed = 0;
  double sigma2 = 0.0;
  Hyperplane plane;
  std::vector<Eigen::MatrixXd> rotations;
  Eigen::VectorXd translation;
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  Eigen::Index count = 0;

  static TruthDocument from_truth(const GroundTruth& truth, Eigen::Index count);
  GroundTruth to_truth() const;
};

std::string truth_to_json(const TruthDocument& doc);
TruthDocument truth_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace mirrorfit
