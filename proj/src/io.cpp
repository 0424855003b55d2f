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

#include "mirrorfit/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mirrorfit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == ',' || ch == '\r') {
      if (!current.empty()) {
        fields.push_back(current);
        current.clear();
      }
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) fields.push_back(current);
  return fields;
}

double parse_double(const std::string& field, const std::string& origin, std::size_t line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  require(ec == std::errc() && ptr == end && std::isfinite(value), ErrorCode::ParseError,
          origin + ": line " + std::to_string(line_no) + ": invalid value '" + field + "'");
  return value;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const ordered_json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  return v;
}

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  ordered_json arr = ordered_json::array();  // row-major
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  return arr;
}

Eigen::MatrixXd matrix_from_json(const ordered_json& arr, Eigen::Index d) {
  require(static_cast<Eigen::Index>(arr.size()) == d * d, ErrorCode::ParseError,
          "rotation array has wrong length");
  Eigen::MatrixXd m(d, d);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = arr[k++].get<double>();
  return m;
}

ordered_json pairs_to_json(const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs) {
  ordered_json arr = ordered_json::array();
  for (const auto& [a, b] : pairs) arr.push_back(ordered_json::array({a, b}));
  return arr;
}

std::vector<std::pair<std::int32_t, std::int32_t>> pairs_from_json(const ordered_json& arr) {
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  pairs.reserve(arr.size());
  for (const auto& item : arr) {
    require(item.is_array() && item.size() == 2, ErrorCode::ParseError,
            "correspondence entries must be [i, j] pairs");
    pairs.emplace_back(item[0].get<std::int32_t>(), item[1].get<std::int32_t>());
  }
  return pairs;
}

ordered_json parse_json(const std::string& text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  require(!doc.is_discarded(), ErrorCode::ParseError, "invalid JSON document");
  return doc;
}

}  // namespace

PointCloud read_point_text(const std::string& text, const std::string& origin) {
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  std::vector<double> values;
  Eigen::Index count = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (dim == 0) {
      dim = fields.size();
      require(dim >= 2, ErrorCode::ParseError,
              origin + ": line " + std::to_string(line_no) + ": points need at least 2 fields");
    }
    require(fields.size() == dim, ErrorCode::ParseError,
            origin + ": line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                " fields, found " + std::to_string(fields.size()));
    for (const auto& f : fields) values.push_back(parse_double(f, origin, line_no));
    ++count;
  }
  require(count >= 2, ErrorCode::ParseError, origin + ": fewer than 2 points");
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(dim), count);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < count; ++i)
    for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(dim); ++r) pts(r, i) = values[k++];
  return PointCloud(std::move(pts));
}

PointCloud read_point_file(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() > 4 && path.substr(path.size() - 4) == ".ply")
    return read_ply_text(text, path);
  return read_point_text(text, path);
}

std::string write_point_text(const PointCloud& cloud) {
  std::string out;
  for (Eigen::Index i = 0; i < cloud.count(); ++i) {
    for (Eigen::Index r = 0; r < cloud.dim(); ++r) {
      if (r) out.push_back(' ');
      out += format_double(cloud.points(r, i));
    }
    out.push_back('\n');
  }
  return out;
}

void write_point_file(const PointCloud& cloud, const std::string& path) {
  write_file(path, write_point_text(cloud));
}

PointCloud read_ply_text(const std::string& text, const std::string& origin) {
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  require(std::getline(stream, line) && split_fields(line) == std::vector<std::string>{"ply"},
          ErrorCode::ParseError, origin + ": not a PLY file");
  ++line_no;

  Eigen::Index vertex_count = -1;
  int coord_props = 0;
  bool in_vertex_element = false;
  bool header_done = false;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields[0] == "format") {
      require(fields.size() >= 2 && fields[1] == "ascii", ErrorCode::ParseError,
              origin + ": only ascii PLY is supported");
    } else if (fields[0] == "element") {
      in_vertex_element = fields.size() >= 3 && fields[1] == "vertex";
      if (in_vertex_element) vertex_count = std::stol(fields[2]);
    } else if (fields[0] == "property" && in_vertex_element) {
      ++coord_props;
    } else if (fields[0] == "end_header") {
      header_done = true;
      break;
    }
  }
  require(header_done && vertex_count >= 2 && coord_props >= 3, ErrorCode::ParseError,
          origin + ": malformed PLY header");

  Eigen::MatrixXd pts(3, vertex_count);
  Eigen::Index read = 0;
  while (read < vertex_count && std::getline(stream, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    require(static_cast<int>(fields.size()) >= coord_props, ErrorCode::ParseError,
            origin + ": line " + std::to_string(line_no) + ": truncated vertex row");
    for (Eigen::Index r = 0; r < 3; ++r)
      pts(r, read) = parse_double(fields[static_cast<std::size_t>(r)], origin, line_no);
    ++read;
  }
  require(read == vertex_count, ErrorCode::ParseError, origin + ": missing vertex rows");
  return PointCloud(std::move(pts));
}

ResultDocument ResultDocument::from_result(const SymmetryResult& result, std::uint64_t seed) {
  ResultDocument doc;
  doc.seed = seed;
  doc.plane = result.plane;
  doc.rotations = result.transform.rotations();
  doc.translation = result.transform.translation();
  doc.correspondences = result.correspondence.mutual_pairs();
  doc.cost = result.final_cost;
  doc.alternations = result.alternations;
  doc.subsample = result.subsample;
  if (!doc.subsample.empty()) {
    // Pairs index the detection working set; map them back to the caller's
    // original point order.
    for (auto& [a, b] : doc.correspondences) {
      a = static_cast<std::int32_t>(doc.subsample[static_cast<std::size_t>(a)]);
      b = static_cast<std::int32_t>(doc.subsample[static_cast<std::size_t>(b)]);
    }
  }
  return doc;
}

std::string result_to_json(const ResultDocument& doc) {
  ordered_json j;
  j["schema_version"] = doc.schema_version;
  j["seed"] = doc.seed;
  j["plane"] = {{"normal", vector_to_json(doc.plane.normal)}, {"offset", doc.plane.offset}};
  ordered_json rots = ordered_json::array();
  for (const auto& r : doc.rotations) rots.push_back(matrix_to_json(r));
  j["rotations"] = rots;
  j["translation"] = vector_to_json(doc.translation);
  j["correspondences"] = pairs_to_json(doc.correspondences);
  j["cost"] = doc.cost;
  j["alternations"] = doc.alternations;
  if (!doc.subsample.empty()) {
    ordered_json sub = ordered_json::array();
    for (auto i : doc.subsample) sub.push_back(i);
    j["subsample"] = sub;
  }
  return j.dump(2) + "\n";
}

ResultDocument result_from_json(const std::string& text) {
  const ordered_json j = parse_json(text);
  try {
    ResultDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    require(doc.schema_version == 1, ErrorCode::ParseError, "unsupported result schema version");
    doc.seed = j.at("seed").get<std::uint64_t>();
    doc.plane = Hyperplane(vector_from_json(j.at("plane").at("normal")),
                           j.at("plane").at("offset").get<double>());
    const Eigen::Index d = doc.plane.normal.size();
    for (const auto& r : j.at("rotations")) doc.rotations.push_back(matrix_from_json(r, d));
    doc.translation = vector_from_json(j.at("translation"));
    doc.correspondences = pairs_from_json(j.at("correspondences"));
    doc.cost = j.at("cost").get<double>();
    doc.alternations = j.at("alternations").get<int>();
    if (j.contains("subsample"))
      for (const auto& i : j.at("subsample")) doc.subsample.push_back(i.get<Eigen::Index>());
    return doc;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("result document: ") + e.what());
  }
}

TruthDocument TruthDocument::from_truth(const GroundTruth& truth, Eigen::Index count) {
  TruthDocument doc;
  doc.seed = truth.seed;
  doc.sigma2 = truth.sigma2;
  doc.plane = truth.plane;
  doc.rotations = truth.transform.rotations();
  doc.translation = truth.transform.translation();
  doc.pairs = truth.pairs.mutual_pairs();
  doc.count = count;
  return doc;
}

GroundTruth TruthDocument::to_truth() const {
  std::vector<std::int32_t> target(static_cast<std::size_t>(count), -1);
  for (const auto& [a, b] : pairs) {
    require(a >= 0 && b >= 0 && a < count && b < count, ErrorCode::ParseError,
            "truth pair index out of range");
    target[static_cast<std::size_t>(a)] = b;
    target[static_cast<std::size_t>(b)] = a;
  }
  GroundTruth truth;
  truth.pairs = Correspondence(count, std::move(target));
  truth.plane = plane;
  truth.transform = ReflectionTransform(rotations, translation);
  truth.sigma2 = sigma2;
  truth.seed = seed;
  return truth;
}

std::string truth_to_json(const TruthDocument& doc) {
  ordered_json j;
  j["schema_version"] = doc.schema_version;
  j["seed"] = doc.seed;
  j["sigma2"] = doc.sigma2;
  j["count"] = doc.count;
  j["plane"] = {{"normal", vector_to_json(doc.plane.normal)}, {"offset", doc.plane.offset}};
  ordered_json rots = ordered_json::array();
  for (const auto& r : doc.rotations) rots.push_back(matrix_to_json(r));
  j["rotations"] = rots;
  j["translation"] = vector_to_json(doc.translation);
  j["pairs"] = pairs_to_json(doc.pairs);
  return j.dump(2) + "\n";
}

TruthDocument truth_from_json(const std::string& text) {
  const ordered_json j = parse_json(text);
  try {
    TruthDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    require(doc.schema_version == 1, ErrorCode::ParseError, "unsupported truth schema version");
    doc.seed = j.at("seed").get<std::uint64_t>();
    doc.sigma2 = j.at("sigma2").get<double>();
    doc.count = j.at("count").get<Eigen::Index>();
    doc.plane = Hyperplane(vector_from_json(j.at("plane").at("normal")),
                           j.at("plane").at("offset").get<double>());
    const Eigen::Index d = doc.plane.normal.size();
    for (const auto& r : j.at("rotations")) doc.rotations.push_back(matrix_from_json(r, d));
    doc.translation = vector_from_json(j.at("translation"));
    doc.pairs = pairs_from_json(j.at("pairs"));
    return doc;
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("truth document: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::IoError, "cannot write '" + path + "'");
  out << content;
  require(out.good(), ErrorCode::IoError, "write failed for '" + path + "'");
}

}  // namespace mirrorfit
