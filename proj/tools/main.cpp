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

// mirrorfit command-line tool: detect (point file -> result JSON),
// synth (seeded symmetric clouds + ground-truth sidecars) and eval
// (long-format CSV metrics, from files or from a seeded sweep).
//
// Exit codes: 0 success, 2 invalid input or parse error, 3 initialization
// failure, 4 numerical failure, 1 anything else.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mirrorfit.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

int exit_code_for(mf_status status) {
  switch (status) {
    case MF_OK: return 0;
    case MF_ERROR_INVALID_ARGUMENT:
    case MF_ERROR_DIMENSION_MISMATCH:
    case MF_ERROR_PARSE:
    case MF_ERROR_IO: return 2;
    case MF_ERROR_INIT_FAILURE: return 3;
    case MF_ERROR_NUMERICAL:
    case MF_ERROR_DEGENERATE_TRANSFORM: return 4;
    default: return 1;
  }
}

int report(const std::string& context, mf_status status) {
  std::cerr << "mirrorfit: " << context << ": " << mf_status_name(status) << ": "
            << mf_last_error() << "\n";
  return exit_code_for(status);
}

bool write_output(const std::string& path, const std::string& content, std::string* err) {
  if (path.empty()) {
    std::cout << content;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out.good()) {
    *err = "cannot write '" + path + "'";
    return false;
  }
  return true;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CsvWriter {
  std::ostringstream out;
  CsvWriter() {
    out << "# mirrorfit eval csv v1\n";
    out << "instance,sigma2,threshold,metric,value\n";
  }
  void row(int instance, double sigma2, double threshold, const std::string& metric,
           double value) {
    out << instance << ',' << fmt(sigma2) << ',';
    if (!std::isnan(threshold)) out << fmt(threshold);
    out << ',' << metric << ',' << fmt(value) << '\n';
  }
};

struct DetectFlags {
  std::string input;
  std::string out;
  int max_pairs = 0;
  std::uint64_t seed = 0;
  double eps_theta_deg = 5.0;
  double eps_d = 0.05;
  int trials = 10;
  double tol = 1e-10;
  int subsample = 2000;
};

int run_detect(const DetectFlags& flags) {
  mf_cloud* cloud = nullptr;
  mf_status status = mf_cloud_from_file(flags.input.c_str(), &cloud);
  if (status != MF_OK) return report("reading '" + flags.input + "'", status);
  std::unique_ptr<mf_cloud, decltype(&mf_cloud_destroy)> cloud_guard(cloud, &mf_cloud_destroy);

  mf_detect_options opts;
  mf_detect_options_init(&opts);
  opts.eps_theta_rad = flags.eps_theta_deg * kPi / 180.0;
  opts.eps_d = flags.eps_d;
  opts.init_trials = flags.trials;
  opts.cost_rel_tol = flags.tol;
  opts.pair_cap = flags.max_pairs;
  opts.seed = flags.seed;
  opts.subsample_threshold = flags.subsample;

  mf_result* result = nullptr;
  status = mf_detect(cloud, &opts, &result);
  if (status != MF_OK) return report("detection", status);
  std::unique_ptr<mf_result, decltype(&mf_result_destroy)> result_guard(result,
                                                                        &mf_result_destroy);

  char* json = nullptr;
  status = mf_result_to_json(result, &json);
  if (status != MF_OK) return report("serializing result", status);
  std::string doc(json);
  mf_string_free(json);

  std::string err;
  if (!write_output(flags.out, doc, &err)) {
    std::cerr << "mirrorfit: " << err << "\n";
    return 2;
  }
  return 0;
}

struct SynthFlags {
  int dim = 2;
  int n = 100;
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
  std::string out = "synth";
  bool allow_self = false;
  std::vector<double> angles_deg;
  std::vector<double> normal;
  std::vector<double> point;
  bool evaluation_grid_2d = false;
  bool evaluation_grid_3d = false;
  std::string out_dir;
};

int run_synth(const SynthFlags& flags) {
  if (flags.evaluation_grid_2d || flags.evaluation_grid_3d) {
    if (flags.out_dir.empty()) {
      std::cerr << "mirrorfit: --out-dir is required with a grid mode\n";
      return 2;
    }
    int32_t files = 0;
    const mf_status status = mf_write_evaluation_grid(
        flags.out_dir.c_str(), flags.evaluation_grid_2d ? 2 : 3, flags.seed, &files);
    if (status != MF_OK) return report("writing grid", status);
    std::cout << files << " instances written to " << flags.out_dir << "\n";
    return 0;
  }

  mf_synth_options opts;
  mf_synth_options_init(&opts, flags.dim, flags.n);
  opts.sigma2 = flags.sigma2;
  opts.seed = flags.seed;
  opts.allow_self = flags.allow_self ? 1 : 0;
  std::vector<double> angles_rad;
  for (double a : flags.angles_deg) angles_rad.push_back(a * kPi / 180.0);
  if (!angles_rad.empty()) {
    opts.angles_rad = angles_rad.data();
    opts.angle_count = static_cast<int32_t>(angles_rad.size());
  }
  if (!flags.normal.empty()) {
    if (static_cast<int>(flags.normal.size()) != flags.dim) {
      std::cerr << "mirrorfit: --normal needs exactly " << flags.dim << " components\n";
      return 2;
    }
    opts.plane_normal = flags.normal.data();
  }
  if (!flags.point.empty()) {
    if (static_cast<int>(flags.point.size()) != flags.dim) {
      std::cerr << "mirrorfit: --point needs exactly " << flags.dim << " components\n";
      return 2;
    }
    opts.plane_point = flags.point.data();
  }

  mf_cloud* cloud = nullptr;
  mf_truth* truth = nullptr;
  mf_status status = mf_synth(&opts, &cloud, &truth);
  if (status != MF_OK) return report("synthesis", status);
  std::unique_ptr<mf_cloud, decltype(&mf_cloud_destroy)> cloud_guard(cloud, &mf_cloud_destroy);
  std::unique_ptr<mf_truth, decltype(&mf_truth_destroy)> truth_guard(truth, &mf_truth_destroy);

  const std::string cloud_path = flags.out + ".txt";
  const std::string truth_path = flags.out + ".truth.json";
  status = mf_cloud_to_file(cloud, cloud_path.c_str());
  if (status != MF_OK) return report("writing '" + cloud_path + "'", status);

  char* json = nullptr;
  status = mf_truth_to_json(truth, &json);
  if (status != MF_OK) return report("serializing ground truth", status);
  std::string doc(json);
  mf_string_free(json);
  std::string err;
  if (!write_output(truth_path, doc, &err)) {
    std::cerr << "mirrorfit: " << err << "\n";
    return 2;
  }
  std::cout << cloud_path << "\n" << truth_path << "\n";
  return 0;
}

struct EvalFlags {
  std::vector<std::string> clouds;
  std::vector<std::string> results;
  std::vector<std::string> truths;
  std::string out;
  double t_theta_deg = 5.0;
  double t_d_frac = 0.1;
  bool sweep = false;
  int dim = 3;
  int n = 100;
  std::vector<double> sigma2_levels;
  int per_level = 4;
  std::uint64_t seed = 0;
  int threads = 0;
};

bool read_text_file(const std::string& path, std::string* text, std::string* err) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    *err = "cannot open '" + path + "'";
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  *text = buf.str();
  return true;
}

int run_eval_files(const EvalFlags& flags) {
  if (flags.clouds.size() != flags.results.size() || flags.clouds.size() != flags.truths.size() ||
      flags.clouds.empty()) {
    std::cerr << "mirrorfit: eval needs matching --cloud/--result/--truth lists\n";
    return 2;
  }
  CsvWriter csv;
  const double nan = std::nan("");
  for (std::size_t idx = 0; idx < flags.clouds.size(); ++idx) {
    mf_cloud* cloud = nullptr;
    mf_status status = mf_cloud_from_file(flags.clouds[idx].c_str(), &cloud);
    if (status != MF_OK) return report("reading '" + flags.clouds[idx] + "'", status);
    std::unique_ptr<mf_cloud, decltype(&mf_cloud_destroy)> cloud_guard(cloud, &mf_cloud_destroy);

    std::string text, err;
    if (!read_text_file(flags.results[idx], &text, &err)) {
      std::cerr << "mirrorfit: " << err << "\n";
      return 2;
    }
    mf_result* result = nullptr;
    status = mf_result_from_json(text.c_str(), &result);
    if (status != MF_OK) return report("parsing '" + flags.results[idx] + "'", status);
    std::unique_ptr<mf_result, decltype(&mf_result_destroy)> result_guard(result,
                                                                          &mf_result_destroy);

    if (!read_text_file(flags.truths[idx], &text, &err)) {
      std::cerr << "mirrorfit: " << err << "\n";
      return 2;
    }
    mf_truth* truth = nullptr;
    status = mf_truth_from_json(text.c_str(), &truth);
    if (status != MF_OK) return report("parsing '" + flags.truths[idx] + "'", status);
    std::unique_ptr<mf_truth, decltype(&mf_truth_destroy)> truth_guard(truth, &mf_truth_destroy);

    const int dim = mf_cloud_dim(cloud);
    if (mf_result_dim(result) != dim || mf_truth_dim(truth) != dim ||
        mf_truth_count(truth) != mf_cloud_count(cloud)) {
      std::cerr << "mirrorfit: '" << flags.results[idx]
                << "' does not match its cloud/sidecar shapes\n";
      return 2;
    }
    const double sigma2 = mf_truth_sigma2(truth);
    const int instance = static_cast<int>(idx);

    std::vector<double> est_normal(dim), gt_normal(dim);
    double est_offset = 0.0, gt_offset = 0.0;
    mf_result_plane(result, est_normal.data(), &est_offset);
    mf_truth_plane(truth, gt_normal.data(), &gt_offset);

    std::vector<int32_t> est_pairs(2 * static_cast<std::size_t>(mf_result_pair_count(result)));
    mf_result_pairs(result, est_pairs.data());
    std::vector<int32_t> gt_pairs(2 * static_cast<std::size_t>(mf_truth_pair_count(truth)));
    mf_truth_pairs(truth, gt_pairs.data());

    double value = 0.0;
    status = mf_metric_ed(cloud, est_pairs.data(), mf_result_pair_count(result),
                          est_normal.data(), est_offset, &value, nullptr);
    if (status != MF_OK) return report("metric ed", status);
    csv.row(instance, sigma2, nan, "ed", value);
    status = mf_metric_em(cloud, est_pairs.data(), mf_result_pair_count(result),
                          est_normal.data(), est_offset, &value, nullptr);
    if (status != MF_OK) return report("metric em", status);
    csv.row(instance, sigma2, nan, "em", value);
    status = mf_metric_ed(cloud, gt_pairs.data(), mf_truth_pair_count(truth), gt_normal.data(),
                          gt_offset, &value, nullptr);
    if (status != MF_OK) return report("metric ed_gt", status);
    csv.row(instance, sigma2, nan, "ed_gt", value);
    status = mf_metric_em(cloud, gt_pairs.data(), mf_truth_pair_count(truth), gt_normal.data(),
                          gt_offset, &value, nullptr);
    if (status != MF_OK) return report("metric em_gt", status);
    csv.row(instance, sigma2, nan, "em_gt", value);
    csv.row(instance, sigma2, nan, "cost", mf_result_cost(result));

    double dot = 0.0;
    for (int k = 0; k < dim; ++k) dot += est_normal[k] * gt_normal[k];
    dot = std::min(1.0, std::abs(dot));
    csv.row(instance, sigma2, nan, "plane_angle_deg", std::acos(dot) * 180.0 / kPi);

    double scale = 0.0;
    mf_bbox_scale(cloud, &scale);
    int32_t correct = 0;
    status = mf_plane_correct(cloud, est_normal.data(), est_offset, gt_normal.data(), gt_offset,
                              flags.t_theta_deg * kPi / 180.0, flags.t_d_frac * scale, &correct);
    if (status != MF_OK) return report("plane test", status);
    csv.row(instance, sigma2, nan, "plane_correct", correct);

    for (int k = 0; k <= 34; ++k) {
      const double tau = 0.01 * k;
      status = mf_correspondence_rate(cloud, est_pairs.data(), mf_result_pair_count(result),
                                      truth, tau, &value);
      if (status != MF_OK) return report("correspondence rate", status);
      csv.row(instance, sigma2, tau, "corr_rate", value);
    }
  }
  std::string err;
  if (!write_output(flags.out, csv.out.str(), &err)) {
    std::cerr << "mirrorfit: " << err << "\n";
    return 2;
  }
  return 0;
}

int run_eval_sweep(const EvalFlags& flags) {
  if (flags.sigma2_levels.empty()) {
    std::cerr << "mirrorfit: --sweep needs --sigma2 levels\n";
    return 2;
  }
  mf_sweep_options opts;
  mf_sweep_options_init(&opts, flags.dim, flags.n);
  opts.seed = flags.seed;
  opts.sigma2_levels = flags.sigma2_levels.data();
  opts.level_count = static_cast<int32_t>(flags.sigma2_levels.size());
  opts.instances_per_level = flags.per_level;
  opts.threads = flags.threads;

  mf_eval_table* table = nullptr;
  const mf_status status = mf_sweep(&opts, &table);
  if (status != MF_OK) return report("sweep", status);
  std::unique_ptr<mf_eval_table, decltype(&mf_eval_table_destroy)> guard(table,
                                                                         &mf_eval_table_destroy);

  CsvWriter csv;
  const int32_t rows = mf_eval_table_rows(table);
  for (int32_t r = 0; r < rows; ++r) {
    int32_t instance = 0;
    double sigma2 = 0.0, threshold = 0.0, value = 0.0;
    const char* metric = nullptr;
    mf_eval_table_row(table, r, &instance, &sigma2, &threshold, &metric, &value);
    csv.row(instance, sigma2, threshold, metric, value);
  }
  std::string err;
  if (!write_output(flags.out, csv.out.str(), &err)) {
    std::cerr << "mirrorfit: " << err << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate reflection symmetry detection in d-dimensional point sets"};
  app.set_version_flag("--version", std::string(mf_version()));
  app.require_subcommand(1);

  DetectFlags detect_flags;
  auto* detect = app.add_subcommand("detect", "Detect the mirror plane and correspondences");
  detect->add_option("--input", detect_flags.input, "Point file (text, or .ply for d=3)")
      ->required();
  detect->add_option("--out", detect_flags.out, "Result JSON path (stdout when omitted)");
  detect->add_option("--max-pairs", detect_flags.max_pairs,
                     "Keep at most this many mirror pairs (0 = all)");
  detect->add_option("--seed", detect_flags.seed, "PRNG seed (mt19937_64)");
  detect->add_option("--eps-theta", detect_flags.eps_theta_deg,
                     "Candidate-plane angle tolerance, degrees");
  detect->add_option("--eps-d", detect_flags.eps_d, "Candidate-plane distance-ratio tolerance");
  detect->add_option("--trials", detect_flags.trials, "Randomized initialization rounds");
  detect->add_option("--tol", detect_flags.tol, "Relative cost-decrease stopping tolerance");
  detect->add_option("--subsample", detect_flags.subsample,
                     "Subsample inputs larger than this (seeded)");

  SynthFlags synth_flags;
  auto* synth = app.add_subcommand("synth", "Generate a symmetric cloud with ground truth");
  synth->add_option("--dim", synth_flags.dim, "Dimension d >= 2");
  synth->add_option("--n", synth_flags.n, "Total point count");
  synth->add_option("--sigma2", synth_flags.sigma2, "Per-coordinate noise variance");
  synth->add_option("--seed", synth_flags.seed, "PRNG seed (mt19937_64)");
  synth->add_option("--out", synth_flags.out, "Output prefix (writes .txt and .truth.json)");
  synth->add_flag("--allow-self", synth_flags.allow_self,
                  "Allow odd n by placing one point on the plane");
  synth->add_option("--angles", synth_flags.angles_deg,
                    "Factor angles in degrees: one for d=2, two for d=3")
      ->delimiter(',');
  synth->add_option("--normal", synth_flags.normal, "Ground-truth plane normal")->delimiter(',');
  synth->add_option("--point", synth_flags.point, "Point on the ground-truth plane")
      ->delimiter(',');
  synth->add_flag("--grid-2d", synth_flags.evaluation_grid_2d,
                  "Write the full 1254-instance d=2 evaluation grid");
  synth->add_flag("--grid-3d", synth_flags.evaluation_grid_3d,
                  "Write the full 1056-instance d=3 evaluation grid");
  synth->add_option("--out-dir", synth_flags.out_dir, "Directory for grid output");

  EvalFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "Emit metric curves as CSV");
  eval->add_option("--cloud", eval_flags.clouds, "Point file (repeatable)");
  eval->add_option("--result", eval_flags.results, "Detection result JSON (repeatable)");
  eval->add_option("--truth", eval_flags.truths, "Ground-truth sidecar JSON (repeatable)");
  eval->add_option("--out", eval_flags.out, "CSV path (stdout when omitted)");
  eval->add_option("--t-theta", eval_flags.t_theta_deg, "Plane angle threshold, degrees");
  eval->add_option("--t-d-frac", eval_flags.t_d_frac,
                   "Plane distance threshold as a fraction of the bbox scale");
  eval->add_flag("--sweep", eval_flags.sweep, "Run a seeded generate+detect sweep");
  eval->add_option("--dim", eval_flags.dim, "Sweep: dimension");
  eval->add_option("--n", eval_flags.n, "Sweep: points per instance (even)");
  eval->add_option("--sigma2", eval_flags.sigma2_levels, "Sweep: sigma2 levels")->delimiter(',');
  eval->add_option("--per-level", eval_flags.per_level, "Sweep: instances per level");
  eval->add_option("--seed", eval_flags.seed, "Sweep: PRNG seed");
  eval->add_option("--threads", eval_flags.threads,
                   "Sweep: worker threads (0 = cores; MIRRORFIT_THREADS bounds)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "mirrorfit: " << e.what() << "\n";
    return 2;
  }

  if (detect->parsed()) return run_detect(detect_flags);
  if (synth->parsed()) return run_synth(synth_flags);
  if (eval->parsed()) return eval_flags.sweep ? run_eval_sweep(eval_flags) : run_eval_files(eval_flags);
  return 2;
}
