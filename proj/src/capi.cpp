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

#include "mirrorfit.h"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "mirrorfit/io.hpp"
#include "mirrorfit/pipeline.hpp"
#include "mirrorfit/synth.hpp"

using namespace mirrorfit;

namespace {

thread_local std::string g_last_error;

mf_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return MF_ERROR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return MF_ERROR_DIMENSION_MISMATCH;
    case ErrorCode::DegenerateTransform: return MF_ERROR_DEGENERATE_TRANSFORM;
    case ErrorCode::InitializationFailure: return MF_ERROR_INIT_FAILURE;
    case ErrorCode::NumericalFailure: return MF_ERROR_NUMERICAL;
    case ErrorCode::ParseError: return MF_ERROR_PARSE;
    case ErrorCode::IoError: return MF_ERROR_IO;
  }
  return MF_ERROR_UNKNOWN;
}

template <typename Fn>
mf_status guarded(Fn&& fn) {
  try {
    fn();
    return MF_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MF_ERROR_UNKNOWN;
  }
}

mf_status fail(mf_status status, const char* message) {
  g_last_error = message;
  return status;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Correspondence pairs_to_correspondence(Eigen::Index n, const int32_t* pairs, int32_t pair_count) {
  std::vector<std::int32_t> target(static_cast<std::size_t>(n), -1);
  for (int32_t k = 0; k < pair_count; ++k) {
    const std::int32_t a = pairs[2 * k];
    const std::int32_t b = pairs[2 * k + 1];
    require(a >= 0 && b >= 0 && a < n && b < n, ErrorCode::InvalidArgument,
            "pair index out of range");
    target[static_cast<std::size_t>(a)] = b;
    target[static_cast<std::size_t>(b)] = a;
  }
  return Correspondence(n, std::move(target));
}

DetectConfig to_config(const mf_detect_options* opts) {
  DetectConfig cfg;
  if (!opts) return cfg;
  cfg.eps_theta = opts->eps_theta_rad;
  cfg.eps_d = opts->eps_d;
  cfg.init_trials = opts->init_trials;
  cfg.max_alternations = opts->max_alternations;
  cfg.cost_rel_tol = opts->cost_rel_tol;
  if (opts->pair_cap > 0) cfg.pair_cap = opts->pair_cap;
  cfg.rng_seed = opts->seed;
  cfg.subsample_threshold = opts->subsample_threshold;
  cfg.tr.initial_radius = opts->tr_initial_radius;
  cfg.tr.max_radius = opts->tr_max_radius;
  cfg.tr.accept_ratio = opts->tr_accept_ratio;
  cfg.tr.max_outer_iters = opts->tr_max_outer_iters;
  cfg.tr.grad_tol = opts->tr_grad_tol;
  cfg.tr.tcg_max_iters = opts->tr_tcg_max_iters;
  cfg.tr.tcg_kappa = opts->tr_tcg_kappa;
  cfg.tr.tcg_theta = opts->tr_tcg_theta;
  return cfg;
}

SynthSpec to_spec(const mf_synth_options* opts) {
  require(opts->dim >= 2, ErrorCode::InvalidArgument, "dimension must be >= 2");
  require(opts->count >= 2, ErrorCode::InvalidArgument, "count must be >= 2");
  const bool odd = (opts->count % 2) != 0;
  require(!odd || opts->allow_self, ErrorCode::InvalidArgument,
          "odd point counts require allow_self (one point sits on the plane)");

  const Eigen::Index d = opts->dim;
  Eigen::VectorXd point_on_plane = Eigen::VectorXd::Constant(d, 0.5);
  if (opts->plane_point) point_on_plane = Eigen::Map<const Eigen::VectorXd>(opts->plane_point, d);

  SynthSpec spec;
  spec.dim = d;
  spec.half_count = opts->count / 2;
  spec.sigma2 = opts->sigma2;
  spec.seed = opts->seed;
  spec.on_plane_extra = odd;

  if (opts->angles_rad && opts->angle_count > 0) {
    require((d == 2 && opts->angle_count == 1) || (d == 3 && opts->angle_count == 2),
            ErrorCode::InvalidArgument, "angles accept 1 value for d=2 or 2 values for d=3");
    spec.transform = d == 2 ? axis_transform_2d(opts->angles_rad[0], point_on_plane)
                            : angles_transform_3d(opts->angles_rad[0], opts->angles_rad[1],
                                                  point_on_plane);
  } else if (opts->plane_normal) {
    Eigen::VectorXd normal = Eigen::Map<const Eigen::VectorXd>(opts->plane_normal, d);
    spec.transform = transform_from_plane(normal, point_on_plane);
  } else {
    Rng rng(derive_seed(opts->seed, 0x9d0f));
    Eigen::VectorXd normal = rng.normal_vector(d);
    while (normal.norm() < 1e-9) normal = rng.normal_vector(d);
    spec.transform = transform_from_plane(normal.normalized(), point_on_plane);
  }
  return spec;
}

}  // namespace

struct mf_cloud {
  PointCloud cloud;
};

struct mf_result {
  ResultDocument doc;
};

struct mf_truth {
  TruthDocument doc;
};

struct mf_eval_table {
  struct Row {
    int32_t instance;
    double sigma2;
    double threshold;
    std::string metric;
    double value;
  };
  std::vector<Row> rows;
};

extern "C" {

const char* mf_version(void) { return "0.1.0"; }

const char* mf_status_name(mf_status status) {
  switch (status) {
    case MF_OK: return "ok";
    case MF_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case MF_ERROR_DIMENSION_MISMATCH: return "dimension mismatch";
    case MF_ERROR_DEGENERATE_TRANSFORM: return "degenerate transform";
    case MF_ERROR_INIT_FAILURE: return "initialization failure";
    case MF_ERROR_NUMERICAL: return "numerical failure";
    case MF_ERROR_PARSE: return "parse error";
    case MF_ERROR_IO: return "io error";
    case MF_ERROR_UNKNOWN: break;
  }
  return "unknown error";
}

const char* mf_last_error(void) { return g_last_error.c_str(); }

/* ----- clouds ----- */

mf_status mf_cloud_create(int32_t dim, int32_t count, const double* coords, mf_cloud** out) {
  if (!coords || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    Eigen::MatrixXd pts = Eigen::Map<const Eigen::MatrixXd>(coords, dim, count);
    *out = new mf_cloud{PointCloud(std::move(pts))};
  });
}

mf_status mf_cloud_from_file(const char* path, mf_cloud** out) {
  if (!path || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { *out = new mf_cloud{read_point_file(path)}; });
}

mf_status mf_cloud_from_text(const char* text, mf_cloud** out) {
  if (!text || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { *out = new mf_cloud{read_point_text(text)}; });
}

mf_status mf_cloud_to_file(const mf_cloud* cloud, const char* path) {
  if (!cloud || !path) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { write_point_file(cloud->cloud, path); });
}

void mf_cloud_destroy(mf_cloud* cloud) { delete cloud; }

int32_t mf_cloud_dim(const mf_cloud* cloud) {
  return cloud ? static_cast<int32_t>(cloud->cloud.dim()) : 0;
}

int32_t mf_cloud_count(const mf_cloud* cloud) {
  return cloud ? static_cast<int32_t>(cloud->cloud.count()) : 0;
}

mf_status mf_cloud_coords(const mf_cloud* cloud, double* out) {
  if (!cloud || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  Eigen::Map<Eigen::MatrixXd>(out, cloud->cloud.dim(), cloud->cloud.count()) = cloud->cloud.points;
  return MF_OK;
}

/* ----- detection ----- */

void mf_detect_options_init(mf_detect_options* opts) {
  if (!opts) return;
  const DetectConfig defaults;
  opts->eps_theta_rad = defaults.eps_theta;
  opts->eps_d = defaults.eps_d;
  opts->init_trials = defaults.init_trials;
  opts->max_alternations = defaults.max_alternations;
  opts->cost_rel_tol = defaults.cost_rel_tol;
  opts->pair_cap = 0;
  opts->seed = defaults.rng_seed;
  opts->subsample_threshold = static_cast<int32_t>(defaults.subsample_threshold);
  opts->tr_initial_radius = 0.0;
  opts->tr_max_radius = 0.0;
  opts->tr_accept_ratio = defaults.tr.accept_ratio;
  opts->tr_max_outer_iters = defaults.tr.max_outer_iters;
  opts->tr_grad_tol = 0.0;
  opts->tr_tcg_max_iters = 0;
  opts->tr_tcg_kappa = defaults.tr.tcg_kappa;
  opts->tr_tcg_theta = defaults.tr.tcg_theta;
}

mf_status mf_detect(const mf_cloud* cloud, const mf_detect_options* opts, mf_result** out) {
  if (!cloud || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const DetectConfig cfg = to_config(opts);
    const SymmetryResult result = detect(cloud->cloud, cfg);
    *out = new mf_result{ResultDocument::from_result(result, cfg.rng_seed)};
  });
}

void mf_result_destroy(mf_result* result) { delete result; }

int32_t mf_result_dim(const mf_result* result) {
  return result ? static_cast<int32_t>(result->doc.translation.size()) : 0;
}

mf_status mf_result_plane(const mf_result* result, double* normal_out, double* offset_out) {
  if (!result || !normal_out || !offset_out)
    return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  Eigen::Map<Eigen::VectorXd>(normal_out, result->doc.plane.normal.size()) =
      result->doc.plane.normal;
  *offset_out = result->doc.plane.offset;
  return MF_OK;
}

int32_t mf_result_rotation_count(const mf_result* result) {
  return result ? static_cast<int32_t>(result->doc.rotations.size()) : 0;
}

mf_status mf_result_rotation(const mf_result* result, int32_t index, double* out) {
  if (!result || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  if (index < 0 || index >= static_cast<int32_t>(result->doc.rotations.size()))
    return fail(MF_ERROR_INVALID_ARGUMENT, "rotation index out of range");
  const Eigen::MatrixXd& r = result->doc.rotations[static_cast<std::size_t>(index)];
  for (Eigen::Index row = 0; row < r.rows(); ++row)
    for (Eigen::Index col = 0; col < r.cols(); ++col) *out++ = r(row, col);
  return MF_OK;
}

mf_status mf_result_translation(const mf_result* result, double* out) {
  if (!result || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  Eigen::Map<Eigen::VectorXd>(out, result->doc.translation.size()) = result->doc.translation;
  return MF_OK;
}

double mf_result_cost(const mf_result* result) { return result ? result->doc.cost : 0.0; }

int32_t mf_result_alternations(const mf_result* result) {
  return result ? result->doc.alternations : 0;
}

int32_t mf_result_pair_count(const mf_result* result) {
  return result ? static_cast<int32_t>(result->doc.correspondences.size()) : 0;
}

mf_status mf_result_pairs(const mf_result* result, int32_t* out) {
  if (!result || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  for (const auto& [a, b] : result->doc.correspondences) {
    *out++ = a;
    *out++ = b;
  }
  return MF_OK;
}

int32_t mf_result_subsample_count(const mf_result* result) {
  return result ? static_cast<int32_t>(result->doc.subsample.size()) : 0;
}

mf_status mf_result_subsample(const mf_result* result, int32_t* out) {
  if (!result || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  for (auto i : result->doc.subsample) *out++ = static_cast<int32_t>(i);
  return MF_OK;
}

mf_status mf_result_to_json(const mf_result* result, char** out) {
  if (!result || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { *out = dup_string(result_to_json(result->doc)); });
}

mf_status mf_result_from_json(const char* text, mf_result** out) {
  if (!text || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { *out = new mf_result{result_from_json(text)}; });
}

void mf_string_free(char* str) { delete[] str; }

/* ----- synthesis ----- */

void mf_synth_options_init(mf_synth_options* opts, int32_t dim, int32_t count) {
  if (!opts) return;
  opts->dim = dim;
  opts->count = count;
  opts->sigma2 = 0.0;
  opts->seed = 0;
  opts->allow_self = 0;
  opts->plane_normal = nullptr;
  opts->plane_point = nullptr;
  opts->angles_rad = nullptr;
  opts->angle_count = 0;
}

mf_status mf_synth(const mf_synth_options* opts, mf_cloud** cloud_out, mf_truth** truth_out) {
  if (!opts || !cloud_out || !truth_out)
    return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const SynthSpec spec = to_spec(opts);
    SynthInstance inst = generate(spec);
    const Eigen::Index n = inst.cloud.count();
    *truth_out = new mf_truth{TruthDocument::from_truth(inst.truth, n)};
    *cloud_out = new mf_cloud{std::move(inst.cloud)};
  });
}

void mf_truth_destroy(mf_truth* truth) { delete truth; }

int32_t mf_truth_dim(const mf_truth* truth) {
  return truth ? static_cast<int32_t>(truth->doc.translation.size()) : 0;
}

int32_t mf_truth_count(const mf_truth* truth) {
  return truth ? static_cast<int32_t>(truth->doc.count) : 0;
}

mf_status mf_truth_plane(const mf_truth* truth, double* normal_out, double* offset_out) {
  if (!truth || !normal_out || !offset_out)
    return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  Eigen::Map<Eigen::VectorXd>(normal_out, truth->doc.plane.normal.size()) = truth->doc.plane.normal;
  *offset_out = truth->doc.plane.offset;
  return MF_OK;
}

double mf_truth_sigma2(const mf_truth* truth) { return truth ? truth->doc.sigma2 : 0.0; }

int32_t mf_truth_pair_count(const mf_truth* truth) {
  return truth ? static_cast<int32_t>(truth->doc.pairs.size()) : 0;
}

mf_status mf_truth_pairs(const mf_truth* truth, int32_t* out) {
  if (!truth || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  for (const auto& [a, b] : truth->doc.pairs) {
    *out++ = a;
    *out++ = b;
  }
  return MF_OK;
}

mf_status mf_truth_to_json(const mf_truth* truth, char** out) {
  if (!truth || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { *out = dup_string(truth_to_json(truth->doc)); });
}

mf_status mf_truth_from_json(const char* text, mf_truth** out) {
  if (!text || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { *out = new mf_truth{truth_from_json(text)}; });
}

mf_status mf_write_evaluation_grid(const char* dir, int32_t dim, uint64_t seed, int32_t* files_out) {
  if (!dir) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  if (dim != 2 && dim != 3)
    return fail(MF_ERROR_INVALID_ARGUMENT, "evaluation grids exist for d=2 and d=3");
  return guarded([&] {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const std::vector<SynthSpec> specs = dim == 2 ? evaluation_grid_2d(seed) : evaluation_grid_3d(seed);
    int32_t written = 0;
    for (std::size_t idx = 0; idx < specs.size(); ++idx) {
      const SynthInstance inst = generate(specs[idx]);
      char stem[64];
      std::snprintf(stem, sizeof(stem), "grid%dd_%04zu", dim, idx);
      const fs::path cloud_path = fs::path(dir) / (std::string(stem) + ".txt");
      const fs::path truth_path = fs::path(dir) / (std::string(stem) + ".truth.json");
      write_point_file(inst.cloud, cloud_path.string());
      write_file(truth_path.string(),
                 truth_to_json(TruthDocument::from_truth(inst.truth, inst.cloud.count())));
      ++written;
    }
    if (files_out) *files_out = written;
  });
}

/* ----- metrics ----- */

mf_status mf_metric_ed(const mf_cloud* cloud, const int32_t* pairs, int32_t pair_count,
                       const double* plane_normal, double plane_offset, double* value_out,
                       int32_t* excluded_out) {
  if (!cloud || !pairs || !plane_normal || !value_out)
    return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const Hyperplane plane(Eigen::Map<const Eigen::VectorXd>(plane_normal, cloud->cloud.dim()),
                           plane_offset);
    const Correspondence corr = pairs_to_correspondence(cloud->cloud.count(), pairs, pair_count);
    const MetricValue v = error_ed(cloud->cloud, corr, plane);
    *value_out = v.value;
    if (excluded_out) *excluded_out = v.excluded;
  });
}

mf_status mf_metric_em(const mf_cloud* cloud, const int32_t* pairs, int32_t pair_count,
                       const double* plane_normal, double plane_offset, double* value_out,
                       int32_t* excluded_out) {
  if (!cloud || !pairs || !plane_normal || !value_out)
    return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const Hyperplane plane(Eigen::Map<const Eigen::VectorXd>(plane_normal, cloud->cloud.dim()),
                           plane_offset);
    const Correspondence corr = pairs_to_correspondence(cloud->cloud.count(), pairs, pair_count);
    const MetricValue v = error_em(cloud->cloud, corr, plane);
    *value_out = v.value;
    if (excluded_out) *excluded_out = v.excluded;
  });
}

mf_status mf_correspondence_rate(const mf_cloud* cloud, const int32_t* est_pairs,
                                 int32_t est_pair_count, const mf_truth* truth, double tau_d,
                                 double* out) {
  if (!cloud || !est_pairs || !truth || !out)
    return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const Correspondence est = pairs_to_correspondence(cloud->cloud.count(), est_pairs,
                                                       est_pair_count);
    *out = correspondence_rate(est, truth->doc.to_truth(), cloud->cloud, tau_d);
  });
}

mf_status mf_bbox_scale(const mf_cloud* cloud, double* out) {
  if (!cloud || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  *out = compute_bbox(cloud->cloud).half_diagonal();
  return MF_OK;
}

mf_status mf_plane_correct(const mf_cloud* cloud, const double* est_normal, double est_offset,
                           const double* gt_normal, double gt_offset, double t_theta_rad,
                           double t_d, int32_t* out) {
  if (!cloud || !est_normal || !gt_normal || !out)
    return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const Eigen::Index d = cloud->cloud.dim();
    const Hyperplane est(Eigen::Map<const Eigen::VectorXd>(est_normal, d), est_offset);
    const Hyperplane gt(Eigen::Map<const Eigen::VectorXd>(gt_normal, d), gt_offset);
    *out = plane_correct(est, gt, t_theta_rad, t_d, compute_bbox(cloud->cloud)) ? 1 : 0;
  });
}

/* ----- sweep ----- */

void mf_sweep_options_init(mf_sweep_options* opts, int32_t dim, int32_t count) {
  if (!opts) return;
  opts->dim = dim;
  opts->count = count;
  opts->seed = 0;
  opts->sigma2_levels = nullptr;
  opts->level_count = 0;
  opts->instances_per_level = 1;
  opts->threads = 0;
  mf_detect_options_init(&opts->detect);
}

mf_status mf_sweep(const mf_sweep_options* opts, mf_eval_table** out) {
  if (!opts || !out) return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  if (!opts->sigma2_levels || opts->level_count < 1)
    return fail(MF_ERROR_INVALID_ARGUMENT, "sweep needs at least one sigma2 level");
  if (opts->count < 4 || (opts->count % 2) != 0)
    return fail(MF_ERROR_INVALID_ARGUMENT, "sweep instance count must be even and >= 4");
  return guarded([&] {
    std::vector<SynthSpec> batch;
    std::uint64_t stream = 0;
    for (int32_t lvl = 0; lvl < opts->level_count; ++lvl) {
      for (int32_t k = 0; k < opts->instances_per_level; ++k) {
        const std::uint64_t inst_master = derive_seed(opts->seed, stream++);
        Rng rng(derive_seed(inst_master, 1));
        Eigen::VectorXd normal = rng.normal_vector(opts->dim);
        while (normal.norm() < 1e-9) normal = rng.normal_vector(opts->dim);
        SynthSpec spec;
        spec.dim = opts->dim;
        spec.half_count = opts->count / 2;
        spec.sigma2 = opts->sigma2_levels[lvl];
        spec.seed = derive_seed(inst_master, 2);
        spec.transform = transform_from_plane(
            normal.normalized(), Eigen::VectorXd::Constant(opts->dim, 0.5));
        batch.push_back(std::move(spec));
      }
    }
    DetectConfig cfg = to_config(&opts->detect);
    cfg.rng_seed = opts->seed;
    const SweepResult res = sweep(batch, cfg, opts->threads);

    auto table = std::make_unique<mf_eval_table>();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& rec : res.instances) {
      if (rec.failed) {
        table->rows.push_back({rec.index, rec.sigma2, nan, "failed", 1.0});
        continue;
      }
      table->rows.push_back({rec.index, rec.sigma2, nan, "ed", rec.ed_detected});
      table->rows.push_back({rec.index, rec.sigma2, nan, "em", rec.em_detected});
      table->rows.push_back({rec.index, rec.sigma2, nan, "ed_gt", rec.ed_truth});
      table->rows.push_back({rec.index, rec.sigma2, nan, "em_gt", rec.em_truth});
      table->rows.push_back({rec.index, rec.sigma2, nan, "cost", rec.cost});
      table->rows.push_back({rec.index, rec.sigma2, nan, "plane_angle_deg", rec.plane_angle_deg});
    }
    for (std::size_t lvl = 0; lvl < res.sigma2_levels.size(); ++lvl) {
      const auto& corr = res.corr_rate_by_level[lvl];
      for (std::size_t k = 0; k < corr.thresholds.size(); ++k)
        table->rows.push_back(
            {-1, res.sigma2_levels[lvl], corr.thresholds[k], "corr_rate", corr.rates[k]});
    }
    for (std::size_t lvl = 0; lvl < res.sigma2_levels.size(); ++lvl) {
      const auto& prec = res.precision_by_level[lvl];
      for (std::size_t k = 0; k < prec.thresholds.size(); ++k)
        table->rows.push_back({-1, res.sigma2_levels[lvl], prec.thresholds[k], "plane_precision",
                               prec.rates[k]});
    }
    *out = table.release();
  });
}

void mf_eval_table_destroy(mf_eval_table* table) { delete table; }

int32_t mf_eval_table_rows(const mf_eval_table* table) {
  return table ? static_cast<int32_t>(table->rows.size()) : 0;
}

mf_status mf_eval_table_row(const mf_eval_table* table, int32_t row, int32_t* instance,
                            double* sigma2, double* threshold, const char** metric,
                            double* value) {
  if (!table || !instance || !sigma2 || !threshold || !metric || !value)
    return fail(MF_ERROR_INVALID_ARGUMENT, "null pointer argument");
  if (row < 0 || row >= static_cast<int32_t>(table->rows.size()))
    return fail(MF_ERROR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = table->rows[static_cast<std::size_t>(row)];
  *instance = r.instance;
  *sigma2 = r.sigma2;
  *threshold = r.threshold;
  *metric = r.metric.c_str();
  *value = r.value;
  return MF_OK;
}

} /* extern "C" */
